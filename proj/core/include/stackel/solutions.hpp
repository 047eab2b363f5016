// SPDX-License-Identifier: MIT
#pragma once

// Closed-form solutions of the two autonomous subsystems:
//   eta' = C eta                       (reduced spatial metric, symmetric)
//   phi'' = 3 xi e^phi,  4 phi'' - 2 phi'^2 - q = 0,  q = (tr C)^2 - 3 tr(C^2)

#include "stackel/canonical.hpp"
#include "stackel/numerics.hpp"

#include <vector>

namespace stackel {

/// (tr C)^2 - 3 tr(C^2) = 2 epsilon p^2.
struct EpsilonP {
    int epsilon = 0;
    double p = 0.0;
};

/// epsilon = sign(q) with |q| <= 1e-12 |C|_F^2 mapped to 0; p = sqrt(|q| / 2).
EpsilonP epsilon_p(const Mat3& c);

/// (tr C)^2 - 3 tr(C^2).
double trace_invariant(const Mat3& c);

struct SignTriple {
    int e1 = 1;
    int e2 = 1;
    int e3 = 1;

    void validate() const;
};

struct EtaJet {
    Mat3 eta = Mat3::Identity();
    Mat3 deta = Mat3::Zero();
    Mat3 ddeta = Mat3::Zero();
};

/// Closed-form eta(tau) for a canonical class, optionally carried into another
/// spatial frame by a constant transform.
///
/// Variant A: eta = diag(e_k exp(a_k tau)).
/// Variant B: sigma = r tau cos a, omega = s r tau sin a,
///   eta_11 = e1 exp((c + r cos a) tau),
///   eta_22 = -eta_33 = e2 e^sigma sin omega,  eta_23 = e2 e^sigma cos omega.
/// Variant C: eta_11 = e1 exp(c1 tau), eta_22 = e2 b tau e^{a tau},
///   eta_23 = e2 e^{a tau}, eta_33 = 0 (b = Jordan coupling; b = 1 reproduces
///   the representative eta_22 = tau e^tau, eta_23 = e^tau).
/// Variants B and C carry signs (e1, e2); e3 must stay +1.
class SpatialSolution {
public:
    SpatialSolution(CanonicalParams params, SignTriple signs);

    [[nodiscard]] Variant variant() const { return variant_of(params_); }
    [[nodiscard]] const CanonicalParams& params() const noexcept { return params_; }
    [[nodiscard]] const SignTriple& signs() const noexcept { return signs_; }

    /// Structure matrix C of this solution's frame: eta' = C eta.
    [[nodiscard]] const Mat3& structure() const noexcept { return structure_; }

    [[nodiscard]] EtaJet jet(double tau) const;
    [[nodiscard]] Mat3 eta(double tau) const { return jet(tau).eta; }

    /// Closed-form determinant (never formed from the matrix entries).
    [[nodiscard]] double determinant(double tau) const;

    /// sign(det eta); constant in tau.
    [[nodiscard]] int determinant_sign() const;

    /// The same solution after a constant change of spatial frame:
    /// eta' = s T eta T^T and C' = T C T^{-1}. The positive scalar s keeps
    /// |det eta'(0)| = 1, so the integration constant k stays zero.
    [[nodiscard]] SpatialSolution in_frame(const Mat3& t) const;

    [[nodiscard]] const Mat3& frame() const noexcept { return frame_; }

private:
    [[nodiscard]] EtaJet canonical_jet(double tau) const;

    CanonicalParams params_;
    SignTriple signs_;
    Mat3 frame_ = Mat3::Identity();
    double frame_scale_ = 1.0;
    Mat3 structure_ = Mat3::Zero();
};

/// Canonical-frame solution for a classified structure matrix.
SpatialSolution solve_eta(const CanonicalClass& cls, SignTriple signs = {});

/// Solution for the classified matrix in its original coordinates.
SpatialSolution solve_eta_original(const CanonicalClass& cls, SignTriple signs = {});

enum class PhiBranch { cos, cosh, sinh, power };

[[nodiscard]] std::string to_string(PhiBranch b);

/// Admissible (epsilon, xi) pairs: cos (+1,+1), cosh (-1,-1), sinh (-1,+1),
/// power (0,+1). BranchError otherwise.
PhiBranch branch_for(int epsilon, int xi);

struct PhiJet {
    double exp_phi = 0.0;
    double phi = 0.0;
    double dphi = 0.0;
    double ddphi = 0.0;
};

/// Closed interval of tau with singular points to keep clear of.
struct TauDomain {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> singular;
    double margin = kDefaultExclusionMargin;

    [[nodiscard]] TauGrid grid(std::size_t n) const;
};

class PhiSolution {
public:
    /// p must be positive unless epsilon = 0, in which case it is ignored.
    PhiSolution(int epsilon, int xi, double p);

    [[nodiscard]] int epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] int xi() const noexcept { return xi_; }
    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] PhiBranch branch() const noexcept { return branch_; }

    /// DomainError at singular tau.
    [[nodiscard]] PhiJet jet(double tau) const;
    [[nodiscard]] double exp_phi(double tau) const { return jet(tau).exp_phi; }

    /// Singular points of the branch inside [lo, hi].
    [[nodiscard]] std::vector<double> singular_points(double lo, double hi) const;

    /// cosh/sinh/power: [0.2, 5]; cos: [-pi/p + m, pi/p - m] with m = 0.05 pi/p.
    [[nodiscard]] TauDomain default_domain() const;

private:
    int epsilon_;
    int xi_;
    double p_;
    PhiBranch branch_;
};

/// exp(phi) at tau for the branch selected by (epsilon, xi).
double solve_phi(int epsilon, int xi, double p, double tau);

/// Coefficients of the second subsystem: q = (tr C)^2 - 3 tr(C^2) and xi.
struct PhiSystem {
    double q = 0.0;
    int xi = 1;
};

struct PhiResiduals {
    double r1 = 0.0;  ///< max |4 phi'' - 2 phi'^2 - q|
    double r2 = 0.0;  ///< max |phi'' - 3 xi e^phi|
};

PhiResiduals phi_residuals(const PhiSolution& sol, const PhiSystem& system, const TauGrid& grid);
PhiResiduals phi_residuals(const PhiSolution& sol, const Mat3& c, const TauGrid& grid);

/// max |phi'' - (phi'^2 + epsilon p^2) / 2| over the grid.
double first_integral_check(const PhiSolution& sol, const TauGrid& grid);

/// Cosmological data; 2 Lambda = epsilon xi e^lambda.
struct CosmologicalData {
    int epsilon = 1;
    int xi = 1;
    double lambda = 0.0;
    double k = 0.0;
};

double lambda_of(const CosmologicalData& cosmo);

}  // namespace stackel
