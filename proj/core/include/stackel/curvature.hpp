// SPDX-License-Identifier: MIT
#pragma once

// Curvature of metrics that depend on the single coordinate x^0 = tau.
//
// Index layout: coordinates are (tau, u^1, u^2, u^3). Covariant tensors are
// stored naturally (M(i, j) = M_ij). Mixed tensors X^a_b are stored with the
// LOWER index as the row, X(b, a) = X^a_b, so that X = M * g^{-1} for a
// covariant M. With this layout the kappa matrix satisfies kappa * g = g_dot
// and the structure matrix C of the first integral enters as kappa = gamma' I + C.

#include "stackel/numerics.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace stackel {

using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec3 = Eigen::Vector3d;

/// Metric at one value of tau with its first and second tau-derivatives.
struct MetricJet {
    Mat4 g = Mat4::Identity();
    Mat4 dg = Mat4::Zero();
    Mat4 ddg = Mat4::Zero();
    int epsilon_time = 1;  ///< +1: u^0 timelike, -1: u^0 spacelike

    /// Symmetry, nondegeneracy and signature (-,+,+,+) up to ordering.
    void validate() const;

    static MetricJet minkowski();
};

using JetProvider = std::function<MetricJet(double)>;

/// Gamma^i_{jk} stored as christoffel[i](j, k).
using Christoffel = std::array<Mat4, 4>;

/// Degeneracy threshold on the row-scaled determinant (see relative_determinant).
inline constexpr double kDegeneracyThreshold = 1e-12;

/// det(m) divided by the product of the row maxima max_j |m_ij|. Invariant
/// under scaling of individual rows, so a diagonal metric scores +-1 however
/// far apart its entries are. Zero rows give 0.
template <class M>
double relative_determinant(const M& m) {
    double denom = 1.0;
    for (int i = 0; i < m.rows(); ++i) {
        const double r = m.row(i).cwiseAbs().maxCoeff();
        if (!(r > 0.0)) return 0.0;
        denom *= r;
    }
    return m.determinant() / denom;
}

/// Inverse of a symmetric 4x4 matrix; DegeneracyError when near-singular.
Mat4 invert_sym4(const Mat4& g);

Christoffel christoffel(const MetricJet& jet);

/// d/dtau of the Christoffel symbols. Needs only g, g', g''.
Christoffel christoffel_derivative(const MetricJet& jet);

/// Ricci tensor R_ij from Christoffels and their tau-derivative.
Mat4 ricci_from_christoffel(const Christoffel& gamma, const Christoffel& dgamma);

/// R_ij from the jet, with the Christoffel derivative taken analytically.
Mat4 ricci_general(const MetricJet& jet);

/// R_ij with the Christoffel derivative obtained by central differences of
/// christoffel() across tau. Used when only pointwise jets are trusted.
Mat4 ricci_general_fd(const JetProvider& provider, double tau, const Stencil& stencil = {});

/// Mixed Ricci tensor in the lower-row layout: R * g^{-1}.
Mat4 mixed_ricci(const Mat4& ricci, const Mat4& g);

/// Spatial 3x3 block with tau-derivatives.
struct SpatialJet {
    Mat3 g = Mat3::Identity();
    Mat3 dg = Mat3::Zero();
    Mat3 ddg = Mat3::Zero();
};

/// kappa^a_b = g^{ac} g_dot_{cb}, lower-row layout (= g_dot * g^{-1}).
Mat3 kappa(const Mat3& g, const Mat3& dg);

struct KappaRicci {
    double r00 = 0.0;                 ///< R^0_0
    Mat3 spatial = Mat3::Zero();      ///< R^a_b, lower-row layout
};

/// Mixed Ricci components from the kappa form for the metric
///   -epsilon (du^0)^2 + g_ab(tau) du^a du^b,  du^0 = ell(tau) dtau.
///
/// `ell` and `dell` are du^0/dtau and its tau-derivative; pass ell = 1,
/// dell = 0 when the jet is already taken along u^0.
KappaRicci ricci_kappa(const SpatialJet& spatial, int epsilon, double ell, double dell);

/// Extract the spatial block and the lapse data of a MetricJet for ricci_kappa.
struct KappaInput {
    SpatialJet spatial;
    int epsilon = 1;
    double ell = 1.0;
    double dell = 0.0;
};
KappaInput kappa_input(const MetricJet& jet);

/// max |R^i_j(general) - R^i_j(kappa)| over all components (off-blocks are
/// compared with zero).
double ricci_dual_path_deviation(const MetricJet& jet);

enum class RicciPath { analytic, finite_difference };

struct PointFailure {
    double tau = 0.0;
    std::string message;
};

struct ResidualReport {
    std::vector<double> tau;            ///< points that evaluated successfully
    std::vector<double> per_point_max;  ///< max_ij |R_ij - Lambda g_ij|
    std::vector<double> scalar_dev;     ///< |R - 4 Lambda| per point
    double global_max = 0.0;
    double ricci_scalar_dev = 0.0;
    std::vector<PointFailure> failures;
};

/// Residual of R_ij = Lambda g_ij over a grid. Individual point failures are
/// collected; the sweep itself throws only when more than 10% of points fail.
ResidualReport einstein_residual(const JetProvider& provider, double lambda_cosmo,
                                 const TauGrid& grid, RicciPath path = RicciPath::analytic,
                                 const Stencil& stencil = {});

}  // namespace stackel
