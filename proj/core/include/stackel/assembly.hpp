// SPDX-License-Identifier: MIT
#pragma once

// Spacetime metric from the two subsystem solutions:
//   ds^2 = -epsilon e^{phi - lambda} dtau^2 + e^gamma eta_ab(tau) du^a du^b,
//   3 gamma = phi - lambda - tau tr C   (integration constant k = 0).

#include "stackel/canonical.hpp"
#include "stackel/curvature.hpp"
#include "stackel/solutions.hpp"

#include <memory>
#include <optional>
#include <string>

namespace stackel {

struct GammaJet {
    double gamma = 0.0;
    double dgamma = 0.0;
    double ddgamma = 0.0;
};

/// Printed closed-form metric of a catalog family, evaluated against the
/// assembled provider.
struct DisplayComparison {
    int family_id = 0;
    double max_deviation = 0.0;   ///< max |g_display - g_assembled| over compared entries
    bool consistent = true;
    std::string compared;         ///< which components were compared
    std::string note;
};

class AssembledMetric {
public:
    AssembledMetric(CanonicalClass cls, SpatialSolution eta, PhiSolution phi, double lambda);

    [[nodiscard]] MetricJet jet(double tau) const;

    /// Copyable provider that shares this metric's immutable state.
    [[nodiscard]] JetProvider provider() const;

    [[nodiscard]] GammaJet gamma(double tau) const;

    /// ell^2 = e^{phi - lambda}; |g_tautau| and epsilon det(g_ab).
    [[nodiscard]] double ell_squared(double tau) const;

    [[nodiscard]] int epsilon_time() const noexcept { return cosmo_.epsilon; }
    [[nodiscard]] double cosmological_constant() const { return lambda_of(cosmo_); }
    [[nodiscard]] const CosmologicalData& cosmology() const noexcept { return cosmo_; }

    [[nodiscard]] const CanonicalClass& canonical_class() const noexcept { return cls_; }
    [[nodiscard]] const SpatialSolution& spatial() const noexcept { return eta_; }
    [[nodiscard]] const PhiSolution& phi() const noexcept { return phi_; }
    [[nodiscard]] const Mat3& structure() const noexcept { return eta_.structure(); }

    [[nodiscard]] const TauDomain& domain() const noexcept { return domain_; }
    [[nodiscard]] TauGrid default_grid(std::size_t n = 50) const { return domain_.grid(n); }

    [[nodiscard]] const std::optional<int>& family_id() const noexcept { return family_id_; }
    [[nodiscard]] const std::optional<DisplayComparison>& display_check() const noexcept {
        return display_;
    }

    /// Copy tagged with a catalog id and its display comparison.
    [[nodiscard]] AssembledMetric tagged(int family_id, std::optional<DisplayComparison> display) const;

private:
    CanonicalClass cls_;
    SpatialSolution eta_;
    PhiSolution phi_;
    CosmologicalData cosmo_;
    TauDomain domain_;
    std::optional<int> family_id_;
    std::optional<DisplayComparison> display_;
};

enum class InputCheck { strict, relaxed };

/// Builds the metric. epsilon is sign(det eta); Lambda = epsilon xi e^lambda / 2.
///
/// InconsistentInputsError when (epsilon, p) of `phi` differ from epsilon_p of
/// the spatial structure matrix (skipped with InputCheck::relaxed, which only
/// exists for negative controls). SignatureError when the metric at the start
/// of the domain is not Lorentzian.
AssembledMetric assemble(const CanonicalClass& cls, const SpatialSolution& eta,
                         const PhiSolution& phi, double lambda,
                         InputCheck check = InputCheck::strict);

/// As above, with explicit cosmological data. Its epsilon and xi must agree
/// with the derived ones and k must be zero.
AssembledMetric assemble(const CanonicalClass& cls, const SpatialSolution& eta,
                         const PhiSolution& phi, const CosmologicalData& cosmo);

/// max over the grid of |kappa - gamma' I - C|, with kappa = g_ab' g^{-1}
/// from the assembled spatial block. `reference` replaces the metric's own C.
double kappa_consistency(const AssembledMetric& m, const TauGrid& grid,
                         const std::optional<Mat3>& reference = std::nullopt);

}  // namespace stackel
