// SPDX-License-Identifier: MIT
//
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Tolerances are fixed here and are not configurable.

#include "stackel/catalog.hpp"
#include "stackel/discrepancy.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace stackel;
using std::numbers::pi;

constexpr double kResidualTol = 1e-7;
constexpr double kRuntimeBudgetS = 5.0;
constexpr double kScalarTol = 1e-7;
constexpr double kDualPathTol = 1e-7;
constexpr double kEtaTol = 1e-6;
constexpr int kEtaCheckpoints = 20;
constexpr double kPhiTol = 1e-9;
constexpr int kCanonicalTrials = 1000;
constexpr double kCanonicalTol = 1e-8;
constexpr double kSimilarityTol = 1e-10;
constexpr int kIdentityTrials = 100;
constexpr double kIdentityTol = 1e-9;
constexpr double kNegativeControlFloor = 1e-3;
constexpr double kControlPerturbation = 1e-3;
constexpr double kFlatTol = 1e-10;
constexpr std::size_t kGridPoints = 50;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

struct Sample {
    int family;
    ParamMap params;
    double lambda;
};

std::vector<Sample> family_samples() {
    return {
        {1, {{"a1", 1.0}, {"a2", 0.5}, {"a3", 0.0}}, 0.0},
        {1, {{"a1", 2.0}, {"a2", 1.0}, {"a3", 0.0}}, 0.25},
        {1, {{"a1", -0.5}, {"a2", 0.3}, {"a3", 1.2}}, -0.4},
        {2, {{"a1", 1.0}, {"a2", 0.5}, {"a3", 0.0}}, 0.0},
        {2, {{"a1", 2.0}, {"a2", 1.0}, {"a3", 0.0}}, 0.25},
        {2, {{"a1", -0.5}, {"a2", 0.3}, {"a3", 1.2}}, -0.4},
        {3, {{"a", 0.0}}, 0.0},
        {3, {{"a", 0.5}}, 0.25},
        {3, {{"a", -1.0}}, -0.4},
        {4, {{"c", 0.5}, {"a", pi / 3}}, 0.0},
        {4, {{"c", 0.0}, {"a", pi / 2}}, 0.25},
        {4, {{"c", -0.8}, {"a", 2 * pi / 3}}, -0.4},
        {5, {{"c", 1.0}, {"a", pi / 6}}, 0.0},
        {5, {{"c", 2.0}, {"a", pi / 3}}, 0.25},
        {5, {{"c", -1.5}, {"a", 2.5}}, -0.4},
        {6, {{"c", 1.0}, {"a", pi / 6}}, 0.0},
        {6, {{"c", 2.0}, {"a", pi / 3}}, 0.25},
        {6, {{"c", -1.5}, {"a", 2.5}}, -0.4},
        {7, {{"a", pi / 3}}, 0.0},
        {7, {{"a", 0.7}}, 0.25},
        {7, {{"a", 2.2}}, -0.4},
        {8, {{"a", 1.0}, {"b", -1.0}}, 0.0},
        {8, {{"a", 0.3}, {"b", 0.7}}, 0.25},
        {8, {{"a", -1.0}, {"b", 2.0}}, -0.4},
        {9, {{"a", 1.0}, {"b", -1.0}}, 0.0},
        {9, {{"a", 0.3}, {"b", 0.7}}, 0.25},
        {9, {{"a", -1.0}, {"b", 2.0}}, -0.4},
        {10, {{"a", 1.0}}, 0.0},
        {10, {{"a", 0.0}}, 0.25},
        {10, {{"a", -0.5}}, -0.4},
    };
}

struct FamilyRun {
    double residual = 0.0;
    double scalar = 0.0;
    double dual = 0.0;
    double wrong_lambda_min = 1e300;
    std::size_t failed_points = 0;
    std::size_t samples = 0;
    double seconds = 0.0;
};

FamilyRun run_families() {
    FamilyRun out;
    const auto start = std::chrono::steady_clock::now();
    for (const Sample& s : family_samples()) {
        const AssembledMetric m = catalog(s.family, s.params, s.lambda);
        const TauGrid grid = m.default_grid(kGridPoints);
        const ResidualReport rep = einstein_residual(m.provider(), m.cosmological_constant(), grid);
        out.residual = std::max(out.residual, rep.global_max);
        out.scalar = std::max(out.scalar, rep.ricci_scalar_dev);
        out.failed_points += rep.failures.size();
        for (double t : grid) out.dual = std::max(out.dual, ricci_dual_path_deviation(m.jet(t)));
        ++out.samples;
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const Sample& s : family_samples()) {
        const AssembledMetric m = catalog(s.family, s.params, s.lambda);
        const ResidualReport wrong =
            einstein_residual(m.provider(), 2.0 * m.cosmological_constant(), m.default_grid(kGridPoints));
        out.wrong_lambda_min = std::min(out.wrong_lambda_min, wrong.global_max);
    }
    return out;
}

Outcome criterion_eta() {
    const std::vector<std::pair<CanonicalParams, SignTriple>> cases{
        {DiagonalParams{1.0, 0.5, -0.3}, {1, 1, 1}},
        {RotationParams{0.4, 1.1, 1.0, 1}, {1, -1, 1}},
        {JordanParams{0.2, 0.8, 1.0}, {1, 1, 1}},
    };
    double worst = 0.0;
    std::string detail;
    const double t0 = 0.2;
    const double t1 = 2.0;
    for (const auto& [params, signs] : cases) {
        const SpatialSolution s(params, signs);
        const Mat3 cm = s.structure();
        const auto traj = rk4_integrate<Mat3>([&cm](double, const Mat3& y) { return Mat3(cm * y); },
                                              s.eta(t0), t0, t1, 2000);
        const std::size_t stride = (traj.tau.size() - 1) / kEtaCheckpoints;
        double dev = 0.0;
        for (int k = 1; k <= kEtaCheckpoints; ++k) {
            const std::size_t i = static_cast<std::size_t>(k) * stride;
            const Mat3 exact = s.eta(traj.tau[i]);
            dev = std::max(dev, max_abs(traj.state[i] - exact) / std::max(1.0, max_abs(exact)));
        }
        worst = std::max(worst, dev);
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s%s %.2e", detail.empty() ? "" : ", ", to_string(s.variant()).c_str(), dev);
        detail += buf;
    }
    return {worst < kEtaTol, detail};
}

Outcome criterion_phi() {
    const std::vector<std::pair<int, int>> branches{{1, 1}, {-1, -1}, {-1, 1}, {0, 1}};
    double worst = 0.0;
    for (const auto& [eps, xi] : branches) {
        for (double p : {0.5, 1.0, 2.0}) {
            const PhiSolution sol(eps, xi, eps == 0 ? 0.0 : p);
            const TauGrid grid = sol.default_domain().grid(kGridPoints);
            const PhiResiduals r = phi_residuals(sol, PhiSystem{2.0 * eps * sol.p() * sol.p(), xi}, grid);
            worst = std::max({worst, r.r1, r.r2, first_integral_check(sol, grid)});
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
    return {worst < kPhiTol, buf};
}

struct Known {
    Mat3 k;
    Variant variant;
};

Known random_canonical(std::mt19937_64& rng, int which) {
    using stackel::testing::uniform;
    switch (which % 3) {
        case 0: {
            const double a1 = uniform(rng, -2, 2);
            const double a2 = uniform(rng, -2, 2);
            double a3 = uniform(rng, -2, 2);
            if (std::abs(a2 - a3) < 0.05) a3 = a2 - 0.5;
            return {Vec3(a1, a2, a3).asDiagonal(), Variant::A};
        }
        case 1: {
            const RotationParams p{uniform(rng, -2, 2), uniform(rng, 0.2, pi - 0.2), uniform(rng, 0.5, 2), 1};
            return {canonical_matrix(p), Variant::B};
        }
        default: {
            double c1 = uniform(rng, -2, 2);
            const double a = uniform(rng, -2, 2);
            if (std::abs(c1 - a) < 0.05) c1 = a + 0.5;
            const JordanParams p{c1, a, uniform(rng, 0.5, 2) * (uniform(rng, 0, 1) < 0.5 ? -1 : 1)};
            return {canonical_matrix(p), Variant::C};
        }
    }
}

Outcome criterion_canonical() {
    auto rng = stackel::testing::make_rng(6);
    int wrong_variant = 0;
    double inv_dev = 0.0;
    double sim_dev = 0.0;
    for (int trial = 0; trial < kCanonicalTrials; ++trial) {
        const Known known = random_canonical(rng, trial);
        const Mat3 s = stackel::testing::random_invertible(rng);
        const StructureMatrix c = admissible_transform(StructureMatrix(known.k), s);
        const double scale = std::max(1.0, max_abs(known.k));
        sim_dev = std::max({sim_dev, std::abs(c.trace() - known.k.trace()) / scale,
                            std::abs(c.trace_of_square() - (known.k * known.k).trace()) / (scale * scale)});
        const CanonicalClass cls = classify(c);
        if (cls.variant != known.variant) ++wrong_variant;
        const Mat3 k = cls.canonical();
        inv_dev = std::max({inv_dev, std::abs(k.trace() - known.k.trace()) / scale,
                            std::abs((k * k).trace() - (known.k * known.k).trace()) / (scale * scale),
                            std::abs(k.determinant() - known.k.determinant()) / (scale * scale * scale),
                            max_abs(cls.transform * c.matrix() * cls.transform.inverse() - k) /
                                std::max(1.0, max_abs(c.matrix()))});
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "wrong variants %d, invariants %.2e, similarity %.2e", wrong_variant,
                  inv_dev, sim_dev);
    return {wrong_variant == 0 && inv_dev < kCanonicalTol && sim_dev < kSimilarityTol, buf};
}

Outcome criterion_identity() {
    auto rng = stackel::testing::make_rng(7);
    double worst = 0.0;
    bool eps_ok = true;
    for (int trial = 0; trial < kIdentityTrials; ++trial) {
        const double a1 = stackel::testing::uniform(rng, -3, 3);
        const double a2 = stackel::testing::uniform(rng, -3, 3);
        const double a3 = stackel::testing::uniform(rng, -3, 3);
        const EpsilonP ep = epsilon_p(Vec3(a1, a2, a3).asDiagonal());
        const double lhs = (2 * a1 - a2 - a3) * (2 * a1 - a2 - a3) + 3 * (a2 - a3) * (a2 - a3) +
                           4.0 * ep.epsilon * ep.p * ep.p;
        worst = std::max(worst, std::abs(lhs));
        eps_ok = eps_ok && (ep.epsilon == -1 || ep.epsilon == 0);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max |identity| %.2e", worst);
    return {worst < kIdentityTol && eps_ok, buf};
}

// Largest residual over single-entry perturbations of the canonical C,
// with phi held at the unperturbed solution.
double perturbed_structure_residual(const AssembledMetric& m) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Mat3 c = m.canonical_class().canonical();
            c(i, j) += kControlPerturbation;
            try {
                const CanonicalClass cls = classify(StructureMatrix(c));
                const SpatialSolution eta = solve_eta(cls, m.spatial().signs());
                const AssembledMetric broken = assemble(cls, eta, m.phi(), 0.0, InputCheck::relaxed);
                worst = std::max(worst, einstein_residual(broken.provider(), m.cosmological_constant(),
                                                          m.default_grid(kGridPoints))
                                            .global_max);
            } catch (const NotSplittableError&) {
            }
        }
    }
    return worst;
}

Outcome criterion_negative(const FamilyRun& fam) {
    double perturbed_min = 1e300;
    std::map<int, double> per_family;
    for (const Sample& s : family_samples()) {
        const double r = perturbed_structure_residual(catalog(s.family, s.params, s.lambda));
        perturbed_min = std::min(perturbed_min, r);
        auto [it, fresh] = per_family.try_emplace(s.family, r);
        if (!fresh) it->second = std::min(it->second, r);
    }
    std::string below;
    for (const auto& [family, r] : per_family) {
        if (r <= kNegativeControlFloor) below += (below.empty() ? "" : ",") + std::to_string(family);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "min residual: doubled Lambda %.2e, perturbed C %.2e", fam.wrong_lambda_min,
                  perturbed_min);
    std::string detail = buf;
    if (!below.empty()) detail += " (perturbed C at or below floor for families " + below + ")";
    return {fam.wrong_lambda_min > kNegativeControlFloor && perturbed_min > kNegativeControlFloor, detail};
}

Outcome criterion_flat() {
    MetricJet jet;
    jet.g = Eigen::Vector4d(-1, 1, 1, 1).asDiagonal();
    const double general = ricci_general(jet).cwiseAbs().maxCoeff();
    const auto provider = [jet](double) { return jet; };
    const double fd = ricci_general_fd(provider, 1.0).cwiseAbs().maxCoeff();
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |R_ij| analytic %.2e, finite difference %.2e", general, fd);
    return {general < kFlatTol && fd < kFlatTol, buf};
}

Outcome criterion_ledger() {
    const auto ledger = discrepancy_ledger();
    std::set<std::string> missing{"eta11-exponent", "rotation-invariant", "jordan-orientation",
                                  "family3-header"};
    for (const auto& d : ledger) {
        if (missing.contains(d.id) && !d.evidence.empty() && !d.confirmed) missing.erase(d.id);
    }
    std::string detail = std::to_string(ledger.size()) + " entries";
    for (const auto& id : missing) detail += ", missing " + id;
    return {!ledger.empty() && missing.empty(), detail};
}

Outcome guarded(const std::function<Outcome()>& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

int main() {
    FamilyRun fam;
    std::string family_error;
    try {
        fam = run_families();
    } catch (const std::exception& e) {
        family_error = e.what();
    }
    const bool fam_ok = family_error.empty();
    auto fam_detail = [&](const char* what, double v) {
        if (!fam_ok) return "exception: " + family_error;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu samples, %s %.2e", fam.samples, what, v);
        return std::string(buf);
    };

    std::vector<std::pair<std::string, Outcome>> results;
    {
        std::string d = fam_detail("max residual", fam.residual);
        char t[64];
        std::snprintf(t, sizeof t, ", %zu failed points, %.3f s", fam.failed_points, fam.seconds);
        if (fam_ok) d += t;
        results.push_back({"family residuals",
                           {fam_ok && fam.residual < kResidualTol && fam.failed_points == 0 &&
                                fam.seconds < kRuntimeBudgetS,
                            d}});
    }
    results.push_back({"ricci scalar trace", {fam_ok && fam.scalar < kScalarTol,
                                              fam_detail("max |R - 4 Lambda|", fam.scalar)}});
    results.push_back({"dual-path ricci", {fam_ok && fam.dual < kDualPathTol,
                                           fam_detail("max deviation", fam.dual)}});
    results.push_back({"eta closed form vs rk4", guarded(criterion_eta)});
    results.push_back({"phi residuals and first integral", guarded(criterion_phi)});
    results.push_back({"canonicalization round trip", guarded(criterion_canonical)});
    results.push_back({"diagonal invariant identity", guarded(criterion_identity)});
    results.push_back({"negative controls", fam_ok ? guarded([&] { return criterion_negative(fam); })
                                                   : Outcome{false, "family run failed"}});
    results.push_back({"flat space", guarded(criterion_flat)});
    results.push_back({"discrepancy ledger", guarded(criterion_ledger)});

    int failures = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& [name, o] = results[i];
        std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, name.c_str(), o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures, results.size());
    return failures == 0 ? 0 : 1;
}
