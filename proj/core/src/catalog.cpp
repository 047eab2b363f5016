// SPDX-License-Identifier: MIT
#include "stackel/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace stackel {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<FamilySpec> build_families() {
    const std::vector<ParamSlot> diag{
        {"a1", 1.0, "first diagonal entry of C"},
        {"a2", 0.5, "second diagonal entry of C"},
        {"a3", 0.0, "third diagonal entry of C"},
    };
    const std::string diag_constraint =
        "(2 a1 - a2 - a3)^2 + 3 (a2 - a3)^2 > 0, i.e. the a's are not all equal";

    std::vector<FamilySpec> f;
    f.push_back({1, Variant::A, -1, -1, PhiBranch::cosh, diag, true, diag_constraint,
                 "epsilon = xi = -1"});
    f.push_back({2, Variant::A, -1, 1, PhiBranch::sinh, diag, true, diag_constraint,
                 "epsilon = -1, xi = 1"});
    f.push_back({3, Variant::A, 0, 1, PhiBranch::power,
                 {{"a", 0.0, "common diagonal entry, C = a I"}}, true,
                 "a1 = a2 = a3 (isotropic C)", "epsilon = -1, xi = 1"});

    f.push_back({4, Variant::B, 1, 1, PhiBranch::cos,
                 {{"c", 0.5, "C_11 - cos a"}, {"a", kPi / 3.0, "rotation angle in (0, pi)"}}, false,
                 "3 sin^2 a > c^2", "epsilon = xi = 1"});
    f.push_back({5, Variant::B, -1, -1, PhiBranch::cosh,
                 {{"c", 1.0, "C_11 - cos a"}, {"a", kPi / 6.0, "rotation angle in (0, pi)"}}, false,
                 "c^2 > 3 sin^2 a", "epsilon = xi = -1"});
    f.push_back({6, Variant::B, -1, 1, PhiBranch::sinh,
                 {{"c", 1.0, "C_11 - cos a"}, {"a", kPi / 6.0, "rotation angle in (0, pi)"}}, false,
                 "c^2 > 3 sin^2 a", "epsilon = -xi = -1"});
    f.push_back({7, Variant::B, 0, 1, PhiBranch::power,
                 {{"a", kPi / 3.0, "rotation angle in (0, pi)"},
                  {"c", std::sqrt(3.0) * std::sin(kPi / 3.0),
                   "C_11 - cos a; defaults to sqrt(3) sin a"}},
                 false, "c^2 = 3 sin^2 a, checked as (tr C)^2 = 3 tr(C^2) within 1e-10",
                 "epsilon = 0, xi = 1"});

    const std::vector<ParamSlot> jordan{
        {"a", 1.0, "eigenvalue of the Jordan block"},
        {"b", -1.0, "C_11 - a; p = |b|"},
    };
    f.push_back({8, Variant::C, -1, -1, PhiBranch::cosh, jordan, false,
                 "b^2 = -epsilon p^2 with b != 0", "epsilon = -xi = 1, p = b"});
    f.push_back({9, Variant::C, -1, 1, PhiBranch::sinh, jordan, false,
                 "b^2 = -epsilon p^2 with b != 0", "epsilon = -1, xi = 1, p = b"});
    f.push_back({10, Variant::C, 0, 1, PhiBranch::power,
                 {{"a", 1.0, "eigenvalue of the Jordan block; C_11 = a"}}, false, "b = 0",
                 "epsilon = -1, xi = 1, b = 0"});
    return f;
}

double branch_factor(PhiBranch b, double p, double tau) {
    const double x = 0.5 * tau * p;
    switch (b) {
        case PhiBranch::cos: return p * p / (6.0 * std::cos(x) * std::cos(x));
        case PhiBranch::cosh: return p * p / (6.0 * std::cosh(x) * std::cosh(x));
        case PhiBranch::sinh: return p * p / (6.0 * std::sinh(x) * std::sinh(x));
        case PhiBranch::power: return 2.0 / (3.0 * tau * tau);
    }
    return 0.0;
}

[[noreturn]] void violated(const FamilySpec& spec, const std::string& detail) {
    std::ostringstream os;
    os << "family " << spec.id << " requires " << spec.constraint << "; " << detail;
    throw ConstraintError(os.str());
}

}  // namespace

const std::vector<FamilySpec>& families() {
    static const std::vector<FamilySpec> list = build_families();
    return list;
}

const FamilySpec& family_spec(int id) {
    if (id < 1 || id > 10) {
        throw InvalidArgument("assembly", "family id must be in 1..10, got " + std::to_string(id));
    }
    return families()[static_cast<std::size_t>(id - 1)];
}

ParamMap resolve_params(const FamilySpec& spec, const ParamMap& params) {
    ParamMap out;
    for (const auto& [name, value] : params) {
        bool known = false;
        for (const auto& s : spec.slots) known = known || s.name == name;
        if (!known) {
            throw InvalidArgument("assembly", "family " + std::to_string(spec.id) +
                                                  " has no parameter '" + name + "'");
        }
        if (!std::isfinite(value)) {
            throw InvalidArgument("assembly", "parameter '" + name + "' must be finite");
        }
    }
    for (const auto& s : spec.slots) {
        auto it = params.find(s.name);
        out[s.name] = it != params.end() ? it->second : s.default_value;
    }
    if (spec.id == 7 && !params.contains("c")) out["c"] = std::sqrt(3.0) * std::sin(out["a"]);
    return out;
}

CanonicalParams family_canonical_params(const FamilySpec& spec, const ParamMap& r) {
    CanonicalParams params;
    switch (spec.variant) {
        case Variant::A:
            if (spec.id == 3) {
                params = DiagonalParams{r.at("a"), r.at("a"), r.at("a")};
            } else {
                params = DiagonalParams{r.at("a1"), r.at("a2"), r.at("a3")};
            }
            break;
        case Variant::B: {
            const double a = r.at("a");
            double c = r.at("c");
            if (!(a > 0.0 && a < kPi)) violated(spec, "the angle a must lie in (0, pi)");
            if (spec.id == 7) {
                const double q = 2.0 * (3.0 * std::sin(a) * std::sin(a) - c * c);
                if (std::abs(q) > 1e-10) {
                    std::ostringstream os;
                    os << "(tr C)^2 - 3 tr(C^2) = " << q;
                    violated(spec, os.str());
                }
                // Snap onto the constraint surface so epsilon_p sees exactly zero.
                c = std::copysign(std::sqrt(3.0) * std::sin(a), c);
            }
            params = RotationParams{c, a, 1.0, 1};
            break;
        }
        case Variant::C: {
            const double a = r.at("a");
            const double b = spec.id == 10 ? 0.0 : r.at("b");
            if (spec.id != 10 && b == 0.0) violated(spec, "b = 0 gives epsilon = 0 (family 10)");
            params = JordanParams{a + b, a, 1.0};
            break;
        }
    }

    const EpsilonP ep = epsilon_p(canonical_matrix(params));
    if (ep.epsilon != spec.epsilon) {
        std::ostringstream os;
        os << "the parameters give epsilon = " << ep.epsilon << " (p = " << ep.p
           << "), the family needs epsilon = " << spec.epsilon;
        violated(spec, os.str());
    }
    return params;
}

AssembledMetric catalog(int id, const ParamMap& params, double lambda, SignTriple signs) {
    const FamilySpec& spec = family_spec(id);
    const ParamMap r = resolve_params(spec, params);
    const CanonicalParams cp = family_canonical_params(spec, r);

    CanonicalClass cls;
    cls.variant = spec.variant;
    cls.params = cp;
    cls.original = canonical_matrix(cp);
    cls.trace = cls.original.trace();
    const EpsilonP ep = epsilon_p(cls.original);
    cls.epsilon = ep.epsilon;
    cls.p = ep.p;

    const SpatialSolution eta(cp, signs);
    const PhiSolution phi(spec.epsilon, spec.xi, ep.p);
    const AssembledMetric m = assemble(cls, eta, phi, lambda).tagged(id, std::nullopt);
    DisplayComparison dc = compare_display(m, r, lambda, signs, m.default_grid(21));
    return m.tagged(id, std::move(dc));
}

PrintedMetric printed_display(int id, const ParamMap& r, double p, double lambda,
                              SignTriple s, double tau) {
    const FamilySpec& spec = family_spec(id);
    const double P = branch_factor(spec.branch, p, tau);
    const double el = std::exp(lambda);
    const double e123 = s.e1 * s.e2 * s.e3;
    PrintedMetric out;

    switch (id) {
        case 1:
        case 2: {
            const double a[3] = {r.at("a1"), r.at("a2"), r.at("a3")};
            const double e[3] = {double(s.e1), double(s.e2), double(s.e3)};
            const double c = a[0] + a[1] + a[2];
            out.g(0, 0) = -e123 * P / el;
            const double f = std::cbrt(P / std::exp(lambda + c * tau));
            for (int k = 0; k < 3; ++k) out.g(k + 1, k + 1) = f * e[k] * std::exp(tau * a[k]);
            break;
        }
        case 3: {
            const double e[3] = {double(s.e1), double(s.e2), double(s.e3)};
            const double base = 2.0 * e123 / (3.0 * tau * tau * el);
            out.g(0, 0) = -base;
            const double f = std::cbrt(base);
            for (int k = 0; k < 3; ++k) out.g(k + 1, k + 1) = f * e[k];
            break;
        }
        case 4:
        case 5:
        case 6:
        case 7: {
            const double c = r.at("c");
            const double omega = tau * std::sin(r.at("a"));
            const double f = std::cbrt(P / std::exp(lambda + c * tau));
            out.g(0, 0) = P / el;
            out.g(1, 1) = f * std::exp(c * tau);
            out.g(2, 2) = f * std::sin(omega);
            out.g(3, 3) = -f * std::sin(omega);
            out.g(2, 3) = out.g(3, 2) = f * std::cos(omega);
            if (id == 5) {
                out.compared.setConstant(false);
                out.compared(0, 0) = true;
                out.compared(1, 1) = true;
            }
            break;
        }
        case 8:
        case 9: {
            out.g(0, 0) = -e123 * P / el;
            const double f = std::cbrt(P / std::exp(lambda - tau));
            out.g(1, 1) = f * std::exp(-p * tau);
            out.g(2, 2) = f * tau;  // the printed "c tau" with unit coupling
            out.g(2, 3) = out.g(3, 2) = f;
            break;
        }
        case 10: {
            out.g(0, 0) = P / el;
            const double f = std::cbrt(P / el);
            out.g(1, 1) = f;
            out.g(2, 2) = f * tau;
            out.g(2, 3) = out.g(3, 2) = f;
            break;
        }
        default: break;
    }
    return out;
}

DisplayComparison compare_display(const AssembledMetric& m, const ParamMap& resolved,
                                  double lambda, SignTriple signs, const TauGrid& grid) {
    const int id = m.family_id().value_or(0);
    DisplayComparison dc;
    dc.family_id = id;
    // Untagged metrics are compared against the display of the family whose
    // branch and variant they share; callers normally go through catalog().
    int fid = id;
    if (fid == 0) {
        for (const auto& f : families()) {
            if (f.variant == m.canonical_class().variant && f.branch == m.phi().branch()) {
                fid = f.id;
                break;
            }
        }
        dc.family_id = fid;
    }

    bool partial = false;
    std::array<double, 4> worst_row{};
    for (double tau : grid) {
        const PrintedMetric pm = printed_display(fid, resolved, m.phi().p(), lambda, signs, tau);
        const Mat4 g = m.jet(tau).g;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                if (!pm.compared(i, j)) {
                    partial = true;
                    continue;
                }
                const double dev = std::abs(pm.g(i, j) - g(i, j)) / std::max(1.0, std::abs(g(i, j)));
                dc.max_deviation = std::max(dc.max_deviation, dev);
                worst_row[static_cast<std::size_t>(i)] =
                    std::max(worst_row[static_cast<std::size_t>(i)], dev);
            }
        }
    }
    dc.consistent = dc.max_deviation <= 1e-9;
    dc.compared = partial ? "g_tautau and g_11 (the printed spatial block is truncated)"
                          : "all metric components";

    std::ostringstream os;
    if (dc.consistent) {
        os << "printed display agrees with the assembled metric";
    } else {
        os << "printed display differs from the assembled metric (max relative deviation "
           << dc.max_deviation << ")";
        if (worst_row[0] > 1e-9) os << "; g_tautau differs";
        if (std::max({worst_row[1], worst_row[2], worst_row[3]}) > 1e-9) {
            os << "; spatial block differs";
        }
    }
    dc.note = os.str();
    return dc;
}

}  // namespace stackel
