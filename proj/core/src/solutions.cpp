// SPDX-License-Identifier: MIT
#include "stackel/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace stackel {

double trace_invariant(const Mat3& c) {
    const double t = c.trace();
    return t * t - 3.0 * (c * c).trace();
}

EpsilonP epsilon_p(const Mat3& c) {
    const double q = trace_invariant(c);
    const double norm2 = c.squaredNorm();
    EpsilonP out;
    if (std::abs(q) <= 1e-12 * norm2) return out;
    out.epsilon = q > 0.0 ? 1 : -1;
    out.p = std::sqrt(0.5 * std::abs(q));
    return out;
}

void SignTriple::validate() const {
    for (int e : {e1, e2, e3}) {
        if (e != 1 && e != -1) throw InvalidArgument("solutions", "sign factors must be +1 or -1");
    }
}

SpatialSolution::SpatialSolution(CanonicalParams params, SignTriple signs)
    : params_(std::move(params)), signs_(signs) {
    signs_.validate();
    if (const auto* r = std::get_if<RotationParams>(&params_)) {
        if (!(r->modulus > 0.0) || !std::isfinite(r->modulus) || !std::isfinite(r->c) ||
            !std::isfinite(r->angle)) {
            throw InvalidArgument("solutions", "rotation modulus must be positive and finite");
        }
        if (r->sense != 1 && r->sense != -1) {
            throw InvalidArgument("solutions", "rotation sense must be +1 or -1");
        }
        if (std::abs(std::sin(r->angle)) < 1e-12) {
            throw DegenerateRotationError(
                "rotation angle is a multiple of pi; the block is diagonal (variant A)");
        }
    }
    if (const auto* j = std::get_if<JordanParams>(&params_)) {
        if (j->coupling == 0.0 || !std::isfinite(j->coupling)) {
            throw InvalidArgument("solutions", "Jordan coupling must be nonzero");
        }
    }
    if (variant() != Variant::A && signs_.e3 != 1) {
        throw InvalidArgument("solutions",
                              "variants B and C carry only the signs e1 and e2; e3 must be +1");
    }
    structure_ = canonical_matrix(params_);
}

EtaJet SpatialSolution::canonical_jet(double tau) const {
    EtaJet j;
    j.eta.setZero();
    const double e1 = signs_.e1;
    const double e2 = signs_.e2;

    if (const auto* d = std::get_if<DiagonalParams>(&params_)) {
        const std::array<double, 3> a{d->a1, d->a2, d->a3};
        const std::array<double, 3> e{e1, e2, static_cast<double>(signs_.e3)};
        for (int k = 0; k < 3; ++k) {
            const double v = e[k] * std::exp(a[k] * tau);
            j.eta(k, k) = v;
            j.deta(k, k) = a[k] * v;
            j.ddeta(k, k) = a[k] * a[k] * v;
        }
        return j;
    }

    if (const auto* r = std::get_if<RotationParams>(&params_)) {
        const double growth = r->modulus * std::cos(r->angle);
        const double freq = r->sense * r->modulus * std::sin(r->angle);
        const double k11 = r->c + growth;
        const double v11 = e1 * std::exp(k11 * tau);
        j.eta(0, 0) = v11;
        j.deta(0, 0) = k11 * v11;
        j.ddeta(0, 0) = k11 * k11 * v11;

        const double es = e2 * std::exp(growth * tau);
        const double s = std::sin(freq * tau);
        const double c = std::cos(freq * tau);
        // d/dtau e^sigma (sin, cos) = e^sigma (g sin + f cos, g cos - f sin)
        const double ds = growth * s + freq * c;
        const double dc = growth * c - freq * s;
        const double dds = growth * ds + freq * dc;
        const double ddc = growth * dc - freq * ds;

        j.eta(1, 1) = es * s;
        j.eta(2, 2) = -es * s;
        j.eta(1, 2) = j.eta(2, 1) = es * c;
        j.deta(1, 1) = es * ds;
        j.deta(2, 2) = -es * ds;
        j.deta(1, 2) = j.deta(2, 1) = es * dc;
        j.ddeta(1, 1) = es * dds;
        j.ddeta(2, 2) = -es * dds;
        j.ddeta(1, 2) = j.ddeta(2, 1) = es * ddc;
        return j;
    }

    const auto& jp = std::get<JordanParams>(params_);
    const double v11 = e1 * std::exp(jp.c1 * tau);
    j.eta(0, 0) = v11;
    j.deta(0, 0) = jp.c1 * v11;
    j.ddeta(0, 0) = jp.c1 * jp.c1 * v11;

    const double a = jp.a;
    const double b = jp.coupling;
    const double ea = e2 * std::exp(a * tau);
    j.eta(1, 2) = j.eta(2, 1) = ea;
    j.deta(1, 2) = j.deta(2, 1) = a * ea;
    j.ddeta(1, 2) = j.ddeta(2, 1) = a * a * ea;
    // b tau e^{a tau}
    j.eta(1, 1) = b * tau * ea;
    j.deta(1, 1) = b * (1.0 + a * tau) * ea;
    j.ddeta(1, 1) = b * a * (2.0 + a * tau) * ea;
    return j;
}

EtaJet SpatialSolution::jet(double tau) const {
    EtaJet j = canonical_jet(tau);
    if (frame_.isIdentity(0.0) && frame_scale_ == 1.0) return j;
    const Mat3& t = frame_;
    j.eta = frame_scale_ * t * j.eta * t.transpose();
    j.deta = frame_scale_ * t * j.deta * t.transpose();
    j.ddeta = frame_scale_ * t * j.ddeta * t.transpose();
    return j;
}

double SpatialSolution::determinant(double tau) const {
    double base = 0.0;
    if (const auto* d = std::get_if<DiagonalParams>(&params_)) {
        base = signs_.e1 * signs_.e2 * signs_.e3 * std::exp((d->a1 + d->a2 + d->a3) * tau);
    } else if (const auto* r = std::get_if<RotationParams>(&params_)) {
        base = -signs_.e1 * std::exp((r->c + 3.0 * r->modulus * std::cos(r->angle)) * tau);
    } else {
        const auto& jp = std::get<JordanParams>(params_);
        base = -signs_.e1 * std::exp((jp.c1 + 2.0 * jp.a) * tau);
    }
    const double dt = frame_.determinant();
    return base * frame_scale_ * frame_scale_ * frame_scale_ * dt * dt;
}

int SpatialSolution::determinant_sign() const {
    switch (variant()) {
        case Variant::A: return signs_.e1 * signs_.e2 * signs_.e3;
        case Variant::B:
        case Variant::C: return -signs_.e1;
    }
    return 1;
}

SpatialSolution SpatialSolution::in_frame(const Mat3& t) const {
    const double dt = t.determinant();
    if (!std::isfinite(dt) || std::abs(dt) < 1e-14 * std::pow(std::max(1e-300, t.cwiseAbs().maxCoeff()), 3)) {
        throw InvalidTransformError("frame transform is singular");
    }
    SpatialSolution out = *this;
    out.frame_ = t * frame_;
    out.frame_scale_ = frame_scale_ * std::pow(std::abs(dt), -2.0 / 3.0);
    out.structure_ = t * structure_ * t.inverse();
    return out;
}

SpatialSolution solve_eta(const CanonicalClass& cls, SignTriple signs) {
    return SpatialSolution(cls.params, signs);
}

SpatialSolution solve_eta_original(const CanonicalClass& cls, SignTriple signs) {
    // original = S^{-1} K S, so the frame transform is S^{-1}.
    return SpatialSolution(cls.params, signs).in_frame(cls.transform.inverse());
}

std::string to_string(PhiBranch b) {
    switch (b) {
        case PhiBranch::cos: return "cos";
        case PhiBranch::cosh: return "cosh";
        case PhiBranch::sinh: return "sinh";
        case PhiBranch::power: return "power";
    }
    return "?";
}

PhiBranch branch_for(int epsilon, int xi) {
    if (epsilon == 1 && xi == 1) return PhiBranch::cos;
    if (epsilon == -1 && xi == -1) return PhiBranch::cosh;
    if (epsilon == -1 && xi == 1) return PhiBranch::sinh;
    if (epsilon == 0 && xi == 1) return PhiBranch::power;
    std::ostringstream os;
    os << "no real solution for (epsilon, xi) = (" << epsilon << ", " << xi << ")";
    throw BranchError(os.str());
}

TauGrid TauDomain::grid(std::size_t n) const {
    return TauGrid::uniform(lo, hi, n, singular, margin);
}

PhiSolution::PhiSolution(int epsilon, int xi, double p)
    : epsilon_(epsilon), xi_(xi), p_(epsilon == 0 ? 0.0 : p), branch_(branch_for(epsilon, xi)) {
    if (epsilon_ != 0 && !(p_ > 0.0 && std::isfinite(p_))) {
        throw InvalidArgument("solutions", "p must be positive and finite when epsilon != 0");
    }
}

PhiJet PhiSolution::jet(double tau) const {
    PhiJet j;
    const double x = 0.5 * tau * p_;
    const double p2 = p_ * p_;
    switch (branch_) {
        case PhiBranch::cos: {
            const double c = std::cos(x);
            if (std::abs(c) < 1e-12) throw DomainError("solutions", "tau is a zero of cos(tau p / 2)");
            const double sec2 = 1.0 / (c * c);
            j.exp_phi = p2 * sec2 / 6.0;
            j.dphi = p_ * std::tan(x);
            j.ddphi = 0.5 * p2 * sec2;
            break;
        }
        case PhiBranch::cosh: {
            const double ch = std::cosh(x);
            const double sech2 = 1.0 / (ch * ch);
            j.exp_phi = p2 * sech2 / 6.0;
            j.dphi = -p_ * std::tanh(x);
            j.ddphi = -0.5 * p2 * sech2;
            break;
        }
        case PhiBranch::sinh: {
            if (tau == 0.0) throw DomainError("solutions", "tau = 0 is singular for the sinh branch");
            const double sh = std::sinh(x);
            const double csch2 = 1.0 / (sh * sh);
            j.exp_phi = p2 * csch2 / 6.0;
            j.dphi = -p_ / std::tanh(x);
            j.ddphi = 0.5 * p2 * csch2;
            break;
        }
        case PhiBranch::power: {
            if (tau == 0.0) throw DomainError("solutions", "tau = 0 is singular for the power branch");
            j.exp_phi = 2.0 / (3.0 * tau * tau);
            j.dphi = -2.0 / tau;
            j.ddphi = 2.0 / (tau * tau);
            break;
        }
    }
    if (!(j.exp_phi > 0.0) || !std::isfinite(j.exp_phi) || !std::isfinite(j.ddphi)) {
        std::ostringstream os;
        os << "exp(phi) is not finite and positive at tau = " << tau;
        throw DomainError("solutions", os.str());
    }
    j.phi = std::log(j.exp_phi);
    return j;
}

std::vector<double> PhiSolution::singular_points(double lo, double hi) const {
    std::vector<double> out;
    if (branch_ == PhiBranch::cos) {
        const double period = std::numbers::pi / p_;
        const auto first = static_cast<long long>(std::ceil((lo / period - 1.0) / 2.0));
        const auto last = static_cast<long long>(std::floor((hi / period - 1.0) / 2.0));
        for (long long m = first; m <= last; ++m) out.push_back((2.0 * m + 1.0) * period);
    } else if (branch_ == PhiBranch::sinh || branch_ == PhiBranch::power) {
        if (lo <= 0.0 && 0.0 <= hi) out.push_back(0.0);
    }
    return out;
}

TauDomain PhiSolution::default_domain() const {
    TauDomain d;
    if (branch_ == PhiBranch::cos) {
        const double half = std::numbers::pi / p_;
        const double m = 0.05 * half;
        d.lo = -half + m;
        d.hi = half - m;
        d.singular = {-half, half};
        d.margin = std::min(kDefaultExclusionMargin, 0.5 * m);
    } else {
        d.lo = 0.2;
        d.hi = 5.0;
        if (branch_ != PhiBranch::cosh) d.singular = {0.0};
    }
    return d;
}

double solve_phi(int epsilon, int xi, double p, double tau) {
    return PhiSolution(epsilon, xi, p).exp_phi(tau);
}

PhiResiduals phi_residuals(const PhiSolution& sol, const PhiSystem& system, const TauGrid& grid) {
    PhiResiduals r;
    for (double tau : grid) {
        const PhiJet j = sol.jet(tau);
        r.r1 = std::max(r.r1, std::abs(4.0 * j.ddphi - 2.0 * j.dphi * j.dphi - system.q));
        r.r2 = std::max(r.r2, std::abs(j.ddphi - 3.0 * system.xi * j.exp_phi));
    }
    return r;
}

PhiResiduals phi_residuals(const PhiSolution& sol, const Mat3& c, const TauGrid& grid) {
    return phi_residuals(sol, PhiSystem{trace_invariant(c), sol.xi()}, grid);
}

double first_integral_check(const PhiSolution& sol, const TauGrid& grid) {
    const double ep2 = sol.epsilon() * sol.p() * sol.p();
    double worst = 0.0;
    for (double tau : grid) {
        const PhiJet j = sol.jet(tau);
        worst = std::max(worst, std::abs(j.ddphi - 0.5 * (j.dphi * j.dphi + ep2)));
    }
    return worst;
}

double lambda_of(const CosmologicalData& cosmo) {
    if ((cosmo.epsilon != 1 && cosmo.epsilon != -1) || (cosmo.xi != 1 && cosmo.xi != -1)) {
        throw InvalidArgument("solutions", "epsilon and xi must be +1 or -1");
    }
    return 0.5 * cosmo.epsilon * cosmo.xi * std::exp(cosmo.lambda);
}

}  // namespace stackel
