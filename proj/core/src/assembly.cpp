// SPDX-License-Identifier: MIT
#include "stackel/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stackel {

AssembledMetric::AssembledMetric(CanonicalClass cls, SpatialSolution eta, PhiSolution phi,
                                 double lambda)
    : cls_(std::move(cls)),
      eta_(std::move(eta)),
      phi_(std::move(phi)),
      domain_(phi_.default_domain()) {
    if (!std::isfinite(lambda)) throw InvalidArgument("assembly", "lambda must be finite");
    cosmo_.epsilon = eta_.determinant_sign();
    cosmo_.xi = phi_.xi();
    cosmo_.lambda = lambda;
    cosmo_.k = 0.0;
}

GammaJet AssembledMetric::gamma(double tau) const {
    const PhiJet pj = phi_.jet(tau);
    const double c = eta_.structure().trace();
    return {(pj.phi - cosmo_.lambda - c * tau) / 3.0, (pj.dphi - c) / 3.0, pj.ddphi / 3.0};
}

double AssembledMetric::ell_squared(double tau) const {
    return phi_.exp_phi(tau) * std::exp(-cosmo_.lambda);
}

MetricJet AssembledMetric::jet(double tau) const {
    const PhiJet pj = phi_.jet(tau);
    const EtaJet ej = eta_.jet(tau);
    const double c = eta_.structure().trace();

    const double g = (pj.phi - cosmo_.lambda - c * tau) / 3.0;
    const double dg = (pj.dphi - c) / 3.0;
    const double ddg = pj.ddphi / 3.0;
    const double eg = std::exp(g);

    MetricJet out;
    out.epsilon_time = cosmo_.epsilon;
    out.g.setZero();
    out.dg.setZero();
    out.ddg.setZero();

    const double g00 = -cosmo_.epsilon * pj.exp_phi * std::exp(-cosmo_.lambda);
    out.g(0, 0) = g00;
    out.dg(0, 0) = g00 * pj.dphi;
    out.ddg(0, 0) = g00 * (pj.ddphi + pj.dphi * pj.dphi);

    out.g.block<3, 3>(1, 1) = eg * ej.eta;
    out.dg.block<3, 3>(1, 1) = eg * (ej.deta + dg * ej.eta);
    out.ddg.block<3, 3>(1, 1) = eg * (ej.ddeta + 2.0 * dg * ej.deta + (ddg + dg * dg) * ej.eta);
    return out;
}

JetProvider AssembledMetric::provider() const {
    auto self = std::make_shared<const AssembledMetric>(*this);
    return [self](double tau) { return self->jet(tau); };
}

AssembledMetric AssembledMetric::tagged(int family_id,
                                        std::optional<DisplayComparison> display) const {
    AssembledMetric out = *this;
    out.family_id_ = family_id;
    out.display_ = std::move(display);
    return out;
}

AssembledMetric assemble(const CanonicalClass& cls, const SpatialSolution& eta,
                         const PhiSolution& phi, double lambda, InputCheck check) {
    if (check == InputCheck::strict) {
        const EpsilonP ep = epsilon_p(eta.structure());
        const bool p_ok = ep.epsilon == 0 ||
                          std::abs(phi.p() - ep.p) <= 1e-9 * std::max(1.0, ep.p);
        if (ep.epsilon != phi.epsilon() || !p_ok) {
            std::ostringstream os;
            os << "phi solution has (epsilon, p) = (" << phi.epsilon() << ", " << phi.p()
               << ") but the structure matrix gives (" << ep.epsilon << ", " << ep.p << ")";
            throw InconsistentInputsError(os.str());
        }
        if (cls.variant != eta.variant()) {
            throw InconsistentInputsError("canonical class and spatial solution differ in variant");
        }
    }

    AssembledMetric m(cls, eta, phi, lambda);
    const double tau0 = m.domain().lo;
    const MetricJet j = m.jet(tau0);
    try {
        j.validate();
    } catch (const Error& e) {
        Eigen::SelfAdjointEigenSolver<Mat4> es(j.g, Eigen::EigenvaluesOnly);
        std::ostringstream os;
        os << "metric at tau = " << tau0 << " is not Lorentzian (eigenvalue signs";
        for (int i = 0; i < 4; ++i) os << ' ' << (es.eigenvalues()(i) < 0.0 ? '-' : '+');
        os << "): " << e.what();
        throw SignatureError(os.str());
    }
    return m;
}

AssembledMetric assemble(const CanonicalClass& cls, const SpatialSolution& eta,
                         const PhiSolution& phi, const CosmologicalData& cosmo) {
    if (cosmo.k != 0.0) {
        throw InconsistentInputsError("k must be zero; absorb it into a rescaling of u^a");
    }
    if (cosmo.epsilon != eta.determinant_sign()) {
        throw InconsistentInputsError("epsilon must equal sign(det eta)");
    }
    if (cosmo.xi != phi.xi()) {
        throw InconsistentInputsError("xi of the cosmological data differs from the phi branch");
    }
    return assemble(cls, eta, phi, cosmo.lambda);
}

double kappa_consistency(const AssembledMetric& m, const TauGrid& grid,
                         const std::optional<Mat3>& reference) {
    const Mat3 c = reference.value_or(m.structure());
    double worst = 0.0;
    for (double tau : grid) {
        const MetricJet j = m.jet(tau);
        const Mat3 k = kappa(j.g.block<3, 3>(1, 1), j.dg.block<3, 3>(1, 1));
        const double dgamma = m.gamma(tau).dgamma;
        const Mat3 dev = k - dgamma * Mat3::Identity() - c;
        worst = std::max(worst, dev.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace stackel
