// SPDX-License-Identifier: MIT
#include "stackel/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace stackel {

namespace {

bool is_symmetric(const Mat4& m, double rel = 1e-12) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel * scale;
}

// Gamma^i_{jk} = 1/2 g^{il} (d_k g_lj + d_j g_lk - d_l g_jk) with d_m = delta_m^0 d/dtau.
// Linear in both arguments, so it also yields the tau-derivative by the product rule.
Christoffel gamma_bilinear(const Mat4& ginv, const Mat4& dg) {
    Christoffel out;
    for (int i = 0; i < 4; ++i) {
        Mat4& gi = out[static_cast<std::size_t>(i)];
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                double s = -ginv(i, 0) * dg(j, k);
                for (int l = 0; l < 4; ++l) {
                    if (k == 0) s += ginv(i, l) * dg(l, j);
                    if (j == 0) s += ginv(i, l) * dg(l, k);
                }
                gi(j, k) = 0.5 * s;
            }
        }
    }
    return out;
}

using PackedGamma = Eigen::Matrix<double, 4, 16>;

PackedGamma pack(const Christoffel& c) {
    PackedGamma p;
    for (int i = 0; i < 4; ++i) p.block<4, 4>(0, 4 * i) = c[static_cast<std::size_t>(i)];
    return p;
}

Christoffel unpack(const PackedGamma& p) {
    Christoffel c;
    for (int i = 0; i < 4; ++i) c[static_cast<std::size_t>(i)] = p.block<4, 4>(0, 4 * i);
    return c;
}

}  // namespace

MetricJet MetricJet::minkowski() {
    MetricJet jet;
    jet.g = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    jet.epsilon_time = 1;
    return jet;
}

void MetricJet::validate() const {
    if (!g.allFinite() || !dg.allFinite() || !ddg.allFinite()) {
        throw InvalidArgument("curvature", "metric jet has non-finite entries");
    }
    if (!is_symmetric(g) || !is_symmetric(dg) || !is_symmetric(ddg)) {
        throw InvalidArgument("curvature", "metric jet is not symmetric");
    }
    if (epsilon_time != 1 && epsilon_time != -1) {
        throw InvalidArgument("curvature", "epsilon_time must be +1 or -1");
    }
    const double det = g.determinant();
    if (!(std::abs(relative_determinant(g)) > kDegeneracyThreshold)) {
        throw DegeneracyError(det, "metric is degenerate");
    }
    // Mostly-plus convention: exactly one negative eigenvalue.
    Eigen::SelfAdjointEigenSolver<Mat4> es(g, Eigen::EigenvaluesOnly);
    const auto negatives = (es.eigenvalues().array() < 0.0).count();
    if (negatives != 1) {
        std::ostringstream os;
        os << "metric is not Lorentzian; eigenvalues " << es.eigenvalues().transpose();
        throw InvalidArgument("curvature", os.str());
    }
}

Mat4 invert_sym4(const Mat4& g) {
    const double det = g.determinant();
    if (!std::isfinite(det) || !(std::abs(relative_determinant(g)) > kDegeneracyThreshold)) {
        std::ostringstream os;
        os << "near-singular metric, det = " << det;
        throw DegeneracyError(det, os.str());
    }
    Mat4 inv = g.inverse();
    return 0.5 * (inv + inv.transpose());
}

Christoffel christoffel(const MetricJet& jet) {
    return gamma_bilinear(invert_sym4(jet.g), jet.dg);
}

Christoffel christoffel_derivative(const MetricJet& jet) {
    const Mat4 ginv = invert_sym4(jet.g);
    const Mat4 dginv = -ginv * jet.dg * ginv;
    Christoffel a = gamma_bilinear(dginv, jet.dg);
    const Christoffel b = gamma_bilinear(ginv, jet.ddg);
    for (std::size_t i = 0; i < 4; ++i) a[i] += b[i];
    return a;
}

Mat4 ricci_from_christoffel(const Christoffel& gamma, const Christoffel& dgamma) {
    // R_jk = d_i G^i_jk - d_k G^i_ji + G^i_ip G^p_jk - G^i_kp G^p_ji,
    // and only d_0 survives.

    Eigen::Vector4d contracted;  // G^i_{ip}
    for (int p = 0; p < 4; ++p) {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) s += gamma[i](static_cast<int>(i), p);
        contracted(p) = s;
    }

    Mat4 r = dgamma[0];
    for (int j = 0; j < 4; ++j) {
        for (std::size_t i = 0; i < 4; ++i) r(j, 0) -= dgamma[i](j, static_cast<int>(i));
    }
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            double s = 0.0;
            for (int p = 0; p < 4; ++p) {
                s += contracted(p) * gamma[static_cast<std::size_t>(p)](j, k);
                for (int i = 0; i < 4; ++i) {
                    s -= gamma[static_cast<std::size_t>(i)](k, p) *
                         gamma[static_cast<std::size_t>(p)](j, i);
                }
            }
            r(j, k) += s;
        }
    }
    return r;
}

Mat4 ricci_general(const MetricJet& jet) {
    return ricci_from_christoffel(christoffel(jet), christoffel_derivative(jet));
}

Mat4 ricci_general_fd(const JetProvider& provider, double tau, const Stencil& stencil) {
    const auto packed = [&](double t) -> PackedGamma { return pack(christoffel(provider(t))); };
    const PackedGamma dgamma = central_diff(packed, tau, stencil, 1);
    return ricci_from_christoffel(christoffel(provider(tau)), unpack(dgamma));
}

Mat4 mixed_ricci(const Mat4& ricci, const Mat4& g) {
    return ricci * invert_sym4(g);
}

Mat3 kappa(const Mat3& g, const Mat3& dg) {
    return dg * g.inverse();
}

KappaRicci ricci_kappa(const SpatialJet& spatial, int epsilon, double ell, double dell) {
    if (epsilon != 1 && epsilon != -1) {
        throw InvalidArgument("curvature", "epsilon must be +1 or -1");
    }
    if (ell == 0.0 || !std::isfinite(ell)) {
        throw SingularVolumeError("ell vanishes; u^0(tau) is not a valid coordinate");
    }
    if (!(std::abs(relative_determinant(spatial.g)) > kDegeneracyThreshold)) {
        throw SingularVolumeError("spatial metric is degenerate");
    }

    const Mat3 ginv = spatial.g.inverse();
    const Mat3 k = spatial.dg * ginv;                                     // along tau
    const Mat3 dk = spatial.ddg * ginv - spatial.dg * ginv * spatial.dg * ginv;

    // Convert to u^0: d/du^0 = (1/ell) d/dtau.
    const Mat3 kt = k / ell;
    const Mat3 dkt = (dk / ell - k * (dell / (ell * ell))) / ell;
    // (1/l) dl/du^0 = tr(kappa~)/2 for the volume l = sqrt|det g|.
    const double dlog_volume = 0.5 * kt.trace();

    KappaRicci out;
    out.r00 = 0.25 * epsilon * (2.0 * dkt.trace() + (kt * kt).trace());
    out.spatial = 0.5 * epsilon * (dlog_volume * kt + dkt);
    return out;
}

KappaInput kappa_input(const MetricJet& jet) {
    const double cross =
        std::max(jet.g.block<1, 3>(0, 1).cwiseAbs().maxCoeff(),
                 jet.dg.block<1, 3>(0, 1).cwiseAbs().maxCoeff());
    if (cross > 1e-12 * std::max(1.0, jet.g.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("curvature", "kappa form needs g_0a = 0");
    }
    const double g00 = jet.g(0, 0);
    if (g00 == 0.0) throw SingularVolumeError("g_00 vanishes");

    KappaInput in;
    in.spatial.g = jet.g.block<3, 3>(1, 1);
    in.spatial.dg = jet.dg.block<3, 3>(1, 1);
    in.spatial.ddg = jet.ddg.block<3, 3>(1, 1);
    in.epsilon = g00 < 0.0 ? 1 : -1;
    in.ell = std::sqrt(std::abs(g00));
    in.dell = (g00 < 0.0 ? -1.0 : 1.0) * jet.dg(0, 0) / (2.0 * in.ell);
    return in;
}

double ricci_dual_path_deviation(const MetricJet& jet) {
    const Mat4 general = mixed_ricci(ricci_general(jet), jet.g);
    const KappaInput in = kappa_input(jet);
    const KappaRicci kr = ricci_kappa(in.spatial, in.epsilon, in.ell, in.dell);

    Mat4 kform = Mat4::Zero();
    kform(0, 0) = kr.r00;
    kform.block<3, 3>(1, 1) = kr.spatial;
    return (general - kform).cwiseAbs().maxCoeff();
}

ResidualReport einstein_residual(const JetProvider& provider, double lambda_cosmo,
                                 const TauGrid& grid, RicciPath path, const Stencil& stencil) {
    ResidualReport report;
    report.tau.reserve(grid.size());
    report.per_point_max.reserve(grid.size());

    for (double tau : grid) {
        try {
            const MetricJet jet = provider(tau);
            const Mat4 r = path == RicciPath::analytic ? ricci_general(jet)
                                                       : ricci_general_fd(provider, tau, stencil);
            const double dev = (r - lambda_cosmo * jet.g).cwiseAbs().maxCoeff();
            const double scalar = mixed_ricci(r, jet.g).trace();
            const double sdev = std::abs(scalar - 4.0 * lambda_cosmo);
            if (!std::isfinite(dev) || !std::isfinite(sdev)) {
                throw EvaluationError(tau, "non-finite curvature");
            }
            report.tau.push_back(tau);
            report.per_point_max.push_back(dev);
            report.scalar_dev.push_back(sdev);
            report.global_max = std::max(report.global_max, dev);
            report.ricci_scalar_dev = std::max(report.ricci_scalar_dev, sdev);
        } catch (const Error& e) {
            report.failures.push_back({tau, e.what()});
        }
    }

    if (10 * report.failures.size() > grid.size()) {
        std::ostringstream os;
        os << report.failures.size() << " of " << grid.size()
           << " grid points failed; first at tau = " << report.failures.front().tau << ": "
           << report.failures.front().message;
        throw Error("curvature", os.str());
    }
    return report;
}

}  // namespace stackel
