// SPDX-License-Identifier: MIT
#include "stackel/canonical.hpp"

#include "stackel/solutions.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace stackel {

namespace {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

double scale_of(const Mat3& c) {
    return c.cwiseAbs().maxCoeff();
}

// First nonzero component positive, unit length.
template <class V>
V normalise_sign(V v) {
    v.normalize();
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-14) {
            if (v(i) < 0.0) v = -v;
            break;
        }
    }
    return v;
}

// Null vector of a rank-2 matrix: the largest cross product of two rows.
Vec3 null_vector(const Mat3& m) {
    const Vec3 r0 = m.row(0).transpose();
    const Vec3 r1 = m.row(1).transpose();
    const Vec3 r2 = m.row(2).transpose();
    const std::array<Vec3, 3> candidates{r0.cross(r1), r0.cross(r2), r1.cross(r2)};
    const auto best = std::max_element(candidates.begin(), candidates.end(),
                                       [](const Vec3& a, const Vec3& b) {
                                           return a.squaredNorm() < b.squaredNorm();
                                       });
    return normalise_sign(*best);
}

double max_minor2(const Mat3& m) {
    double best = 0.0;
    for (int r0 = 0; r0 < 3; ++r0)
        for (int r1 = r0 + 1; r1 < 3; ++r1)
            for (int c0 = 0; c0 < 3; ++c0)
                for (int c1 = c0 + 1; c1 < 3; ++c1)
                    best = std::max(best, std::abs(m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)));
    return best;
}

bool has_split_form(const Mat3& c, double tol) {
    return std::abs(c(0, 1)) <= tol && std::abs(c(0, 2)) <= tol && std::abs(c(1, 0)) <= tol &&
           std::abs(c(2, 0)) <= tol;
}

// Triple eigenvalue: the deviator N = C - tr(C)/3 has vanishing invariants.
bool is_triple(const Mat3& c, double s) {
    const Mat3 n = c - (c.trace() / 3.0) * Mat3::Identity();
    return std::abs((n * n).trace()) <= kClassifyTolerance * s * s &&
           std::abs(n.determinant()) <= kClassifyTolerance * s * s * s;
}

struct BlockForm {
    CanonicalParams params;
    Mat2 basis;  // columns span the block's canonical basis
};

// Canonical form of the 2x2 block left after splitting off slot 1 with eigenvalue mu1.
BlockForm reduce_block(const Mat2& b, double mu1, double s) {
    const double t = b.trace();
    const double det = b.determinant();
    const double disc = t * t - 4.0 * det;
    const double tol = kClassifyTolerance * std::max(b.squaredNorm(), 1e-300);
    const double half = 0.5 * t;

    BlockForm out;
    if (disc > tol) {
        const double root = std::sqrt(disc);
        const std::array<double, 2> eig{half + 0.5 * root, half - 0.5 * root};
        for (int k = 0; k < 2; ++k) {
            const double m = eig[static_cast<std::size_t>(k)];
            const Vec2 u(b(0, 1), m - b(0, 0));
            const Vec2 w(m - b(1, 1), b(1, 0));
            out.basis.col(k) = normalise_sign(u.squaredNorm() >= w.squaredNorm() ? u : w);
        }
        out.params = DiagonalParams{mu1, eig[0], eig[1]};
        return out;
    }
    if (disc < -tol) {
        // Eigenvector z of alpha + i beta (beta > 0); in the basis (Re z, Im z)
        // the block reads [[alpha, beta], [-beta, alpha]].
        const double beta = 0.5 * std::sqrt(-disc);
        const std::complex<double> lam(half, beta);
        const Eigen::Vector2cd u(b(0, 1), lam - b(0, 0));
        const Eigen::Vector2cd w(lam - b(1, 1), b(1, 0));
        const Eigen::Vector2cd z = u.squaredNorm() >= w.squaredNorm() ? u : w;
        out.basis.col(0) = z.real();
        out.basis.col(1) = z.imag();
        const double r = std::hypot(half, beta);
        const double angle = std::atan2(beta, half);
        out.params = RotationParams{mu1 - r * std::cos(angle), angle, r, 1};
        return out;
    }

    const Mat2 n = b - half * Mat2::Identity();
    if (n.cwiseAbs().maxCoeff() <= kClassifyTolerance * s) {
        out.basis = Mat2::Identity();
        out.params = DiagonalParams{mu1, half, half};
        return out;
    }
    // Defective: w3 = column with the largest image, w2 = N w3.
    const int j = n.col(0).squaredNorm() >= n.col(1).squaredNorm() ? 0 : 1;
    const Vec2 w3 = Vec2::Unit(j);
    out.basis.col(0) = n * w3;
    out.basis.col(1) = w3;
    out.params = JordanParams{mu1, half, 1.0};
    return out;
}

}  // namespace

StructureMatrix::StructureMatrix(const Mat3& c) : c_(c) {
    if (!c.allFinite()) {
        throw InvalidArgument("canonical", "structure matrix has non-finite entries");
    }
}

bool StructureMatrix::admits_symmetric_solution() const {
    // Unknowns: the six entries of a symmetric eta; equations: C eta - eta C^T = 0
    // (antisymmetric, three independent components).
    static constexpr std::array<std::array<int, 2>, 6> slots{
        {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
    const auto basis = [](std::size_t k) {
        Mat3 e = Mat3::Zero();
        const auto [i, j] = slots[k];
        e(i, j) = 1.0;
        e(j, i) = 1.0;
        return e;
    };
    Eigen::Matrix<double, 3, 6> a;
    for (std::size_t k = 0; k < 6; ++k) {
        const Mat3 e = basis(k);
        const Mat3 comm = c_ * e - e * c_.transpose();
        a(0, static_cast<int>(k)) = comm(0, 1);
        a(1, static_cast<int>(k)) = comm(0, 2);
        a(2, static_cast<int>(k)) = comm(1, 2);
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 3, 6>> lu(a);
    lu.setThreshold(1e-10);
    const Eigen::MatrixXd kernel = lu.kernel();

    // det is a cubic form on the kernel; a few fixed combinations suffice to
    // detect that it is not identically zero.
    static constexpr std::array<std::array<double, 3>, 4> weights{
        {{1.0, 0.0, 0.0}, {1.0, 0.37, -0.81}, {0.29, 1.0, 0.53}, {-0.61, 0.44, 1.0}}};
    for (const auto& wt : weights) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
        for (int col = 0; col < kernel.cols(); ++col) {
            x += wt[static_cast<std::size_t>(col % 3)] * (1.0 + 0.1 * col) * kernel.col(col);
        }
        Mat3 eta = Mat3::Zero();
        for (std::size_t k = 0; k < 6; ++k) eta += x(static_cast<int>(k)) * basis(k);
        const double sc = eta.cwiseAbs().maxCoeff();
        if (sc > 0.0 && std::abs(eta.determinant()) > 1e-10 * sc * sc * sc) return true;
    }
    return false;
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::A: return "A";
        case Variant::B: return "B";
        case Variant::C: return "C";
    }
    return "?";
}

Variant variant_of(const CanonicalParams& params) {
    return static_cast<Variant>(params.index());
}

Mat3 canonical_matrix(const CanonicalParams& params) {
    Mat3 k = Mat3::Zero();
    std::visit(
        [&k](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, DiagonalParams>) {
                k.diagonal() << p.a1, p.a2, p.a3;
            } else if constexpr (std::is_same_v<P, RotationParams>) {
                const double cs = p.modulus * std::cos(p.angle);
                const double sn = p.modulus * std::sin(p.angle) * p.sense;
                k(0, 0) = p.c + cs;
                k(1, 1) = cs;
                k(2, 2) = cs;
                k(1, 2) = sn;
                k(2, 1) = -sn;
            } else {
                k(0, 0) = p.c1;
                k(1, 1) = p.a;
                k(2, 2) = p.a;
                k(1, 2) = p.coupling;
            }
        },
        params);
    return k;
}

StructureMatrix admissible_transform(const StructureMatrix& c, const Mat3& s) {
    const double sc = s.cwiseAbs().maxCoeff();
    const double det = s.determinant();
    if (!std::isfinite(det) || !(std::abs(det) > 1e-12 * sc * sc * sc)) {
        std::ostringstream os;
        os << "admissible transform must be invertible, det S = " << det;
        throw InvalidTransformError(os.str());
    }
    return StructureMatrix(s * c.matrix() * s.inverse());
}

std::array<std::complex<double>, 3> cubic_eigenvalues(const Mat3& c) {
    // Depressed form x^3 + P x + Q for the deviator N = C - m I.
    const double m = c.trace() / 3.0;
    const Mat3 n = c - m * Mat3::Identity();
    const double p = -0.5 * (n * n).trace();
    const double q = -n.determinant();

    const auto polish = [p, q](double x) {
        const double f = (x * x + p) * x + q;
        const double df = 3.0 * x * x + p;
        if (std::abs(df) > 1e-300) {
            const double next = x - f / df;
            if (std::isfinite(next) && std::abs((next * next + p) * next + q) <= std::abs(f)) {
                return next;
            }
        }
        return x;
    };

    std::array<std::complex<double>, 3> out;
    const double delta = 0.25 * q * q + p * p * p / 27.0;
    if (p == 0.0 && q == 0.0) {
        out = {m, m, m};
    } else if (delta <= 0.0) {
        // Three real roots, trigonometric form (p < 0 here).
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        std::array<double, 3> x{};
        for (int k = 0; k < 3; ++k) {
            x[static_cast<std::size_t>(k)] =
                polish(r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0));
        }
        std::sort(x.begin(), x.end(), std::greater<>());
        out = {x[0] + m, x[1] + m, x[2] + m};
    } else {
        const double sq = std::sqrt(delta);
        const double x1 = polish(std::cbrt(-0.5 * q + sq) + std::cbrt(-0.5 * q - sq));
        // x^3 + P x + Q = (x - x1)(x^2 + x1 x + P + x1^2)
        const double re = -0.5 * x1;
        const double rad = p + 0.75 * x1 * x1;
        if (rad > 0.0) {
            const double im = std::sqrt(rad);
            out = {std::complex<double>(x1 + m, 0.0), std::complex<double>(re + m, im),
                   std::complex<double>(re + m, -im)};
        } else {
            const double d = std::sqrt(-rad);
            std::array<double, 3> x{x1, re + d, re - d};
            std::sort(x.begin(), x.end(), std::greater<>());
            out = {x[0] + m, x[1] + m, x[2] + m};
        }
    }
    return out;
}

SplitResult split_direction(const StructureMatrix& cm) {
    const Mat3& c = cm.matrix();
    const double s = scale_of(c);
    SplitResult out;
    if (s == 0.0 || has_split_form(c, 1e-14 * s)) {
        out.reduced = c;
        return out;
    }

    Mat3 basis;  // columns: slot-1 eigenvector, then two vectors spanning the complement
    bool have_basis = false;
    if (is_triple(c, s)) {
        const double m = c.trace() / 3.0;
        const Mat3 n = c - m * Mat3::Identity();
        if (n.cwiseAbs().maxCoeff() <= kClassifyTolerance * s) {
            out.reduced = c;
            return out;
        }
        if (max_minor2(n) > kClassifyTolerance * s * s) {
            throw NotSplittableError(
                "structure matrix is a single 3x3 Jordan block; no invariant "
                "eigendirection has an invariant complement");
        }
        // Rank one part N = u w^T. Nilpotent (w.u = 0) means a 2+1 Jordan structure.
        Eigen::Index i = 0;
        Eigen::Index j = 0;
        n.cwiseAbs().maxCoeff(&i, &j);
        const Vec3 u = n.col(j);
        const Vec3 w = n.row(i).transpose() / n(i, j);
        if (std::abs(w.dot(u)) <= 1e-6 * w.norm() * u.norm()) {
            basis.col(0) = normalise_sign(Vec3(w.cross(u)));
            basis.col(1) = u;
            basis.col(2) = w / w.squaredNorm();
            have_basis = true;
        }
    }
    if (!have_basis) {
        const auto eig = cubic_eigenvalues(c);
        double mu1 = eig[0].real();
        if (std::abs(eig[1].imag()) == 0.0) {
            // Three real roots. Prefer the largest unless it sits in a cluster,
            // in which case the isolated root takes slot 1.
            const double g01 = eig[0].real() - eig[1].real();
            const double g12 = eig[1].real() - eig[2].real();
            if (g01 <= 1e-4 * s && g01 < g12) mu1 = eig[2].real();
        }
        const Mat3 shifted = c - mu1 * Mat3::Identity();
        const Vec3 v1 = null_vector(shifted);
        const Vec3 y = null_vector(shifted.transpose());
        if (std::abs(y.dot(v1)) <= 1e-8) {
            throw NotSplittableError(
                "eigendirection lies inside its own left-annihilated plane; no invariant complement");
        }
        // Orthonormal basis of the plane y^T x = 0, which C leaves invariant.
        Eigen::Index k = 0;
        y.cwiseAbs().minCoeff(&k);
        Vec3 w2 = Vec3::Unit(k) - y(k) * y;
        w2.normalize();
        const Vec3 w3 = y.cross(w2);
        basis.col(0) = v1;
        basis.col(1) = w2;
        basis.col(2) = w3;
    }

    out.transform = basis.inverse();
    out.reduced = out.transform * c * basis;
    return out;
}

CanonicalClass classify(const StructureMatrix& cm) {
    const Mat3& c = cm.matrix();
    const double s = std::max(scale_of(c), 1e-300);
    const SplitResult split = split_direction(cm);

    const double mu1 = split.reduced(0, 0);
    const Mat2 block = split.reduced.block<2, 2>(1, 1);
    BlockForm form = reduce_block(block, mu1, s);

    Mat3 q = Mat3::Identity();
    q.block<2, 2>(1, 1) = form.basis;
    Mat3 basis = split.transform.inverse() * q;

    if (auto* diag = std::get_if<DiagonalParams>(&form.params)) {
        // Descending order of eigenvalues, ties keep the current slot.
        std::array<double, 3> ev{diag->a1, diag->a2, diag->a3};
        std::array<int, 3> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(), [&ev](int a, int b) {
            return ev[static_cast<std::size_t>(a)] > ev[static_cast<std::size_t>(b)];
        });
        Mat3 permuted;
        for (int k = 0; k < 3; ++k) {
            permuted.col(k) = normalise_sign(Vec3(basis.col(order[static_cast<std::size_t>(k)])));
        }
        basis = permuted;
        *diag = DiagonalParams{ev[static_cast<std::size_t>(order[0])],
                               ev[static_cast<std::size_t>(order[1])],
                               ev[static_cast<std::size_t>(order[2])]};
    }

    CanonicalClass out;
    out.variant = variant_of(form.params);
    out.params = form.params;
    out.transform = basis.inverse();
    out.original = c;
    out.trace = c.trace();
    const EpsilonP ep = epsilon_p(c);
    out.epsilon = ep.epsilon;
    out.p = ep.p;
    return out;
}

}  // namespace stackel
