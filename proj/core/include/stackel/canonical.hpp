// SPDX-License-Identifier: MIT
#pragma once

// Reduction of the constant structure matrix C to canonical form under the
// admissible linear changes of the spatial coordinates.
//
// C uses the lower-row layout of curvature.hpp: kappa = gamma' I + C, and the
// reduced spatial metric obeys eta' = C eta (a symmetric matrix for solutions).
// An admissible transform S acts by similarity, C -> S C S^{-1}, and maps a
// solution eta of the transformed system back through eta = S^{-1} eta_S S^{-T}.

#include "stackel/curvature.hpp"

#include <array>
#include <complex>
#include <string>
#include <variant>

namespace stackel {

/// Strong type for the 3x3 first-integral matrix.
class StructureMatrix {
public:
    StructureMatrix() = default;
    explicit StructureMatrix(const Mat3& c);

    [[nodiscard]] const Mat3& matrix() const noexcept { return c_; }
    [[nodiscard]] double trace() const { return c_.trace(); }
    [[nodiscard]] double trace_of_square() const { return (c_ * c_).trace(); }

    /// True when some symmetric nondegenerate eta0 makes C eta0 symmetric,
    /// i.e. eta' = C eta admits a symmetric nondegenerate solution.
    [[nodiscard]] bool admits_symmetric_solution() const;

private:
    Mat3 c_ = Mat3::Zero();
};

enum class Variant { A, B, C };

[[nodiscard]] std::string to_string(Variant v);

/// Variant A: diagonal (a1, a2, a3), a2 >= a3.
struct DiagonalParams {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

/// Variant B: C_11 = c + r cos(angle), 2x2 block
///   r [[cos a, s sin a], [-s sin a, cos a]]
/// with angle a in (0, pi), modulus r > 0 and rotation sense s = +/-1.
/// Eigenvalues of the block are r e^{+/- i a}; classify() always returns s = +1.
struct RotationParams {
    double c = 0.0;
    double angle = 0.0;
    double modulus = 1.0;
    int sense = 1;
};

/// Variant C: C_11 = c1, 2x2 Jordan block [[a, coupling], [0, a]], coupling != 0.
/// classify() normalises the coupling to 1.
struct JordanParams {
    double c1 = 0.0;
    double a = 0.0;
    double coupling = 1.0;
};

using CanonicalParams = std::variant<DiagonalParams, RotationParams, JordanParams>;

[[nodiscard]] Variant variant_of(const CanonicalParams& params);

/// The canonical matrix pattern described by `params`.
[[nodiscard]] Mat3 canonical_matrix(const CanonicalParams& params);

struct CanonicalClass {
    Variant variant = Variant::A;
    CanonicalParams params;
    Mat3 transform = Mat3::Identity();  ///< S with S C S^{-1} = canonical_matrix(params)
    Mat3 original = Mat3::Zero();       ///< the C that was classified
    double trace = 0.0;
    int epsilon = 0;
    double p = 0.0;

    [[nodiscard]] Mat3 canonical() const { return canonical_matrix(params); }
};

/// Relative tolerance for discriminant and rank decisions.
inline constexpr double kClassifyTolerance = 1e-9;

/// S C S^{-1}. InvalidTransformError when S is singular.
StructureMatrix admissible_transform(const StructureMatrix& c, const Mat3& s);

struct SplitResult {
    Mat3 transform = Mat3::Identity();  ///< S1
    Mat3 reduced = Mat3::Zero();        ///< S1 C S1^{-1}; row/column 1 off-diagonals vanish
};

/// Moves a real eigendirection with an invariant complement into slot 1.
/// NotSplittableError for a single 3x3 Jordan block.
SplitResult split_direction(const StructureMatrix& c);

/// Full classification into variant A, B or C with canonical parameters.
CanonicalClass classify(const StructureMatrix& c);

/// Eigenvalues of a 3x3 matrix from its characteristic cubic (closed form
/// plus one Newton polish of each real root). Real roots come first, sorted
/// in descending order; a complex pair is returned with positive imaginary
/// part first.
std::array<std::complex<double>, 3> cubic_eigenvalues(const Mat3& c);

}  // namespace stackel
