// SPDX-License-Identifier: MIT
#pragma once

// The ten metric families, numbered 1-10 in the order they are listed in the
// source classification: variant A (1-3), variant B (4-7), variant C (8-10).

#include "stackel/assembly.hpp"

#include <map>
#include <string>
#include <vector>

namespace stackel {

struct ParamSlot {
    std::string name;
    double default_value = 0.0;
    std::string description;
};

struct FamilySpec {
    int id = 0;
    Variant variant = Variant::A;
    int epsilon = 0;             ///< resolved value, from epsilon_p of the canonical matrix
    int xi = 1;
    PhiBranch branch = PhiBranch::power;
    std::vector<ParamSlot> slots;
    bool free_e3 = true;         ///< false for variants B and C
    std::string constraint;      ///< admissibility predicate in words
    std::string printed_header;  ///< (epsilon, xi) as printed with the display
};

using ParamMap = std::map<std::string, double>;

const std::vector<FamilySpec>& families();

/// InvalidArgument for ids outside 1..10.
const FamilySpec& family_spec(int id);

/// Slot values with defaults filled in. InvalidArgument for unknown names.
ParamMap resolve_params(const FamilySpec& spec, const ParamMap& params);

/// Canonical parameters of a family. ConstraintError when the slot values
/// violate the family's (epsilon, p) relation.
CanonicalParams family_canonical_params(const FamilySpec& spec, const ParamMap& resolved);

/// Assembled metric of a family. The printed display is evaluated alongside
/// and attached as display_check(); a mismatch is recorded, never thrown.
AssembledMetric catalog(int id, const ParamMap& params = {}, double lambda = 0.0,
                        SignTriple signs = {});

/// Printed closed form of a family at tau. `compared` flags the entries the
/// display actually specifies (family 5 is printed with the du^1 term only).
struct PrintedMetric {
    Mat4 g = Mat4::Zero();
    Eigen::Matrix<bool, 4, 4> compared = Eigen::Matrix<bool, 4, 4>::Constant(true);
};

PrintedMetric printed_display(int id, const ParamMap& resolved, double p, double lambda,
                              SignTriple signs, double tau);

/// Relative entrywise comparison of the printed display with the assembled
/// metric over `grid`; consistent when every compared entry agrees to 1e-9.
DisplayComparison compare_display(const AssembledMetric& m, const ParamMap& resolved,
                                  double lambda, SignTriple signs, const TauGrid& grid);

}  // namespace stackel
