// SPDX-License-Identifier: MIT
#pragma once

// Places where the printed closed forms of the classification disagree with
// what the equations themselves require, each with the numerical evidence
// that settles it. Evidence is recomputed on every call.

#include <string>
#include <vector>

namespace stackel {

struct Discrepancy {
    std::string id;          ///< stable key, e.g. "eta11-exponent"
    std::string location;    ///< where the printed form appears
    std::string printed;     ///< what is printed
    std::string resolution;  ///< what the library uses instead
    std::string evidence;    ///< oracle used and its outcome
    double printed_residual = 0.0;   ///< oracle residual of the printed form
    double resolved_residual = 0.0;  ///< oracle residual of the resolution
    bool confirmed = false;          ///< true when the printed form passes its oracle
};

std::vector<Discrepancy> discrepancy_ledger();

}  // namespace stackel
