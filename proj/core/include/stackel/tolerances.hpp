// SPDX-License-Identifier: MIT
#pragma once

namespace stackel {

/// Every default numerical threshold used by verification checks lives here.
struct Tolerances {
    double analytic = 1e-7;          ///< residuals computed from analytic jets
    double finite_difference = 1e-4; ///< residuals computed by differencing Christoffels
    double phi_system = 1e-9;        ///< second-subsystem residuals
    double eta_system = 1e-8;        ///< first-subsystem residual, relative to |eta|
    double kappa = 1e-8;             ///< kappa = gamma' I + C deviation
    double integration = 1e-6;       ///< closed form vs RK4, relative to |eta|
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace stackel
