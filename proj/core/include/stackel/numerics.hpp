// SPDX-License-Identifier: MIT
#pragma once

#include "stackel/errors.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace stackel {

inline constexpr double kDefaultExclusionMargin = 0.05;

/// Ordered sample of the evolution variable tau, kept clear of singular points.
class TauGrid {
public:
    TauGrid() = default;

    /// Throws InvalidArgument if points are not strictly increasing or if any
    /// point lies within `exclusion_margin` of a singular value.
    TauGrid(std::vector<double> points, double exclusion_margin,
            std::span<const double> singular = {});

    /// `n` equally spaced points on [a, b] (inclusive).
    static TauGrid uniform(double a, double b, std::size_t n,
                           std::span<const double> singular = {},
                           double exclusion_margin = kDefaultExclusionMargin);

    [[nodiscard]] const std::vector<double>& points() const noexcept { return points_; }
    [[nodiscard]] double exclusion_margin() const noexcept { return margin_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
    [[nodiscard]] auto begin() const noexcept { return points_.begin(); }
    [[nodiscard]] auto end() const noexcept { return points_.end(); }

private:
    std::vector<double> points_;
    double margin_ = kDefaultExclusionMargin;
};

/// Central-difference stencil with Richardson extrapolation over steps
/// h, 2h, ..., 2^levels h.
struct Stencil {
    double step = 1e-4;
    int richardson_levels = 2;

    void validate() const;
};

namespace detail {

inline bool all_finite(double v) { return std::isfinite(v); }

template <class Derived>
bool all_finite(const Eigen::DenseBase<Derived>& m) {
    return m.allFinite();
}

template <class T>
T eval_checked(auto& f, double tau) {
    T v = f(tau);
    if (!all_finite(v)) {
        std::ostringstream os;
        os << "non-finite function value at tau = " << tau;
        throw EvaluationError(tau, os.str());
    }
    return v;
}

}  // namespace detail

/// First (`order` = 1) or second (`order` = 2) derivative of `f` at `tau0`.
///
/// Works for scalar and Eigen-valued functions. Each extrapolation level
/// removes the next even power of h, so the truncation error is
/// O(h^(2*levels+2)) for smooth f.
template <class F>
auto central_diff(F&& f, double tau0, const Stencil& stencil, int order) {
    using T = std::decay_t<decltype(f(tau0))>;
    stencil.validate();
    if (order != 1 && order != 2) {
        throw InvalidArgument("numerics", "central_diff order must be 1 or 2");
    }

    const int levels = stencil.richardson_levels;
    std::vector<T> table;
    table.reserve(static_cast<std::size_t>(levels) + 1);

    T centre{};
    if (order == 2) centre = detail::eval_checked<T>(f, tau0);

    for (int j = 0; j <= levels; ++j) {
        const double h = stencil.step * std::ldexp(1.0, j);
        const T plus = detail::eval_checked<T>(f, tau0 + h);
        const T minus = detail::eval_checked<T>(f, tau0 - h);
        if (order == 1) {
            table.push_back(T((plus - minus) / (2.0 * h)));
        } else {
            table.push_back(T((plus - 2.0 * centre + minus) / (h * h)));
        }
    }

    // table[j] at level k combines steps 2^j h and 2^(j+1) h.
    for (int k = 1; k <= levels; ++k) {
        const double factor = std::ldexp(1.0, 2 * k) - 1.0;
        for (int j = 0; j + k <= levels; ++j) {
            table[j] = T(table[j] + (table[j] - table[j + 1]) / factor);
        }
    }
    return table.front();
}

template <class State>
struct Trajectory {
    std::vector<double> tau;
    std::vector<State> state;
};

/// Classic fixed-step fourth-order Runge-Kutta.
///
/// `field(tau, y)` returns dy/dtau. The span may run backwards (tb < ta).
template <class State, class Field>
Trajectory<State> rk4_integrate(Field&& field, const State& y0, double ta, double tb,
                                int steps) {
    if (steps < 10) {
        throw InvalidArgument("numerics", "rk4_integrate needs at least 10 steps");
    }
    if (!detail::all_finite(y0)) {
        throw IntegrationBlowup(ta, "non-finite initial state");
    }

    Trajectory<State> out;
    out.tau.reserve(static_cast<std::size_t>(steps) + 1);
    out.state.reserve(static_cast<std::size_t>(steps) + 1);

    const double dt = (tb - ta) / steps;
    State y = y0;
    out.tau.push_back(ta);
    out.state.push_back(y);

    for (int n = 0; n < steps; ++n) {
        const double t = ta + n * dt;
        const State k1 = field(t, y);
        const State k2 = field(t + 0.5 * dt, State(y + 0.5 * dt * k1));
        const State k3 = field(t + 0.5 * dt, State(y + 0.5 * dt * k2));
        const State k4 = field(t + dt, State(y + dt * k3));
        State next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!detail::all_finite(next)) {
            std::ostringstream os;
            os << "integration produced a non-finite state after tau = " << t;
            throw IntegrationBlowup(t, os.str());
        }
        y = std::move(next);
        out.tau.push_back(n + 1 == steps ? tb : ta + (n + 1) * dt);
        out.state.push_back(y);
    }
    return out;
}

/// Vector-state convenience overload.
Trajectory<Eigen::VectorXd> rk4_integrate(
    const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& y0, std::array<double, 2> span, int steps);

}  // namespace stackel
