#pragma once

// Self-contained adaptive RK4 integrator for r' = a - b/r. This is the
// validation oracle for the closed form in flow.hpp and deliberately shares
// no code with it beyond the parameter/trajectory types.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "sphereflow/errors.hpp"
#include "sphereflow/flow.hpp"

namespace sphereflow {

struct IntegrationResult {
    RadiusTrajectory trajectory;       // one sample per accepted step
    std::optional<double> floor_crossing;  // time the radius floor was hit
};

/// Integrate r' = a - b/r from (0, r0) to t_end with step-doubling RK4.
///
/// Local error is kept below tol per unit time. Integration halts cleanly
/// when the radius drops to the floor 10*tol (shrinking runs); the floor
/// crossing time is reported in the result. If the adaptive step underflows
/// while the radius is still far from the floor, StiffnessError is thrown
/// with the state reached.
inline IntegrationResult reference_integrate(const FlowParams& params,
                                             double r0, double t_end,
                                             double tol) {
    detail::require_params(params, "reference_integrate");
    detail::require_radius(r0, "reference_integrate");
    if (!(std::isfinite(t_end) && t_end >= 0.0)) {
        throw DomainError("reference_integrate: t_end must be >= 0");
    }
    if (!(std::isfinite(tol) && tol > 0.0)) {
        throw DomainError("reference_integrate: tol must be > 0");
    }

    const double a = params.advection_rate;
    const double b = params.curvature_rate;
    const double floor_r = 10.0 * tol;

    // Leading-order time left until r reaches 0 from a small radius.
    const auto time_to_zero = [a, b](double r) {
        if (b > 0.0) return r * std::abs(r) / (2.0 * b);
        if (a < 0.0) return r / (-a);
        return 0.0;
    };

    const auto deriv = [a, b](double r) { return a - b / r; };
    // One classical RK4 step; flags failure if an internal stage leaves the
    // region where the right-hand side is well defined.
    const auto rk4 = [&](double r, double dt, bool& bad) {
        const auto guard = [&](double s) {
            if (b > 0.0 && s <= floor_r * 0.01) bad = true;
            return s;
        };
        const double k1 = deriv(r);
        const double r2 = guard(r + 0.5 * dt * k1);
        if (bad) return r;
        const double k2 = deriv(r2);
        const double r3 = guard(r + 0.5 * dt * k2);
        if (bad) return r;
        const double k3 = deriv(r3);
        const double r4 = guard(r + dt * k3);
        if (bad) return r;
        const double k4 = deriv(r4);
        return r + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    };

    IntegrationResult result;
    result.trajectory.samples.push_back({0.0, r0});
    if (r0 <= floor_r) {
        result.floor_crossing = 0.0;
        return result;
    }
    if (t_end == 0.0) return result;

    double t = 0.0;
    double r = r0;
    double dt = std::min(t_end, 0.01 * (1.0 + t_end));

    while (t < t_end) {
        dt = std::min(dt, t_end - t);
        bool bad = false;
        const double full = rk4(r, dt, bad);
        double fine = r;
        if (!bad) {
            fine = rk4(r, 0.5 * dt, bad);
            if (!bad) fine = rk4(fine, 0.5 * dt, bad);
        }
        const double err = std::abs(fine - full);
        // Roundoff floor: once the two solutions agree to machine precision
        // the step cannot be improved by shrinking dt further.
        const double noise =
            8.0 * std::numeric_limits<double>::epsilon() * std::abs(fine);

        if (!bad && (err <= tol * dt || err <= noise)) {
            r = fine + (fine - full) / 15.0;  // local extrapolation
            t += dt;
            if (r <= floor_r) {
                const double crossing =
                    std::max(0.0, t + time_to_zero(r));
                result.trajectory.samples.push_back({t, std::max(r, 0.0)});
                result.floor_crossing = crossing;
                return result;
            }
            result.trajectory.samples.push_back({t, r});
            double grow = 5.0;
            if (err > 0.0) {
                grow = std::min(5.0, 0.9 * std::pow(tol * dt / err, 0.25));
                grow = std::max(grow, 0.2);
            }
            dt *= grow;
        } else {
            double shrink = 0.5;
            if (!bad && err > 0.0) {
                shrink = std::min(
                    0.5, std::max(0.1, 0.9 * std::pow(tol * dt / err, 0.25)));
            }
            dt *= shrink;
            const double dt_min = 16.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(1.0, t);
            if (dt < dt_min) {
                // The sphere is collapsing faster than the step can resolve.
                if (r <= 1e4 * floor_r) {
                    const double crossing =
                        std::max(0.0, t + time_to_zero(r));
                    result.trajectory.samples.push_back({t, r});
                    result.floor_crossing = crossing;
                    return result;
                }
                throw StiffnessError(
                    "reference_integrate: step size underflow", t, r,
                    (b > 0.0 || a < 0.0)
                        ? std::optional<double>(t + time_to_zero(r))
                        : std::nullopt);
            }
        }
    }
    return result;
}

}  // namespace sphereflow
