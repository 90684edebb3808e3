#pragma once

// Closed-form evolution of a sphere whose surface moves with outward normal
// speed a - b/r: advection at rate a combined with mean curvature flow at
// rate b (sphere mean curvature = 1/r).
//
// The radius obeys  r' = a - b/r, r(0) = r0,  whose solution is
//   b = 0:          r(t) = r0 + a t
//   a = 0, b > 0:   r(t) = sqrt(r0^2 - 2 b t)
//   a != 0, b > 0:  r(t) = (b/a) (W_k[ u e^u e^(a^2 t / b) ] + 1),
//                   u = (a r0 - b)/b,  W_{-1} for a < 0, W_0 for a > 0.

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "sphereflow/errors.hpp"
#include "sphereflow/lambert_w.hpp"

namespace sphereflow {

/// Flow law coefficients: outward normal speed is a - b*kappa.
struct FlowParams {
    double advection_rate = 0.0;  // a, distance/time; any real
    double curvature_rate = 0.0;  // b, distance^2/time; must be >= 0
};

enum class FlowRegime { ShrinkToZero, MetaStable, GrowUnbounded };

/// Vanishing time: time at which the radius reaches zero, or nullopt if the
/// sphere never vanishes.
using VanishingTime = std::optional<double>;

struct RadiusSample {
    double t;
    double r;
};

/// Ordered (t, r) samples of a sphere radius over time.
struct RadiusTrajectory {
    std::vector<RadiusSample> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    const RadiusSample& front() const { return samples.front(); }
    const RadiusSample& back() const { return samples.back(); }
};

namespace detail {

inline void require_params(const FlowParams& p, const char* what) {
    if (!std::isfinite(p.advection_rate) || !std::isfinite(p.curvature_rate)) {
        throw DomainError(std::string(what) + ": flow rates must be finite");
    }
    if (p.curvature_rate < 0.0) {
        throw DomainError(std::string(what) +
                          ": curvature rate must be >= 0");
    }
}

inline void require_radius(double r0, const char* what) {
    if (!(std::isfinite(r0) && r0 > 0.0)) {
        throw DomainError(std::string(what) + ": initial radius must be > 0");
    }
}

}  // namespace detail

/// Curvature value at which the flow is stationary: a/b. Requires b > 0.
inline double prescribed_curvature(const FlowParams& params) {
    detail::require_params(params, "prescribed_curvature");
    if (params.curvature_rate == 0.0) {
        throw DomainError("prescribed_curvature: undefined for b = 0");
    }
    return params.advection_rate / params.curvature_rate;
}

/// Long-time fate of a sphere of radius r0 under the flow.
///
/// The meta-stable comparison is exact floating-point equality of a*r0 and
/// b, matching the condition under which the closed form is constant.
inline FlowRegime classify_regime(const FlowParams& params, double r0) {
    detail::require_params(params, "classify_regime");
    detail::require_radius(r0, "classify_regime");
    const double a = params.advection_rate;
    const double b = params.curvature_rate;
    if (a == 0.0 && b == 0.0) return FlowRegime::MetaStable;  // static flow
    if (a <= 0.0) return FlowRegime::ShrinkToZero;
    const double ar0 = a * r0;
    if (ar0 == b) return FlowRegime::MetaStable;
    return ar0 < b ? FlowRegime::ShrinkToZero : FlowRegime::GrowUnbounded;
}

/// Time at which the radius reaches zero, or nullopt if it never does.
inline VanishingTime vanishing_time(const FlowParams& params, double r0) {
    detail::require_params(params, "vanishing_time");
    detail::require_radius(r0, "vanishing_time");
    const double a = params.advection_rate;
    const double b = params.curvature_rate;
    if (a == 0.0 && b == 0.0) {
        throw DomainError("vanishing_time: undefined for the static flow");
    }
    if (b == 0.0) {
        if (a < 0.0) return -r0 / a;
        return std::nullopt;
    }
    if (a == 0.0) return r0 * r0 / (2.0 * b);
    if (!(a * r0 < b)) return std::nullopt;  // includes the balance point
    return (b / (a * a)) * std::log(b / (b - a * r0)) - r0 / a;
}

/// Radius at time t. Throws VanishedError for t past the vanishing time.
inline double radius_at(const FlowParams& params, double r0, double t) {
    detail::require_params(params, "radius_at");
    detail::require_radius(r0, "radius_at");
    if (!(std::isfinite(t) && t >= 0.0)) {
        throw DomainError("radius_at: time must be finite and >= 0");
    }
    const double a = params.advection_rate;
    const double b = params.curvature_rate;

    if (b == 0.0) {
        const double r = r0 + a * t;
        if (r < 0.0) {
            throw VanishedError("radius_at: sphere vanished", -r0 / a);
        }
        return r;
    }
    if (a == 0.0) {
        const double s = r0 * r0 - 2.0 * b * t;
        if (s < 0.0) {
            throw VanishedError("radius_at: sphere vanished",
                                r0 * r0 / (2.0 * b));
        }
        return std::sqrt(s);
    }

    const double u = (a * r0 - b) / b;
    if (u == 0.0) return b / a;  // balance radius: constant for all t

    const double y = a * a * t / b;
    double w;
    if (u > 0.0) {
        // Growth: argument is positive and increases without bound.
        const double log_arg = std::log(u) + u + y;
        if (log_arg > 700.0) {
            w = lambert_w0_exp(log_arg);
        } else {
            const double arg =
                (u + y > 709.0) ? std::exp(log_arg) : u * std::exp(u + y);
            w = lambert_w(LambertBranch::Principal, arg);
        }
    } else {
        // Shrinkage: the W argument runs from u e^u down to -1/e at vanish.
        const bool secondary = a < 0.0;  // u < -1 exactly when a < 0
        if (secondary) {
            const double log_abs = std::log(-u) + u + y;
            if (log_abs < -700.0) {
                // |argument| below double range; solve in log space.
                w = lambert_wm1_neg_exp(log_abs);
                const double r = (b / a) * (w + 1.0);
                return r < 0.0 ? 0.0 : r;
            }
        }
        // Distance of the argument from the branch point, cancellation-free:
        // e * (u e^{u+y}) + 1 = c e^s - expm1(s) with c = u + 1, s = c + y.
        const double c = a * r0 / b;
        const double s = c + y;
        const double q_half =
            (s > 710.0) ? -std::numeric_limits<double>::infinity()
                        : c * std::exp(s) - std::expm1(s);
        if (q_half <= 1e-3) {
            // |W + 1| <= 0.05: branch-point regime (or already vanished).
            if (q_half < -detail::euler_e() * 1e-12) {
                throw VanishedError("radius_at: sphere vanished",
                                    vanishing_time(params, r0).value());
            }
            if (q_half <= 0.0) return 0.0;  // at vanish, up to rounding
            const double p = std::sqrt(2.0 * q_half);
            const double wp1 =
                detail::branch_point_series_p1(secondary ? -p : p);
            const double r = (b / a) * wp1;
            return r < 0.0 ? 0.0 : r;
        }
        const double arg = u * std::exp(u + y);
        w = lambert_w(secondary ? LambertBranch::Secondary
                                : LambertBranch::Principal,
                      arg);
    }
    const double r = (b / a) * (w + 1.0);
    return r < 0.0 ? 0.0 : r;
}

/// Sample the closed form at the requested times. Times must be strictly
/// increasing with times[0] == 0. Samples at or past the vanishing time
/// carry r = 0.
inline RadiusTrajectory evolve_trajectory(const FlowParams& params, double r0,
                                          std::span<const double> times) {
    detail::require_params(params, "evolve_trajectory");
    detail::require_radius(r0, "evolve_trajectory");
    if (times.empty() || times[0] != 0.0) {
        throw DomainError("evolve_trajectory: times must start at 0");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) ||
            (i > 0 && !(times[i] > times[i - 1]))) {
            throw DomainError(
                "evolve_trajectory: times must be finite and strictly "
                "increasing");
        }
    }

    VanishingTime tv;
    if (!(params.advection_rate == 0.0 && params.curvature_rate == 0.0)) {
        tv = vanishing_time(params, r0);
    }

    RadiusTrajectory out;
    out.samples.reserve(times.size());
    out.samples.push_back({0.0, r0});
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double t = times[i];
        double r = 0.0;
        if (!tv || t < *tv) {
            try {
                r = radius_at(params, r0, t);
            } catch (const VanishedError&) {
                r = 0.0;
            }
        }
        out.samples.push_back({t, r});
    }
    return out;
}

}  // namespace sphereflow
