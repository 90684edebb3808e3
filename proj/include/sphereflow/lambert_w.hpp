#pragma once

// Real-valued Lambert W: the inverse of w -> w * exp(w).
//
// Two real branches exist:
//   Principal (k = 0):  w >= -1, defined for z >= -1/e
//   Secondary (k = -1): w <= -1, defined for -1/e <= z < 0
//
// Evaluation uses a branch-point series for arguments near -1/e (where the
// derivative of w*e^w vanishes and iterations stall) and Halley iteration
// elsewhere, seeded per region. Arguments whose magnitude would overflow or
// underflow double range are supported through the log-argument entry points
// lambert_w0_exp / lambert_wm1_neg_exp.

#include <cmath>
#include <limits>

#include "sphereflow/errors.hpp"

namespace sphereflow {

enum class LambertBranch { Principal, Secondary };

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline double euler_e() { return std::exp(1.0); }
inline double inv_e() { return std::exp(-1.0); }

// W + 1 = p - p^2/3 + 11 p^3/72 - ..., p = +-sqrt(2 (e z + 1)).
// Truncation error is below 1e-14 for |p| <= 0.05. Returning W + 1 lets
// callers that need the offset from -1 avoid re-cancelling it.
inline double branch_point_series_p1(double p) {
    constexpr double c2 = -1.0 / 3.0;
    constexpr double c3 = 11.0 / 72.0;
    constexpr double c4 = -43.0 / 540.0;
    constexpr double c5 = 769.0 / 17280.0;
    constexpr double c6 = -221.0 / 8505.0;
    constexpr double c7 = 680863.0 / 43545600.0;
    constexpr double c8 = -1963.0 / 204120.0;
    return p * (1.0 +
                p * (c2 +
                     p * (c3 +
                          p * (c4 + p * (c5 + p * (c6 + p * (c7 + p * c8)))))));
}

inline double branch_point_series(double p) {
    return -1.0 + branch_point_series_p1(p);
}

// Halley iteration on f(w) = w e^w - z. Runs to step convergence; the
// residual contract is re-checked by the caller.
inline double halley(double z, double w) {
    double prev_step = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        if (f == 0.0) break;
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        double dw = f / denom;
        if (!std::isfinite(dw)) {
            dw = f / (ew * wp1);  // plain Newton fallback
            if (!std::isfinite(dw)) break;
        }
        w -= dw;
        const double step = std::abs(dw);
        if (step <= 2.0 * kEps * std::abs(w)) break;
        if (i > 2 && step >= prev_step) break;  // rounding noise floor
        prev_step = step;
    }
    return w;
}

inline void check_residual(double z, double w, const char* what) {
    const double resid = std::abs(w * std::exp(w) - z);
    if (!(resid <= 1e-12 * std::max(1.0, std::abs(z)))) {
        throw ConvergenceError(std::string(what) +
                               ": residual tolerance not reached");
    }
}

// Solve w + ln(w) = y for w > 0 (the log form of W0(e^y)).
inline double log_form_principal(double y) {
    const double l2 = std::log(y);
    double w = y - l2 + l2 / y;
    for (int i = 0; i < 60; ++i) {
        const double g = w + std::log(w) - y;
        if (g == 0.0) break;
        const double dw = g * w / (w + 1.0);
        w -= dw;
        if (std::abs(dw) <= 2.0 * kEps * std::abs(w)) break;
    }
    return w;
}

// Solve w + ln(-w) = l for w < -1 (the log form of W_{-1}(-e^l)).
inline double log_form_secondary(double l) {
    double w = l - std::log(-l);
    for (int i = 0; i < 60; ++i) {
        const double g = w + std::log(-w) - l;
        if (g == 0.0) break;
        const double dw = g * w / (w + 1.0);
        w -= dw;
        if (std::abs(dw) <= 2.0 * kEps * std::abs(w)) break;
    }
    return w;
}

}  // namespace detail

/// Lambert W on the requested real branch.
///
/// Satisfies |w * exp(w) - z| <= 1e-12 * max(1, |z|). Throws DomainError for
/// z outside the branch domain, NonFiniteInput for NaN/infinite z, and
/// ConvergenceError if the tolerance cannot be met (not observed in practice).
inline double lambert_w(LambertBranch branch, double z) {
    if (!std::isfinite(z)) {
        throw NonFiniteInput("lambert_w: argument must be finite");
    }
    const double q = 2.0 * (detail::euler_e() * z + 1.0);  // 0 at z = -1/e

    if (branch == LambertBranch::Principal) {
        if (z == 0.0) return 0.0;
        if (q <= 0.0) {
            if (q > -1e-14) return -1.0;  // branch point up to rounding
            throw DomainError("lambert_w: z < -1/e has no real solution");
        }
        const double p = std::sqrt(q);
        if (p < 0.05) return detail::branch_point_series(p);

        double w;
        if (z < -0.25) {
            w = detail::branch_point_series(p);
        } else if (z < 0.25) {
            w = z * (1.0 + z * (-1.0 + z * (1.5 - z * (8.0 / 3.0))));
        } else if (z < 3.0) {
            w = std::log1p(z);
        } else if (z < 1e50) {
            const double l1 = std::log(z);
            const double l2 = std::log(l1);
            w = l1 - l2 + l2 / l1;
        } else {
            w = detail::log_form_principal(std::log(z));
            detail::check_residual(z, w, "lambert_w[0]");
            return w;
        }
        w = detail::halley(z, w);
        detail::check_residual(z, w, "lambert_w[0]");
        return w;
    }

    // Secondary branch: -1/e <= z < 0.
    if (!(z < 0.0)) {
        throw DomainError("lambert_w: secondary branch needs z < 0");
    }
    if (q <= 0.0) {
        if (q > -1e-14) return -1.0;
        throw DomainError("lambert_w: z < -1/e has no real solution");
    }
    const double p = -std::sqrt(q);
    if (p > -0.05) return detail::branch_point_series(p);

    double w;
    if (z < -0.27) {
        w = detail::branch_point_series(p);
    } else {
        const double l1 = std::log(-z);
        if (l1 < -700.0) {
            // w e^w underflows; solve in log space instead.
            w = detail::log_form_secondary(l1);
            detail::check_residual(z, w, "lambert_w[-1]");
            return w;
        }
        const double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    w = detail::halley(z, w);
    detail::check_residual(z, w, "lambert_w[-1]");
    return w;
}

/// W0(exp(y)) evaluated without forming exp(y); usable when exp(y) would
/// overflow. Requires y >= 1.
inline double lambert_w0_exp(double y) {
    if (!std::isfinite(y)) {
        throw NonFiniteInput("lambert_w0_exp: argument must be finite");
    }
    if (y < 1.0) {
        throw DomainError("lambert_w0_exp: requires y >= 1");
    }
    if (y < 700.0) return lambert_w(LambertBranch::Principal, std::exp(y));
    return detail::log_form_principal(y);
}

/// W_{-1}(-exp(l)) evaluated without forming exp(l); usable when exp(l)
/// would underflow. Requires l <= -1 (argument within the branch domain).
inline double lambert_wm1_neg_exp(double l) {
    if (!std::isfinite(l)) {
        throw NonFiniteInput("lambert_wm1_neg_exp: argument must be finite");
    }
    if (l > -1.0) {
        throw DomainError("lambert_wm1_neg_exp: requires l <= -1");
    }
    if (l > -700.0) return lambert_w(LambertBranch::Secondary, -std::exp(l));
    return detail::log_form_secondary(l);
}

}  // namespace sphereflow
