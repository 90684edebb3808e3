#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "sphereflow/lambert_w.hpp"

using namespace sphereflow;

namespace {

// Independent oracle: bisection on w * e^w = z over a bracketing interval.
// Used to pin expected values; never calls the implementation under test.
double bisect_w(double z, double lo, double hi) {
    auto f = [z](double w) { return w * std::exp(w) - z; };
    double flo = f(lo);
    REQUIRE(flo * f(hi) <= 0.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(hi - lo) < 1e-15 * std::max(1.0, std::abs(mid))) break;
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double residual(double w, double z) { return std::abs(w * std::exp(w) - z); }

}  // namespace

TEST_CASE("principal branch special values") {
    CHECK(lambert_w(LambertBranch::Principal, 0.0) == 0.0);
    CHECK(lambert_w(LambertBranch::Principal, std::exp(1.0)) ==
          Catch::Approx(1.0).epsilon(1e-14));
    // branch point: both branches meet at -1
    const double zbp = -std::exp(-1.0);
    CHECK(std::abs(lambert_w(LambertBranch::Principal, zbp) + 1.0) <= 1e-8);
    CHECK(std::abs(lambert_w(LambertBranch::Secondary, zbp) + 1.0) <= 1e-8);
}

TEST_CASE("values pinned by the bisection oracle") {
    // Omega constant: W0(1)
    const double omega = bisect_w(1.0, 0.0, 1.0);
    CHECK(omega == Catch::Approx(0.56714329040978387).epsilon(1e-13));
    CHECK(lambert_w(LambertBranch::Principal, 1.0) ==
          Catch::Approx(omega).epsilon(1e-12));

    const double wm1 = bisect_w(-0.1, -20.0, -1.0);
    CHECK(wm1 == Catch::Approx(-3.5771520639572972).epsilon(1e-13));
    CHECK(lambert_w(LambertBranch::Secondary, -0.1) ==
          Catch::Approx(wm1).epsilon(1e-12));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(lambert_w(LambertBranch::Principal, -0.4), DomainError);
    CHECK_THROWS_AS(lambert_w(LambertBranch::Secondary, -0.4), DomainError);
    CHECK_THROWS_AS(lambert_w(LambertBranch::Secondary, 0.0), DomainError);
    CHECK_THROWS_AS(lambert_w(LambertBranch::Secondary, 1e-3), DomainError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(lambert_w(LambertBranch::Principal, nan), NonFiniteInput);
    CHECK_THROWS_AS(lambert_w(LambertBranch::Principal, inf), NonFiniteInput);
    CHECK_THROWS_AS(lambert_w(LambertBranch::Secondary, -inf), NonFiniteInput);
}

TEST_CASE("defining relation residual across both branch domains") {
    const double inv_e = std::exp(-1.0);
    // Principal, negative segment: approach the branch point geometrically.
    for (double d = 1e-16; d < inv_e; d *= 3.7) {
        const double z = -inv_e + d;
        const double w = lambert_w(LambertBranch::Principal, z);
        CHECK(residual(w, z) <= 1e-12 * std::max(1.0, std::abs(z)));
        CHECK(w >= -1.0);
    }
    // Principal, positive segment over many decades.
    for (double z = 1e-300; z < 1e299; z *= 9.5) {
        const double w = lambert_w(LambertBranch::Principal, z);
        CHECK(residual(w, z) <= 1e-12 * std::max(1.0, std::abs(z)));
    }
    // Secondary: from the branch point toward 0-.
    for (double d = 1e-16; d < inv_e; d *= 3.7) {
        const double z = -inv_e + d;
        const double w = lambert_w(LambertBranch::Secondary, z);
        CHECK(residual(w, z) <= 1e-12 * std::max(1.0, std::abs(z)));
        CHECK(w <= -1.0);
    }
    for (double z = -1e-300; z > -inv_e; z *= 8.9) {
        const double w = lambert_w(LambertBranch::Secondary, z);
        CHECK(residual(w, z) <= 1e-12 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("round trip w -> w e^w -> w") {
    const int n = 4000;
    for (int i = 0; i <= n; ++i) {
        const double w = -1.0 + 31.0 * i / n;
        const double z = w * std::exp(w);
        const double back = lambert_w(LambertBranch::Principal, z);
        if (w == 0.0) {
            CHECK(back == 0.0);
        } else {
            CHECK(std::abs(back - w) <= 1e-10 * std::abs(w));
        }
    }
    for (int i = 0; i <= n; ++i) {
        const double w = -1.0 - 29.0 * i / n;
        const double z = w * std::exp(w);
        const double back = lambert_w(LambertBranch::Secondary, z);
        CHECK(std::abs(back - w) <= 1e-10 * std::abs(w));
    }
}

TEST_CASE("monotonicity on each branch") {
    const double inv_e = std::exp(-1.0);
    std::vector<double> zs;
    for (double d = 1e-12; d < inv_e; d *= 2.0) zs.push_back(-inv_e + d);
    for (double z = 1e-6; z < 1e12; z *= 3.0) zs.push_back(z);
    double prev = -2.0;
    for (double z : zs) {
        const double w = lambert_w(LambertBranch::Principal, z);
        CHECK(w >= prev);
        prev = w;
    }
    zs.clear();
    for (double d = 1e-12; d < inv_e; d *= 2.0) zs.push_back(-inv_e + d);
    prev = 0.0;
    bool first = true;
    for (double z : zs) {
        const double w = lambert_w(LambertBranch::Secondary, z);
        if (!first) CHECK(w <= prev);
        prev = w;
        first = false;
    }
}

TEST_CASE("log-argument forms agree with the direct evaluation") {
    for (double y = 3.0; y < 600.0; y *= 1.7) {
        const double direct = lambert_w(LambertBranch::Principal, std::exp(y));
        CHECK(lambert_w0_exp(y) == Catch::Approx(direct).epsilon(1e-13));
    }
    // Beyond overflow: check the defining relation in log space.
    for (double y = 710.0; y < 1e6; y *= 2.3) {
        const double w = lambert_w0_exp(y);
        CHECK(std::abs(w + std::log(w) - y) <= 1e-12 * y);
    }
    for (double l = -2.0; l > -600.0; l *= 1.7) {
        const double direct =
            lambert_w(LambertBranch::Secondary, -std::exp(l));
        CHECK(lambert_wm1_neg_exp(l) == Catch::Approx(direct).epsilon(1e-13));
    }
    for (double l = -710.0; l > -1e6; l *= 2.3) {
        const double w = lambert_wm1_neg_exp(l);
        CHECK(std::abs(w + std::log(-w) - l) <= 1e-12 * std::abs(l));
    }
    CHECK_THROWS_AS(lambert_w0_exp(0.0), DomainError);
    CHECK_THROWS_AS(lambert_wm1_neg_exp(-0.5), DomainError);
}
