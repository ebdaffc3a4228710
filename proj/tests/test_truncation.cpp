#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "chemsim/truncation.hpp"
#include "oracle_support.hpp"

using namespace chemsim;
using chemsim::testing::simpson;

namespace {

const auto kUntruncated = TruncationParams::untruncated();

double central_first(double u, double h, const TruncationParams& p) {
    return (eval_a(u + h, p) - eval_a(u - h, p)) / (2.0 * h);
}

double central_second(double u, double h, const TruncationParams& p) {
    return (eval_a(u + h, p) - 2.0 * eval_a(u, p) + eval_a(u - h, p)) / (h * h);
}

std::vector<TruncationParams> sample_levels() {
    std::vector<TruncationParams> ps{kUntruncated};
    for (int m : {1, 2, 3, 5, 8, 100}) ps.push_back(TruncationParams::level(m));
    return ps;
}

}  // namespace

TEST_CASE("truncation level validation") {
    CHECK_THROWS_AS(TruncationParams::level(0), std::invalid_argument);
    CHECK_THROWS_AS(TruncationParams::level(-3), std::invalid_argument);
    CHECK(TruncationParams::level(4).m() == 4);
    CHECK_THROWS_AS(kUntruncated.m(), std::logic_error);
    CHECK(std::isinf(truncation_ceiling(kUntruncated)));
    CHECK(truncation_ceiling(TruncationParams::level(3)) == 4.0);
}

TEST_CASE("eval_a piecewise values") {
    const auto m3 = TruncationParams::level(3);
    CHECK(eval_a(0.5, m3) == 0.5);
    CHECK(eval_a(10.0, m3) == 4.0);
    CHECK(eval_a(-5.0, m3) == -1.0);
    CHECK(eval_a(-5.0, kUntruncated) == -1.0);
    CHECK(eval_a(1e6, kUntruncated) == 1e6);

    // Upper bridge: m + 2(t - t^3 + t^4/2) at t = 1/2 gives 5.8125; the
    // integral of a' from m reproduces it.
    const auto m5 = TruncationParams::level(5);
    CHECK(eval_a(6.0, m5) == doctest::Approx(5.8125).epsilon(1e-15));
    const double integrated = 5.0 + simpson([&](double r) { return eval_a_prime(r, m5); }, 5.0, 6.0);
    CHECK(integrated == doctest::Approx(5.8125).epsilon(1e-12));

    // Lower bridge integrates back to a(0) = 0 from a(-1) = -1.
    const double lower = -1.0 + simpson([&](double r) { return eval_a_prime(r, m3); }, -1.0, 0.0, 20000);
    CHECK(std::abs(lower) < 1e-12);
    const double half = -1.0 + simpson([&](double r) { return eval_a_prime(r, m3); }, -1.0, -0.5, 20000);
    CHECK(eval_a(-0.5, m3) == doctest::Approx(half).epsilon(1e-12));
}

TEST_CASE("eval_a_prime examples with finite-difference checks") {
    const auto m3 = TruncationParams::level(3);
    const auto m5 = TruncationParams::level(5);
    CHECK(eval_a_prime(1.0, m3) == 1.0);
    CHECK(eval_a_prime(6.0, m5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(central_first(6.0, 1e-5, m5) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(eval_a_prime(-0.5, m3) == doctest::Approx(23.0 / 16.0).epsilon(1e-15));
    CHECK(central_first(-0.5, 1e-5, m3) == doctest::Approx(23.0 / 16.0).epsilon(1e-9));
    CHECK(eval_a_prime(-2.0, m3) == 0.0);
    CHECK(eval_a_prime(7.0, m5) == 0.0);
}

TEST_CASE("eval_a_second examples with finite-difference checks") {
    const auto m3 = TruncationParams::level(3);
    const auto m4 = TruncationParams::level(4);
    CHECK(eval_a_second(2.0, m3) == 0.0);
    CHECK(eval_a_second(4.0, m4) == 0.0);
    CHECK(eval_a_second(5.0, m4) == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(central_second(5.0, 1e-4, m4) == doctest::Approx(-0.75).epsilon(1e-6));
    for (double u : {-0.9, -0.7, -0.4, -0.1})
        CHECK(central_second(u, 1e-4, m3) == doctest::Approx(eval_a_second(u, m3)).epsilon(1e-6));
}

TEST_CASE("global bounds hold for all levels") {
    const int samples = 200001;
    for (const auto& p : sample_levels()) {
        const double top = p.truncated() ? p.m() + 4.0 : 20.0;
        double prev = eval_a(-3.0, p);
        for (int i = 0; i < samples; ++i) {
            const double u = -3.0 + (top + 3.0) * i / (samples - 1);
            const double a = eval_a(u, p);
            const double ap = eval_a_prime(u, p);
            const double app = eval_a_second(u, p);
            REQUIRE(a >= prev);
            prev = a;
            if (u >= 0.0) REQUIRE(a <= u);
            if (p.truncated()) REQUIRE(std::abs(a) <= p.m() + 1.0);
            REQUIRE(ap >= 0.0);
            REQUIRE(ap <= kMaxAPrime);
            REQUIRE(std::abs(app) <= kMaxASecond);
        }
    }
}

TEST_CASE("C2 seams match to 1e-12") {
    for (const auto& p : sample_levels()) {
        std::vector<double> seams{-1.0, 0.0};
        if (p.truncated()) {
            seams.push_back(p.m());
            seams.push_back(p.m() + 2.0);
        }
        for (double x : seams) {
            const double lo = std::nextafter(x, -1e300);
            const double hi = std::nextafter(x, 1e300);
            CHECK(std::abs(eval_a(lo, p) - eval_a(hi, p)) <= 1e-12);
            CHECK(std::abs(eval_a_prime(lo, p) - eval_a_prime(hi, p)) <= 1e-12);
            CHECK(std::abs(eval_a_second(lo, p) - eval_a_second(hi, p)) <= 1e-12);
            CHECK(std::abs(eval_a(x, p) - eval_a(hi, p)) <= 1e-12);
        }
    }
}

TEST_CASE("central differences converge to a' at second order on every piece") {
    const auto p = TruncationParams::level(3);
    for (double u : {-1.5, -0.8, -0.5, -0.2, 1.5, 3.4, 4.0, 4.7, 6.0}) {
        const double e1 = std::abs(central_first(u, 1e-2, p) - eval_a_prime(u, p));
        const double e2 = std::abs(central_first(u, 5e-3, p) - eval_a_prime(u, p));
        if (e1 < 1e-11) {
            CHECK(e2 < 1e-11);  // polynomial of low degree or constant piece
            continue;
        }
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
    }
}

TEST_CASE("consumption rate clips the lower bridge") {
    const auto p = TruncationParams::level(3);
    CHECK(consumption_rate(-0.5, 1.5, p) == 0.0);
    CHECK(consumption_rate(2.0, 2.0, p) == 4.0);
    CHECK(consumption_rate(100.0, 2.0, p) == 16.0);
}

TEST_CASE("eval_g_prime examples") {
    const auto m2 = TruncationParams::level(2);
    const auto m3 = TruncationParams::level(3);
    CHECK(eval_g_prime(0.0, 1.0, m3) == 0.0);
    CHECK(eval_g_prime(2.0, 2.0, m2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(eval_g_prime(std::numbers::e - 1.0, 1.0, m3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval_g_prime(1.0, 0.5, m3), std::domain_error);
    CHECK_THROWS_AS(eval_g_prime(-1.0, 2.0, m3), std::domain_error);
}

TEST_CASE("eval_g examples and quadrature oracle") {
    const auto m1 = TruncationParams::level(1);
    CHECK(eval_g(0.0, 1.0, m1) == 0.0);
    CHECK(eval_g(0.0, 3.0, m1) == 0.0);
    CHECK(eval_g(1.0, 2.0, m1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval_g(1.0, 1.0, m1) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
    const double quad = simpson([&](double r) { return eval_g_prime(r, 1.0, m1); }, 0.0, 1.0);
    CHECK(eval_g(1.0, 1.0, m1) == doctest::Approx(quad).epsilon(1e-12));
    CHECK_THROWS_AS(eval_g(1.0, 0.9, m1), std::domain_error);
}

TEST_CASE("eval_g agrees with an independent quadrature of g' within 1e-10") {
    for (int m : {1, 3, 6}) {
        const auto p = TruncationParams::level(m);
        for (double s : {1.0, 1.3, 1.5, 2.0, 2.5, 4.0}) {
            for (double r : {0.25, 0.5 * m, 1.0 * m, m + 0.3, m + 1.0, m + 1.9, m + 2.0, m + 5.0}) {
                // Substitute r = w^2 so the integrand stays smooth near 0 for s < 2.
                const double ref = simpson(
                    [&](double w) { return 2.0 * w * eval_g_prime(w * w, s, p); }, 0.0, std::sqrt(r), 20000);
                CHECK(std::abs(eval_g(r, s, p) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
            }
        }
    }
}

TEST_CASE("eval_g is nonnegative and nondecreasing on r >= 0") {
    const auto p = TruncationParams::level(2);
    for (double s : {1.0, 1.5, 3.0}) {
        double prev = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double g = eval_g(0.02 * i, s, p);
            CHECK(g >= prev);
            prev = g;
        }
    }
}

TEST_CASE("eval_g_j_prime examples and pointwise limit") {
    const auto m1 = TruncationParams::level(1);
    const auto m2 = TruncationParams::level(2);
    CHECK(eval_g_j_prime(0.0, 1.5, 4, m1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_g_j_prime(1.0, 1.5, 1000000000LL, m1) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(eval_g_j_prime(7.0, 1.5, 1, m2) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval_g_j_prime(1.0, 2.0, 1, m1), std::domain_error);
    CHECK_THROWS_AS(eval_g_j_prime(1.0, 1.0, 1, m1), std::domain_error);
    CHECK_THROWS_AS(eval_g_j_prime(1.0, 1.5, 0, m1), std::domain_error);

    const auto p = TruncationParams::level(4);
    for (double r : {0.1, 1.0, 3.9, 5.0, 9.0}) {
        double prev_gap = 1e300;
        for (long long j = 1; j <= 1000000; j *= 10) {
            const double gap = std::abs(eval_g_j_prime(r, 1.7, j, p) - eval_g_prime(r, 1.7, p));
            CHECK(gap <= prev_gap);
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-5);
    }
}

TEST_CASE("power gap examples") {
    auto g = power_gap(1.0, 1.0, 3.0);
    CHECK(g.lhs == 0.0);
    CHECK(g.rhs == 0.0);
    g = power_gap(0.0, 2.0, 2.0);
    CHECK(g.lhs == 4.0);
    CHECK(g.rhs == 8.0);
    g = power_gap(1.0, 3.0, 1.0);
    CHECK(g.lhs == 2.0);
    CHECK(g.rhs == 2.0);
}

TEST_CASE("power gap inequality over random triples") {
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> w(0.0, 100.0), s(1.0, 5.0);
    int violations = 0;
    for (int i = 0; i < 100000; ++i) {
        const auto g = power_gap(w(rng), w(rng), s(rng));
        if (g.lhs > g.rhs * (1.0 + 1e-12)) ++violations;
    }
    CHECK(violations == 0);
}
