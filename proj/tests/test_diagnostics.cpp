#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chemsim/diagnostics.hpp"
#include "chemsim/simulation.hpp"
#include "oracle_support.hpp"

using namespace chemsim;
using namespace chemsim::testing;
using std::numbers::pi;

namespace {

Grid line(int n) { return Grid::uniform(1, {n, 1, 1}, {1.0, 1.0, 1.0}); }
Grid square(int n) { return Grid::uniform(2, {n, n, 1}, {1.0, 1.0, 1.0}); }

ModelParams model(double s, int m) {
    ModelParams mp;
    mp.s = s;
    mp.trunc = TruncationParams::level(m);
    return mp;
}

SchemeParams scheme(double dt, double t_end) {
    SchemeParams sp;
    sp.dt = dt;
    sp.t_end = t_end;
    return sp;
}

Field manufactured_z(int n) {
    return sample(square(n), [](double x, double y, double) { return 2.0 + std::cos(pi * x) * std::cos(pi * y); });
}

std::vector<DiagnosticsRow> record(const State& init, const ModelParams& mp, const SchemeParams& sp, int every) {
    std::vector<DiagnosticsRow> rows;
    run(init, mp, sp, every, [&](const DiagnosticsRow& r, const State&) { rows.push_back(r); });
    return rows;
}

}  // namespace

TEST_CASE("z_transform") {
    const Grid g = line(10);
    const Field one = z_transform(Field(g, 0.99), 0.01);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(one[i] == doctest::Approx(1.0).epsilon(1e-15));
    const Field fifth = z_transform(Field(g, 0.0), 0.04);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(fifth[i] == doctest::Approx(0.2).epsilon(1e-15));

    std::mt19937_64 rng(4);
    const Field v = random_field(g, rng, 0.0, 5.0);
    const Field z = z_transform(v, 0.01);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(z[i] * z[i] - 0.01 - v[i]) <= 1e-15 * std::max(1.0, v[i]));

    CHECK_THROWS_AS(z_transform(v, 0.0), std::domain_error);
    CHECK_THROWS_AS(z_transform(Field(g, -1.0), 0.5), std::domain_error);
}

TEST_CASE("energy of spatially constant states") {
    const Grid g = square(8);
    CHECK(energy(State{0.0, Field(g, 1.0), Field(g, 0.3)}, model(2.0, 1)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(energy(State{0.0, Field(g, 0.0), Field(g, 0.3)}, model(1.5, 4)) == 0.0);
    for (double s : {1.0, 1.5, 3.0}) {
        const auto mp = model(s, 6);
        const double ustar = 2.5;
        const double expect = s / 4.0 * eval_g(ustar, s, mp.trunc);
        CHECK(energy(State{0.0, Field(g, ustar), Field(g, 1.0)}, mp) == doctest::Approx(expect).epsilon(1e-14));
    }
    // Undershoot below zero contributes g(0) = 0.
    CHECK(energy(State{0.0, Field(g, -0.2), Field(g, 1.0)}, model(1.0, 4)) == 0.0);
}

TEST_CASE("collect") {
    std::mt19937_64 rng(6);
    const Grid g = line(40);
    const auto mp = model(2.0, 8);
    const auto sp = scheme(1e-3, 1.0);

    const State hom{0.0, Field(g, 2.0), Field(g, 3.0)};
    const auto r0 = collect(hom, mp, sp, 0, make_reference(hom));
    CHECK(r0.grad_z_l2sq == 0.0);
    CHECK(r0.grad_z_l4 == 0.0);
    CHECK(r0.consumption_diss == 0.0);
    CHECK(r0.u_star == doctest::Approx(2.0));

    const double c = 1.5;
    const State st{0.7, Field(g, c), random_field(g, rng, 0.5, 2.0)};
    const auto ref = make_reference(st);
    const auto row = collect(st, mp, sp, 7, ref);
    CHECK(row.t == 0.7);
    CHECK(row.mass_u == integrate(st.u));
    CHECK(row.min_v == st.v.min());
    CHECK(row.max_v == st.v.max());
    const Field gz = gradient_sq(z_transform(st.v, mp.alpha));
    CHECK(row.grad_z_l2sq == doctest::Approx(integrate(gz)).epsilon(1e-14));
    CHECK(row.consumption_diss == doctest::Approx(c * c * row.grad_z_l2sq).epsilon(1e-14));
    CHECK(row.g_mass == doctest::Approx(eval_g(c, 2.0, mp.trunc)).epsilon(1e-14));
    CHECK(row.energy == doctest::Approx(0.5 * row.g_mass + 0.5 * row.grad_z_l2sq).epsilon(1e-14));
    CHECK(row.v_lower_bound_ref == doctest::Approx(ref.v0_min * std::pow(1.0 + 1e-3 * 81.0, -7.0)).epsilon(1e-14));
    CHECK(csv_values(row)[0] == row.t);
    CHECK(csv_values(row)[11] == row.v_lower_bound_ref);
}

TEST_CASE("discrete lower bound reference") {
    CHECK(discrete_lower_bound(2.0, 0.1, 3, model(1.0, 1)) == doctest::Approx(2.0 / std::pow(1.2, 3)).epsilon(1e-15));
    CHECK(discrete_lower_bound(2.0, 0.1, 0, model(2.0, 3)) == 2.0);
    ModelParams open;
    CHECK(discrete_lower_bound(2.0, 0.1, 5, open) == 0.0);
}

TEST_CASE("energy residuals on a homogeneous run") {
    const Grid g = line(16);
    const auto rows = record(State{0.0, Field(g, 2.0), Field(g, 3.0)}, model(2.0, 8), scheme(0.01, 0.5), 5);
    const auto res = energy_residuals(rows);
    CHECK(res.residuals.size() == rows.size() - 1);
    CHECK(res.c_fit == 0.0);
    CHECK(res.feasible);
    for (double r : res.residuals) CHECK(r <= 0.0);
}

TEST_CASE("pure v-diffusion decreases the energy") {
    const Grid g = line(64);
    const State init{0.0, Field(g, 0.0),
                     sample(g, [](double x, double, double) { return 1.0 + 0.5 * std::cos(pi * x); })};
    const auto rows = record(init, model(1.0, 4), scheme(1e-3, 0.2), 10);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].energy < rows[k - 1].energy);
    const auto res = energy_residuals(rows);
    CHECK(res.residuals.size() == rows.size() - 1);
    CHECK(res.c_fit == 0.0);
    for (double r : res.residuals) CHECK(r <= 1e-12);
}

TEST_CASE("energy residuals fit the smallest constant") {
    DiagnosticsRow a, b, c;
    a.t = 0.0;
    a.energy = 1.0;
    a.grad_z_l2sq = 2.0;
    b.t = 0.5;
    b.energy = 2.0;  // slope 2, grad term 2 -> C >= 1
    b.grad_z_l2sq = 1.0;
    c.t = 1.0;
    c.energy = 2.5;  // slope 1, grad term 1 -> C >= 1
    const std::vector<DiagnosticsRow> rows{a, b, c};
    const auto res = energy_residuals(rows);
    CHECK(res.c_fit == doctest::Approx(1.0));
    REQUIRE(res.residuals.size() == 2);
    CHECK(res.residuals[0] <= 1e-12);
    CHECK(res.residuals[1] <= 1e-12);

    std::vector<DiagnosticsRow> rising{a, b};
    rising[0].grad_z_l2sq = 0.0;
    CHECK_FALSE(energy_residuals(rising).feasible);

    CHECK_THROWS_AS(energy_residuals(std::vector<DiagnosticsRow>{a}), std::invalid_argument);
}

TEST_CASE("boundary identity on the manufactured field") {
    std::vector<double> hs, gaps;
    for (int n : {32, 64, 128}) {
        const auto rep = verify_identity_boundary(manufactured_z(n));
        hs.push_back(rep.h);
        gaps.push_back(rep.abs_gap);
        if (n == 128) {
            CHECK(rep.lhs == doctest::Approx(std::pow(pi, 4)).epsilon(0.01));
            CHECK(rep.rhs == doctest::Approx(std::pow(pi, 4)).epsilon(0.01));
        }
    }
    CHECK(refinement_slope(hs, gaps) >= 1.8);

    const auto flat = verify_identity_boundary(Field(square(16), 2.0));
    CHECK(flat.lhs == 0.0);
    CHECK(flat.rhs == 0.0);
    CHECK(flat.abs_gap == 0.0);

    CHECK_THROWS_WITH_AS(verify_identity_boundary(Field(line(16), 1.0)), "identity verification requires dim=2",
                         std::invalid_argument);
}

TEST_CASE("boundary identity on a mixed Neumann eigenfunction combination") {
    auto z = [](int n) {
        return sample(square(n), [](double x, double y, double) {
            return std::cos(pi * x) + 0.3 * std::cos(2 * pi * y) + 0.2 * std::cos(pi * x) * std::cos(3 * pi * y);
        });
    };
    double prev = 0.0;
    for (int n : {32, 64, 128}) {
        const double gap = verify_identity_boundary(z(n)).abs_gap;
        if (prev > 0.0) CHECK(prev / gap >= 3.5);
        prev = gap;
    }
}

TEST_CASE("second identity converges to the analytic defect term") {
    // The discrete gap tracks int (grad z . D^2 z grad z) / z, evaluated
    // here by Gauss-Legendre quadrature of the closed-form derivatives.
    const double defect = integrate_unit_square([](double x, double y) {
        const double cx = std::cos(pi * x), sx = std::sin(pi * x), cy = std::cos(pi * y), sy = std::sin(pi * y);
        const double z = 2.0 + cx * cy;
        const double zx = -pi * sx * cy, zy = -pi * cx * sy;
        const double zxx = -pi * pi * cx * cy, zyy = zxx, zxy = pi * pi * sx * sy;
        return (zxx * zx * zx + 2.0 * zxy * zx * zy + zyy * zy * zy) / z;
    });
    CHECK(defect == doctest::Approx(1.7456740550423).epsilon(1e-10));

    std::vector<double> hs, errs;
    for (int n : {32, 64, 128}) {
        const auto rep = verify_identity_winkler(manufactured_z(n), 0.5);
        CHECK(rep.lhs - rep.rhs == doctest::Approx(-defect).epsilon(0.02));
        hs.push_back(rep.h);
        errs.push_back(std::abs(rep.lhs - rep.rhs + defect));
    }
    CHECK(refinement_slope(hs, errs) >= 1.8);
}

TEST_CASE("second identity edge cases") {
    const auto flat = verify_identity_winkler(Field(square(16), 3.0), 0.5);
    CHECK(flat.lhs == 0.0);
    CHECK(flat.rhs == 0.0);
    CHECK(flat.abs_gap == 0.0);

    const Field z = manufactured_z(48);
    Field z4 = z;
    for (std::size_t i = 0; i < z4.size(); ++i) z4[i] *= 4.0;
    const auto base = verify_identity_winkler(z, 0.5);
    const auto scaled = verify_identity_winkler(z4, 2.0);
    CHECK(scaled.lhs == doctest::Approx(16.0 * base.lhs).epsilon(1e-12));
    CHECK(scaled.rhs == doctest::Approx(16.0 * base.rhs).epsilon(1e-12));
    const auto b1 = verify_identity_boundary(z), b4 = verify_identity_boundary(z4);
    CHECK(b4.lhs == doctest::Approx(16.0 * b1.lhs).epsilon(1e-12));
    CHECK(b4.abs_gap == doctest::Approx(16.0 * b1.abs_gap).epsilon(1e-9));

    CHECK_THROWS_AS(verify_identity_winkler(z, 1.5), std::domain_error);
    CHECK_THROWS_AS(verify_identity_winkler(Field(line(16), 1.0), 0.5), std::invalid_argument);
}

TEST_CASE("refinement_slope") {
    const std::vector<double> h{0.1, 0.05, 0.025};
    CHECK(refinement_slope(h, std::vector<double>{1.0, 0.25, 0.0625}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(refinement_slope(h, std::vector<double>{3.0, 1.5, 0.75}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isinf(refinement_slope(h, std::vector<double>{0.0, 0.0, 0.0})));
    CHECK(std::isnan(refinement_slope(h, std::vector<double>{1.0, 0.0, 0.0})));
}
