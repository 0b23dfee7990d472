#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hopf/barrier.hpp"
#include "hopf/verifier.hpp"

using namespace hopf;

TEST_CASE("central differences are exact on quadratics") {
    auto u = GridField::uniform({-1, -1}, {1, 1}, {11, 11});
    for (std::size_t f = 0; f < u.size(); ++f) {
        auto x = u.coords(f);
        u.value[f] = x[0] * x[0] + x[1] * x[1];
    }
    auto ops = OperatorProfiles::isotropic(DegeneracyProfile::laplacian(), 2);
    auto res = fd_apply_F(u, ops);
    for (std::size_t f = 0; f < res.size(); ++f)
        if (!res.boundary[f]) CHECK(res.value[f] == doctest::Approx(4.0).epsilon(1e-12));
    // super verdict fails with worst value 2N
    auto verdict = check_sign(res, SignMode::Super, 1e-6);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.worst_value == doctest::Approx(4.0));
    // sub verdict passes
    CHECK(check_sign(res, SignMode::Sub, 1e-9).ok);
    // zero field passes both
    GridField z = u;
    std::fill(z.value.begin(), z.value.end(), 0.0);
    auto zres = fd_apply_F(z, ops);
    CHECK(check_sign(zres, SignMode::Sub, 0.0).ok);
    CHECK(check_sign(zres, SignMode::Super, 0.0).ok);
}

TEST_CASE("quartic profile with the flat coefficient annihilates the operator") {
    const int n = 32;  // keeps |x_N| = 1 off the lattice
    auto u = GridField::uniform({-1.5, -1.5}, {1.5, 1.5}, {n, n});
    for (std::size_t f = 0; f < u.size(); ++f) {
        const double xN = u.coords(f)[1];
        u.value[f] = std::abs(xN) <= 1.0 ? -std::pow(xN * xN - 1.0, 4) : 0.0;
    }
    auto ops = OperatorProfiles::last_axis(DegeneracyProfile::flat_on_interval(2.0, 0.0), 2);
    auto res = fd_apply_F(u, ops);
    for (std::size_t f = 0; f < res.size(); ++f)
        if (!res.boundary[f]) CHECK(res.value[f] == 0.0);
}

TEST_CASE("sampled annulus barrier is a discrete subsolution up to truncation") {
    auto p = DegeneracyProfile::inverse_log_power(1);
    auto b = build_hopf_barrier(p, 2, 1.0, 0.2);
    auto ops = OperatorProfiles::isotropic(p, 2);
    const int n = 81;
    auto u = GridField::uniform({-1.1, -1.1}, {1.1, 1.1}, {n, n});
    const double h = u.h[0];
    for (std::size_t f = 0; f < u.size(); ++f) {
        auto x = u.coords(f);
        const double rho = std::hypot(x[0], x[1]);
        u.value[f] = b.v_at(std::clamp(rho, 0.5, 1.0));
    }
    auto res = fd_apply_F(u, ops);
    double worst = 0.0;
    int counted = 0;
    for (std::size_t f = 0; f < res.size(); ++f) {
        if (res.boundary[f]) continue;
        auto x = u.coords(f);
        const double rho = std::hypot(x[0], x[1]);
        if (rho < 0.5 + 2.5 * h || rho > 1.0 - 2.5 * h) continue;  // full stencil inside
        worst = std::min(worst, res.value[f]);
        ++counted;
    }
    CHECK(counted > 500);
    CHECK(worst >= -10.0 * h * h);
}

TEST_CASE("minimizer with affine boundary data is the affine function") {
    auto model = EnergyModel::from_profiles(
        OperatorProfiles::isotropic(DegeneracyProfile::laplacian(), 2));
    auto u = GridField::uniform({0, 0}, {1, 1}, {17, 17});
    u.mark_edges_boundary();
    auto affine = [](const std::vector<double>& x) { return 0.3 + 0.4 * x[0] - 0.2 * x[1]; };
    for (std::size_t f = 0; f < u.size(); ++f)
        u.value[f] = u.boundary[f] ? affine(u.coords(f)) : 0.0;
    auto res = minimize_energy(model, u);
    CHECK(res.converged);
    CHECK(res.grad_norm < 1e-8);
    for (std::size_t f = 0; f < u.size(); ++f)
        CHECK(res.field.value[f] == doctest::Approx(affine(u.coords(f))).epsilon(1e-6));
}

TEST_CASE("single-node perturbations cannot lower the minimal energy") {
    auto model = EnergyModel::from_profiles(
        OperatorProfiles::last_axis(DegeneracyProfile::inverse_log_square(), 2));
    auto u = GridField::uniform({0, 0}, {1, 1}, {9, 9});
    u.mark_edges_boundary();
    for (std::size_t f = 0; f < u.size(); ++f)
        u.value[f] = u.boundary[f] ? 0.003 * u.coords(f)[0] : 0.0;
    auto res = minimize_energy(model, u);
    REQUIRE(res.converged);
    const double J0 = model.energy(res.field);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, u.size() - 1);
    for (int k = 0; k < 60; ++k) {
        auto f = pick(rng);
        if (res.field.boundary[f]) continue;
        for (double d : {1e-4, -1e-4}) {
            GridField w = res.field;
            w.value[f] += d;
            CHECK(model.energy(w) >= J0 - 1e-15);
        }
    }
}

TEST_CASE("energy is midpoint convex and its gradient matches differences") {
    auto model = EnergyModel::from_profiles(
        OperatorProfiles::last_axis(DegeneracyProfile::inverse_log_square(), 2));
    auto u = GridField::uniform({0, 0}, {1, 1}, {9, 9});
    auto w = u;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 0.02);
    for (int rep = 0; rep < 20; ++rep) {
        for (std::size_t f = 0; f < u.size(); ++f) {
            u.value[f] = gauss(rng);
            w.value[f] = gauss(rng);
        }
        GridField mid = u;
        for (std::size_t f = 0; f < u.size(); ++f)
            mid.value[f] = 0.5 * (u.value[f] + w.value[f]);
        CHECK(model.energy(mid) <=
              0.5 * (model.energy(u) + model.energy(w)) + 1e-12);
    }
    auto g = model.gradient(u);
    for (std::size_t f = 0; f < u.size(); f += 5) {
        const double h = 1e-6 * (1.0 + std::abs(u.value[f]));
        GridField up = u, um = u;
        up.value[f] += h;
        um.value[f] -= h;
        const double fd = (model.energy(up) - model.energy(um)) / (2 * h);
        CHECK(std::abs(fd - g[f]) <= 1e-5 * std::max(1e-10, std::abs(g[f])));
    }
}

TEST_CASE("comparison: identical boundary data gives equality") {
    auto model = EnergyModel::from_profiles(
        OperatorProfiles::isotropic(DegeneracyProfile::laplacian(), 2));
    auto bc = GridField::uniform({0, 0}, {1, 1}, {13, 13});
    bc.mark_edges_boundary();
    for (std::size_t f = 0; f < bc.size(); ++f) {
        auto x = bc.coords(f);
        bc.value[f] = bc.boundary[f] ? 1.0 + 0.2 * std::sin(3 * x[0]) * x[1] : 1.0;
    }
    auto res = comparison_check(model, bc, bc, 1e-6);
    CHECK(res.ordered);
    CHECK(std::abs(res.worst_gap) < 1e-7);
}

TEST_CASE("comparison: constants order trivially and bad ordering is refused") {
    auto model = EnergyModel::from_profiles(
        OperatorProfiles::isotropic(DegeneracyProfile::laplacian(), 2));
    auto lo = GridField::uniform({0, 0}, {1, 1}, {9, 9});
    lo.mark_edges_boundary();
    auto hi = lo;
    for (std::size_t f = 0; f < lo.size(); ++f) {
        lo.value[f] = 0.0;
        hi.value[f] = 1.0;
    }
    auto res = comparison_check(model, lo, hi, 1e-9);
    CHECK(res.ordered);
    CHECK_THROWS_AS(comparison_check(model, hi, lo, 1e-9), std::invalid_argument);
}

TEST_CASE("comparison against the annulus barrier with lifted boundary data") {
    auto p = DegeneracyProfile::inverse_log_power(1);
    const double r = 1.0, eps = 0.2, delta = 0.02 * eps;
    auto b = build_hopf_barrier(p, 2, r, eps);
    auto model = EnergyModel::from_profiles(OperatorProfiles::isotropic(p, 2));
    const int n = 41;
    auto grid = GridField::uniform({-1.05, -1.05}, {1.05, 1.05}, {n, n});
    GridField vbar = grid;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        auto x = grid.coords(f);
        const double rho = std::hypot(x[0], x[1]);
        const double v = b.v_at(std::clamp(rho, 0.5 * r, r));
        vbar.value[f] = rho >= 0.5 * r && rho <= r ? v : 0.0;
        const bool inside = rho > 0.5 * r + 1e-12 && rho < r - 1e-12;
        grid.boundary[f] = inside ? 0 : 1;
        grid.value[f] = inside ? v : v + delta;  // boundary trace shifted up
    }
    auto res = minimize_energy(model, grid);
    REQUIRE(res.converged);
    CHECK(res.grad_norm < 1e-8);
    double worst = -1e300;
    for (std::size_t f = 0; f < grid.size(); ++f)
        worst = std::max(worst, vbar.value[f] - res.field.value[f]);
    CHECK(worst <= 1e-6);  // v <= u nodewise
}

TEST_CASE("scenario: flat coefficient defeats the principle") {
    auto rep = smp_scenario("flat_g", {2, 32});
    CHECK(rep.violated);
    CHECK(rep.passed);
    CHECK(rep.number("max_abs_residual") == 0.0);
    CHECK(rep.number("interior_min") == 1.0);
    auto rep3 = smp_scenario("flat_g", {3, 16});
    CHECK(rep3.violated);
}

TEST_CASE("scenario: constant coefficient keeps the minimum on the boundary") {
    auto rep = smp_scenario("laplacian", {2, 17});
    CHECK_FALSE(rep.violated);
    CHECK(rep.passed);
    CHECK(rep.number("grad_norm") < 1e-8);
    CHECK(rep.number("min_interior") >= rep.number("min_boundary") - 1e-9);
}

TEST_CASE("scenario: placed subsolution forces positivity at the contact point") {
    auto rep = smp_scenario("glued", {2, 17});
    CHECK_FALSE(rep.violated);
    CHECK(rep.passed);
    CHECK(rep.number("v_at_z") > 0.0);
    CHECK(rep.number("u_at_z") >= rep.number("v_at_z"));
    CHECK(rep.number("worst_gap") <= 1e-6);
    CHECK_THROWS(smp_scenario("unknown", {2, 17}));
}
