#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hopf/gbudget.hpp"
#include "hopf/lagrangian.hpp"
#include "hopf/profiles.hpp"

using namespace hopf;

namespace {

DegeneracyProfile power_law_tabulated(double t_max = 0.5) {
    // g(t) = t sampled log-uniformly; satisfies g' > 0, g + g' t = 2t <= 1
    std::vector<double> t, g, gp;
    for (int i = 0; i <= 600; ++i) {
        double x = std::pow(10.0, -14.0 + (std::log10(t_max) + 14.0) * i / 600.0);
        t.push_back(x);
        g.push_back(x);
        gp.push_back(1.0);
    }
    return DegeneracyProfile::tabulated(t, g, gp);
}

}  // namespace

TEST_CASE("eval_g closed-form examples") {
    CHECK(DegeneracyProfile::laplacian().g(0.3) == 1.0);
    // g(t) = 1/|ln t| at t = e^-2
    auto p1 = DegeneracyProfile::inverse_log_power(1);
    CHECK(p1.g(std::exp(-2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    auto flat = DegeneracyProfile::flat_on_interval(2.0);
    CHECK(flat.g(1.0) == 0.0);
    CHECK(flat.g(0.0) == 0.0);
    // extension beyond t_bar
    CHECK(flat.g(5.0) == flat.extension_value());
    auto ils = DegeneracyProfile::inverse_log_square();
    CHECK(ils.g(ils.t_bar()) == doctest::Approx(1.0 / 16.0));
    CHECK(ils.g(1.0) == doctest::Approx(1.0 / 16.0));  // extension value
    CHECK(ils.g(0.0) == 0.0);
}

TEST_CASE("tabulated validation") {
    CHECK_THROWS(DegeneracyProfile::tabulated({0.1, 0.1, 0.3, 0.4}, {0.1, 0.1, 0.3, 0.4},
                                              {1, 1, 1, 1}));
    // gprime wildly inconsistent with divided differences
    CHECK_THROWS(DegeneracyProfile::tabulated({0.1, 0.2, 0.3, 0.4}, {0.1, 0.2, 0.3, 0.4},
                                              {9, 9, 9, 9}));
    auto ok = power_law_tabulated();
    CHECK(ok.g(0.25) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(ok.gprime(0.25) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(ok.g(1e-16), std::out_of_range);
}

TEST_CASE("stable log evaluators agree with the plain ones") {
    auto p = DegeneracyProfile::inverse_log_power(3);
    for (double t : {1e-8, 1e-4, 1e-2, 0.1}) {
        const double lam = std::log(t);
        CHECK(p.g_log(lam) == doctest::Approx(p.g(t)).epsilon(1e-13));
        CHECK(p.t_gprime_log(lam) == doctest::Approx(t * p.gprime(t)).epsilon(1e-13));
        const double ratio = p.g(t) * std::sqrt(p.g(t)) / (t * p.gprime(t));
        CHECK(p.hopf_ratio_log(lam) == doctest::Approx(ratio).epsilon(1e-12));
    }
    // deep tail where exp(lam) underflows
    CHECK(p.g_log(-1e6) == doctest::Approx(std::pow(1e6, -3.0)));
    CHECK(std::isfinite(p.hopf_ratio_log(-1e6)));
    // inverse of g
    for (double gv : {1e-9, 1e-5, 1e-3}) {
        const double lam = p.log_t_of_g(gv);
        CHECK(p.g_log(lam) == doctest::Approx(gv).epsilon(1e-12));
    }
}

TEST_CASE("assumption report: laplacian satisfies every local flag") {
    auto rep = check_assumptions(DegeneracyProfile::laplacian(), 3);
    CHECK(rep.L_i_ordering);
    CHECK(rep.L_ii_positivity);
    CHECK(rep.L_iii_monotone);
    CHECK(rep.extra_monotone_g);
    CHECK(rep.extra_sum_bound);
    REQUIRE(rep.limit_ratio.has_value());
    CHECK(rep.limit_ratio->cls == LimitClass::Infinite);
    CHECK(rep.K.status == KStatus::Inapplicable);  // divergent budget
    CHECK_FALSE(rep.C2_bounded);
}

TEST_CASE("assumption report: flat profile breaks positivity") {
    auto rep = check_assumptions(DegeneracyProfile::flat_on_interval(2.0), 2);
    CHECK_FALSE(rep.L_ii_positivity);
    CHECK_FALSE(rep.limit_ratio.has_value());  // inapplicable
}

TEST_CASE("assumption report: inverse-log-square limit is 1/2") {
    auto rep = check_assumptions(DegeneracyProfile::inverse_log_square(), 2);
    REQUIRE(rep.limit_ratio.has_value());
    CHECK(rep.limit_ratio->cls == LimitClass::Positive);
    CHECK(rep.limit_ratio->value == doctest::Approx(0.5).epsilon(1e-3));
    CHECK_FALSE(rep.C2_bounded);  // g/(t g') = |ln t|/2 grows
    CHECK(rep.K.status == KStatus::Present);
    CHECK(certify_K(DegeneracyProfile::inverse_log_square(), 2, 2.0));
    CHECK(rep.K.value == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("assumption report: k=1 and k=3 powers") {
    auto r1 = check_assumptions(DegeneracyProfile::inverse_log_power(1), 2);
    REQUIRE(r1.limit_ratio.has_value());
    CHECK(r1.limit_ratio->cls == LimitClass::Infinite);
    CHECK(r1.K.status == KStatus::Inapplicable);  // divergent budget

    auto r3 = check_assumptions(DegeneracyProfile::inverse_log_power(3), 2);
    REQUIRE(r3.limit_ratio.has_value());
    CHECK(r3.limit_ratio->cls == LimitClass::Zero);
    CHECK(r3.K.status == KStatus::Absent);  // ratio scan grows without bound
    CHECK_FALSE(r3.C2_bounded);             // |ln t|/k grows
}

TEST_CASE("tabulated power law: bounded C2 ratio, vanishing limit, no K") {
    auto p = power_law_tabulated();
    auto rep = check_assumptions(p, 2);
    CHECK(rep.L_iii_monotone);
    CHECK(rep.extra_monotone_g);
    CHECK(rep.extra_sum_bound);  // g + g' t = 2t <= 1 on (0, 1/2]
    REQUIRE(rep.limit_ratio.has_value());
    CHECK(rep.limit_ratio->cls == LimitClass::Zero);
    CHECK(rep.C2_bounded);
    CHECK(rep.C2_bound == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(rep.K.status == KStatus::Absent);  // consistent with the zero limit
}

TEST_CASE("K presence matches a nonvanishing limit for finite budgets") {
    // shipped closed forms with a finite budget: k = 2 (positive limit, K
    // present), k = 3 (zero limit, K absent)
    auto r2 = check_assumptions(DegeneracyProfile::inverse_log_square(), 3);
    CHECK((r2.limit_ratio->cls != LimitClass::Zero) == (r2.K.status == KStatus::Present));
    auto r3 = check_assumptions(DegeneracyProfile::inverse_log_power(3), 3);
    CHECK((r3.limit_ratio->cls != LimitClass::Zero) == (r3.K.status == KStatus::Present));
}

TEST_CASE("monotone sum invariant on increasing pairs") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const auto& p :
         {DegeneracyProfile::inverse_log_square(), DegeneracyProfile::inverse_log_power(1)}) {
        for (int i = 0; i < 2000; ++i) {
            double t1 = p.t_bar() * std::pow(2.0, -59.0 * u01(rng));
            double t2 = p.t_bar() * std::pow(2.0, -59.0 * u01(rng));
            if (t1 > t2) std::swap(t1, t2);
            const double s1 = p.g(t1) + p.gprime(t1) * t1;
            const double s2 = p.g(t2) + p.gprime(t2) * t2;
            CHECK(s1 <= s2 + 1e-12);
        }
    }
}

TEST_CASE("averaging lemma: h_n(a) >= h_n(1/n) on random samples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const auto& p :
         {DegeneracyProfile::laplacian(), DegeneracyProfile::inverse_log_square(),
          DegeneracyProfile::inverse_log_power(3), DegeneracyProfile::flat_on_interval(2.0)}) {
        for (int i = 0; i < 4000; ++i) {
            const double t = p.t_bar() * std::pow(2.0, -60.0 * u01(rng));
            const int n = 2 + static_cast<int>(u01(rng) * 5);
            const double a = u01(rng);
            CHECK(h_n(p, n, t, a) >= h_n(p, n, t, 1.0 / n) - 1e-10);
        }
    }
}

TEST_CASE("k1 and k2 are non-increasing when the extra hypotheses hold") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const auto& p :
         {DegeneracyProfile::laplacian(), DegeneracyProfile::inverse_log_square(),
          DegeneracyProfile::inverse_log_power(3)}) {
        for (int i = 0; i < 4000; ++i) {
            const double t = p.t_bar() * std::pow(2.0, -60.0 * u01(rng));
            double a1 = u01(rng), a2 = u01(rng);
            if (a1 > a2) std::swap(a1, a2);
            CHECK(k1(p, t, a2) <= k1(p, t, a1) + 1e-10);
            CHECK(k2(p, t, a2) <= k2(p, t, a1) + 1e-10);
        }
    }
}

TEST_CASE("lagrangian recovery: constant coefficient gives constant density") {
    auto lag = solve_lagrangian_density(DegeneracyProfile::laplacian());
    for (double t : {1e-6, 1e-3, 0.1, 0.9})
        CHECK(lag.f_at(t) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lag.max_interior_residual() < 1e-8);
}

TEST_CASE("lagrangian recovery: linear coefficient gives t/6") {
    auto lag = solve_lagrangian_density(power_law_tabulated());
    for (double t : {1e-4, 1e-2, 0.2, 0.45})
        CHECK(lag.f_at(t) == doctest::Approx(t / 6.0).epsilon(1e-6));
    CHECK(lag.max_interior_residual() < 1e-7);
}

TEST_CASE("lagrangian recovery: inverse-log-square residual below 1e-8") {
    auto lag = solve_lagrangian_density(DegeneracyProfile::inverse_log_square());
    CHECK(lag.max_interior_residual() < 1e-8);
    // density bounded (growth assumption)
    double fmax = 0.0;
    for (double f : lag.f()) fmax = std::max(fmax, std::abs(f));
    CHECK(fmax < 1.0);
    // derivative evaluator is the exact derivative of the value evaluator
    for (double t : {1e-5, 1e-3, 5e-3}) {
        const double h = t * 1e-6;
        const double fd = (lag.f_at(t + h) - lag.f_at(t - h)) / (2 * h);
        CHECK(lag.fprime_at(t) == doctest::Approx(fd).epsilon(1e-5));
    }
}
