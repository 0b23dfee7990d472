#include "hopf/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hopf {

double CounterexampleDomain::lam_u_rho(double r) const {
    if (has_closed_G(profile)) {
        // invert G(|zeta(rho)|) = G(1) - (N-1) ln(rho/2) at rho = r + 1
        const double Gt = G1_total_ - (N - 1) * std::log(0.5 * (r + 1.0));
        if (Gt <= 0) return -std::numeric_limits<double>::infinity();
        return lambda_of_G(profile, N, Gt, GScale::One);
    }
    return v.lam_at(r + 1.0);
}

double CounterexampleDomain::g_at_urho(double r) const {
    // lam = -inf at the exhaustion radius; g_log handles that limit uniformly
    return profile.g_log(2.0 * lam_u_rho(r));
}

double CounterexampleDomain::h_of_r(double r) const {
    return std::sqrt(g_at_urho(r) / (2.0 * R1));
}

double CounterexampleDomain::R_of_c(double c) const {
    const double y = 2.0 * R1 * c * c;  // target value of g(u_rho(R)^2)
    if (y >= g_at_urho(1.0)) return 1.0;
    auto fn = [&](double r) { return g_at_urho(r) - y; };
    return bisect(fn, 1.0, R1, 0.0, 200);
}

double CounterexampleDomain::eqA_residual(double c, double R) const {
    return std::abs(R1 * c * c - 0.5 * g_at_urho(R));
}

double CounterexampleDomain::F_radial(double rho, double a) const {
    const double ur = u_rho(rho);
    const double urr = u_rhorho(rho);
    const double ga = profile.g(ur * ur * a);
    return urr * (1.0 - a + a * ga) + ur / rho * (N - 2 + a + (1.0 - a) * ga);
}

double CounterexampleDomain::k_of_rho(double rho, double a) const {
    const double ur = u_rho(rho);
    const double g1 = profile.g(ur * ur);
    const double ga = profile.g(ur * ur * a);
    return rho * (N - 1) * (1.0 - a + a * ga) -
           (rho + 1.0) * g1 * (N - 2 + a + (1.0 - a) * ga);
}

double CounterexampleDomain::dRdc_formula(double R) const {
    // dR/dc = -(sqrt(2 R1)/(N-1)) (R+1) g^{3/2}/(t g') at t = u_rho(R)^2.
    // (The definitional identity |c| = h(R) fixes the sqrt(2 R1) factor.)
    const double lam_t = 2.0 * lam_u_rho(R);
    const double ratio = profile.hopf_ratio_log(lam_t);
    return -std::sqrt(2.0 * R1) / (N - 1) * (R + 1.0) * ratio;
}

CounterexampleDomain build_counterexample(const DegeneracyProfile& p, int N,
                                          const CounterexampleOptions& opt) {
    if (N < 2) throw std::invalid_argument("build_counterexample: N >= 2 required");
    const auto rep = check_assumptions(p, N);
    if (!rep.L_i_ordering || !rep.L_ii_positivity || !rep.L_iii_monotone)
        throw NoCounterexample("profile violates the local assumptions");
    if (!rep.extra_monotone_g || !rep.extra_sum_bound)
        throw NoCounterexample("profile violates g' >= 0 or g + g' t <= 1");
    if (classify_G(p, N, GScale::One) == GClass::Divergent)
        throw NoCounterexample("budget integral diverges; the Hopf lemma holds");
    // strict monotonicity of g on (0, t_bar]
    bool strict = p.family() == Family::InverseLogPower ||
                  p.family() == Family::InverseLogSquare;
    if (p.family() == Family::Tabulated) {
        strict = true;
        for (double gp : p.tab_gprime())
            if (gp <= 0) strict = false;
    }
    if (!strict) throw NoCounterexample("profile needs strictly increasing g");

    CounterexampleDomain dom;
    dom.N = N;
    dom.profile = p;
    dom.c2_bounded_flag = rep.C2_bounded;
    dom.G1_total_ = compute_G(p, N, 1.0, GScale::One).value;
    dom.R1 = 2.0 * std::exp(dom.G1_total_ / (N - 1)) - 1.0;

    // Cauchy problem zeta(2) = -1; exhaustion at rho = R1 + 1
    dom.v = solve_barrier_ode(p, N, 2.0, -1.0, GScale::One, (dom.R1 + 1.0) * 1.01,
                              (dom.R1 - 1.0) / 512.0);
    if (!dom.v.exhausted)
        throw std::runtime_error("counterexample barrier failed to exhaust");

    // admissibility bound: largest c <= 1/2 with R(1-c^2) >= 1.  R(1-c^2) >= 1
    // exactly when the target value 2 R1 c^2 stays below g(u_rho(1)^2), so the
    // bisection runs on that monotone difference.
    {
        const double g_at_one = dom.g_at_urho(1.0);
        auto fn = [&](double c) { return 2.0 * dom.R1 * c * c - g_at_one; };
        dom.c_bar = fn(0.5) <= 0 ? 0.5 : bisect(fn, 1e-12, 0.5, 0.0, 200);
    }

    auto make_sample = [&](double c) {
        CurveSample s;
        s.c = c;
        s.a = 1.0 - c * c;
        s.R = dom.R_of_c(c);
        s.lam_t = 2.0 * dom.lam_u_rho(s.R);
        s.dRdc = dom.dRdc_formula(s.R);
        s.inv_c_dRdc = s.dRdc / c;
        return s;
    };

    for (double c = dom.c_bar * 0.98; c >= opt.c_min; c *= opt.c_ratio)
        dom.curve.push_back(make_sample(c));

    if (has_closed_G(p)) {
        // Deep tail through the defining identity g(t(c)) = 2 R1 c^2, which the
        // closed families invert exactly in log space; the radius follows from
        // the budget relation without the cancellation the bisection route
        // hits once R is within rounding distance of R1.
        for (double c = opt.c_min; c >= opt.deep_c_min; c *= 0.8) {
            CurveSample s;
            s.c = c;
            s.a = 1.0 - c * c;
            s.lam_t = p.log_t_of_g(2.0 * dom.R1 * c * c);
            const double G_zeta = closed_G_log(p, N, 0.5 * s.lam_t, GScale::One);
            s.R = 2.0 * std::exp((dom.G1_total_ - G_zeta) / (N - 1)) - 1.0;
            s.dRdc = -std::sqrt(2.0 * dom.R1) / (N - 1) * (s.R + 1.0) *
                     p.hopf_ratio_log(s.lam_t);
            s.inv_c_dRdc = s.dRdc / c;
            dom.deep.push_back(s);
        }
    }

    dom.regular_boundary = verify_boundary_regularity(dom);
    dom.normal_derivative_zero = dom.regular_boundary;
    dom.interior_ball = verify_interior_ball(dom);
    for (const auto& s : dom.curve)
        dom.interior_ball_bound = std::max(dom.interior_ball_bound, std::abs(s.inv_c_dRdc));
    for (const auto& s : dom.deep)
        dom.interior_ball_bound = std::max(dom.interior_ball_bound, std::abs(s.inv_c_dRdc));
    {
        const auto& tail = dom.deep.empty() ? dom.curve : dom.deep;
        if (!tail.empty()) dom.dRdc_tail = std::abs(tail.back().dRdc);
    }
    return dom;
}

bool verify_boundary_regularity(const CounterexampleDomain& dom) {
    const auto& cs = dom.curve;
    if (cs.size() < 5) return false;

    // formula vs finite differences of the curve where the curve resolves the
    // derivative above rounding noise
    for (std::size_t j = 1; j + 1 < cs.size(); ++j) {
        const auto &lo = cs[j + 1], &mid = cs[j], &hi = cs[j - 1];  // ascending c
        if (lo.c < 1e-5) continue;
        const double fd = central_derivative(lo.c, lo.R, mid.c, mid.R, hi.c, hi.R);
        const double scale = std::max(std::abs(mid.dRdc), 1e-300);
        if (std::abs(fd - mid.dRdc) > 1e-4 * scale) return false;
    }

    // the formula must decrease toward zero along the deep tail
    const auto& tail = dom.deep.empty() ? dom.curve : dom.deep;
    const double last = std::abs(tail.back().dRdc);
    if (!(last < 1e-3)) return false;
    for (std::size_t j = 1; j < tail.size(); ++j)
        if (std::abs(tail[j].dRdc) > std::abs(tail[j - 1].dRdc) * (1.0 + 1e-6))
            return false;
    return true;
}

bool verify_interior_ball(const CounterexampleDomain& dom) {
    std::vector<double> vals;
    for (const auto& s : dom.curve) vals.push_back(std::abs(s.inv_c_dRdc));
    for (const auto& s : dom.deep) vals.push_back(std::abs(s.inv_c_dRdc));
    if (vals.size() < 16) return false;
    const double last = vals.back();
    if (!std::isfinite(last)) return false;
    // bounded iff the sequence stops growing toward c -> 0: no net growth
    // across the last eight samples
    return !(last > 1.3 * vals[vals.size() - 8]);
}

}  // namespace hopf
