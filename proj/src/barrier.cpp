#include "hopf/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hopf {

namespace {

constexpr double kLamFloor = -700.0;

inline double scale_shift(int N, GScale scale) {
    return scale == GScale::InvN ? std::log(static_cast<double>(N)) : 0.0;
}

}  // namespace

double RadialBarrier::g_of_zeta_log(double lam_zeta) const {
    return profile.g_log(2.0 * lam_zeta - scale_shift(N, scale));
}

void RadialBarrier::finalize() {
    lam_nodes_ = lam.size();
    while (lam_nodes_ > 0 && !std::isfinite(lam[lam_nodes_ - 1])) --lam_nodes_;
    if (lam_nodes_ >= 2) {
        std::vector<double> xs(rho.begin(), rho.begin() + static_cast<std::ptrdiff_t>(lam_nodes_));
        std::vector<double> ys(lam.begin(), lam.begin() + static_cast<std::ptrdiff_t>(lam_nodes_));
        lam_interp_ = CubicHermite::pchip(std::move(xs), std::move(ys));
    }
    v_interp_ = CubicHermite::pchip(rho, v);
}

double RadialBarrier::lam_at(double r) const {
    if (lam_nodes_ < 2) return lam.front();
    const double lo = rho.front(), hi = rho[lam_nodes_ - 1];
    if (r <= lo) return lam.front() + lam_interp_.derivative(lo) * (r - lo);
    if (r >= hi) {
        if (exhausted && r >= rho.back()) return -std::numeric_limits<double>::infinity();
        return lam[lam_nodes_ - 1] + lam_interp_.derivative(hi) * (r - hi);
    }
    return lam_interp_(r);
}

double RadialBarrier::v_rho_at(double r) const { return -std::exp(lam_at(r)); }

double RadialBarrier::v_at(double r) const {
    if (r >= rho.back()) return 0.0;
    return std::max(0.0, v_interp_(r));
}

double RadialBarrier::v_rhorho_at(double r) const {
    const double lamz = lam_at(r);
    if (!std::isfinite(lamz)) return 0.0;
    const double g = g_of_zeta_log(lamz);
    if (g <= 0) return 0.0;
    return (N - 1) * std::exp(lamz) / (r * g);
}

RadialBarrier solve_barrier_ode(const DegeneracyProfile& p, int N, double rho0,
                                double zeta0, GScale scale, double rho_max,
                                double max_step, bool fixed_step) {
    if (N < 2) throw std::invalid_argument("solve_barrier_ode: N >= 2 required");
    if (!(zeta0 < 0)) throw std::invalid_argument("solve_barrier_ode: zeta0 < 0 required");
    if (!(rho_max > rho0) || !(rho0 > 0))
        throw std::invalid_argument("solve_barrier_ode: need 0 < rho0 < rho_max");
    const double shift = scale_shift(N, scale);
    const double lam0 = std::log(-zeta0);
    if (p.g_log(2.0 * lam0 - shift) <= 0)
        throw DegenerateCoefficient("coefficient vanishes at the initial slope");

    auto rhs = [&](double rho, double lamv) {
        const double g = p.g_log(2.0 * lamv - shift);
        if (g <= 0) return -std::numeric_limits<double>::infinity();
        return -(N - 1) / (rho * g);
    };
    OdeOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-12;
    opt.max_step = max_step > 0 ? max_step : (rho_max - rho0) / 64.0;
    opt.adaptive = !fixed_step;
    auto sol = ode_solve(rhs, rho0, lam0, rho_max, opt,
                         [](double, double lamv) { return lamv < kLamFloor; });

    RadialBarrier b;
    b.N = N;
    b.scale = scale;
    b.profile = p;
    b.rho = sol.x;
    b.lam = sol.y;
    b.exhausted = false;

    if (sol.stopped_by_event || sol.stalled) {
        // Finite budget: locate the exhaustion radius by bisection on the
        // implicit relation (N-1) ln(rho/rho0) = G(|zeta0|).
        const auto Gtot = compute_G(p, N, -zeta0, scale);
        if (Gtot.divergent)
            throw std::runtime_error("barrier stalled with a divergent budget");
        const double target = Gtot.value;
        const double upper = rho0 * std::exp(target / (N - 1)) * (1.0 + 1e-12) + 1e-300;
        const double lower = b.rho.back();
        double rho_out = upper;
        if (lower < upper) {
            auto f = [&](double r) { return (N - 1) * std::log(r / rho0) - target; };
            if (f(lower) < 0 && f(upper) >= 0) rho_out = bisect(f, lower, upper, 0.0, 200);
        }
        if (rho_out <= rho_max * (1.0 + 1e-12)) {
            b.exhausted = true;
            if (rho_out > b.rho.back()) {
                b.rho.push_back(rho_out);
                b.lam.push_back(-std::numeric_limits<double>::infinity());
            } else {
                b.lam.back() = -std::numeric_limits<double>::infinity();
            }
        }
    }

    b.v_rho.resize(b.rho.size());
    b.v_rhorho.resize(b.rho.size());
    for (std::size_t i = 0; i < b.rho.size(); ++i) {
        const double lamv = b.lam[i];
        b.v_rho[i] = std::isfinite(lamv) ? -std::exp(lamv) : 0.0;
        if (std::isfinite(lamv)) {
            const double g = p.g_log(2.0 * lamv - shift);
            b.v_rhorho[i] = g > 0 ? (N - 1) * std::exp(lamv) / (b.rho[i] * g) : 0.0;
        } else {
            b.v_rhorho[i] = 0.0;
        }
    }
    // v(rho) = int_{rho_end}^{rho} v_rho: zero at the outer end, positive inside
    b.v.assign(b.rho.size(), 0.0);
    for (std::size_t i = b.rho.size() - 1; i-- > 0;) {
        const double drho = b.rho[i + 1] - b.rho[i];
        b.v[i] = b.v[i + 1] + 0.5 * (-b.v_rho[i] - b.v_rho[i + 1]) * drho;
    }
    b.finalize();
    return b;
}

RadialBarrier build_hopf_barrier(const DegeneracyProfile& p, int N, double r, double eps) {
    if (!(r > 0) || !(eps > 0))
        throw std::invalid_argument("build_hopf_barrier: r > 0 and eps > 0 required");
    const double slope = eps / r;
    if (slope * slope / N > p.t_bar() * (1.0 + 1e-12))
        throw std::invalid_argument("build_hopf_barrier: (eps/r)^2/N exceeds t_bar");
    if (classify_G(p, N, GScale::InvN) == GClass::Finite) {
        const auto Gb = compute_G(p, N, slope, GScale::InvN);
        const double rho_out = 0.5 * r * std::exp(Gb.value / (N - 1));
        if (rho_out < r) throw BudgetExhausted(rho_out);
    }
    return solve_barrier_ode(p, N, 0.5 * r, -slope, GScale::InvN, r, r / 512.0);
}

double implicit_relation_residual(const RadialBarrier& b, std::size_t i) {
    if (i >= b.rho.size()) throw std::out_of_range("implicit_relation_residual");
    if (!std::isfinite(b.lam[i])) return 0.0;  // exhausted endpoint holds by construction
    const double z0 = -b.v_rho.front();
    const double zi = std::exp(b.lam[i]);
    const double lhs = G_between(b.profile, b.N, zi, z0, b.scale);
    const double rhs = (b.N - 1) * std::log(b.rho[i] / b.rho.front());
    return lhs - rhs;
}

PolarDirection::PolarDirection(std::vector<double> dir) : d(std::move(dir)) {
    double s = 0.0;
    for (double x : d) s += x * x;
    if (d.size() < 2 || std::abs(s - 1.0) > 1e-9)
        throw std::invalid_argument("PolarDirection: components must square-sum to 1");
}

PolarDirection random_direction(std::mt19937_64& rng, int N) {
    std::normal_distribution<double> gauss;
    std::vector<double> d(static_cast<std::size_t>(N));
    double s = 0.0;
    do {
        s = 0.0;
        for (auto& x : d) {
            x = gauss(rng);
            s += x * x;
        }
    } while (s < 1e-12);
    const double inv = 1.0 / std::sqrt(s);
    for (auto& x : d) x *= inv;
    return PolarDirection(std::move(d));
}

RadialFResult radial_F(const OperatorProfiles& ops, const RadialBarrier& b,
                       const PolarDirection& dir, double rho) {
    if (ops.dim() != b.N || static_cast<int>(dir.d.size()) != b.N)
        throw std::invalid_argument("radial_F: dimension mismatch");
    const double vr = b.v_rho_at(rho);
    const double vrr = b.v_rhorho_at(rho);
    const double t = vr * vr;
    double s_rad = 0.0, s_tan = 0.0;
    for (int i = 0; i < b.N; ++i) {
        const double di2 = dir.d[static_cast<std::size_t>(i)] * dir.d[static_cast<std::size_t>(i)];
        const double gi = ops.g[static_cast<std::size_t>(i)].g(t * di2);
        s_rad += gi * di2;
        s_tan += gi * (1.0 - di2);
    }
    RadialFResult out;
    out.value = vrr * s_rad + vr / rho * s_tan;
    const auto& gN = ops.g.back();
    out.lower_bound = vrr * gN.g(t / b.N) + (b.N - 1) * vr / rho;
    return out;
}

}  // namespace hopf
