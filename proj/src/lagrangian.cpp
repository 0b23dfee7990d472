#include "hopf/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hopf {

double LagrangianDensity::f_at(double t) const {
    if (t <= t_.front()) return phi_.front();
    if (t >= t_.back()) return phi_.back();
    return interp_(std::log(t));
}

double LagrangianDensity::fprime_at(double t) const {
    if (t <= t_.front() || t >= t_.back()) return 0.0;
    return interp_.derivative(std::log(t)) / t;
}

double LagrangianDensity::L(double p) const {
    const double t = p * p;
    return 0.5 * f_at(t) * t;
}

double LagrangianDensity::Lprime(double p) const {
    const double t = p * p;
    return p * (f_at(t) + t * fprime_at(t));
}

double LagrangianDensity::residual(std::size_t i) const {
    if (i < 2 || i + 2 >= tau_.size())
        throw std::out_of_range("residual: interior samples only");
    const double dtau = tau_[1] - tau_[0];
    const double d1 = (-phi_[i + 2] + 8 * phi_[i + 1] - 8 * phi_[i - 1] + phi_[i - 2]) /
                      (12 * dtau);
    const double d2 = (-phi_[i + 2] + 16 * phi_[i + 1] - 30 * phi_[i] + 16 * phi_[i - 1] -
                       phi_[i - 2]) /
                      (12 * dtau * dtau);
    // f + 5 t f' + 2 t^2 f'' = f + 3 phi' + 2 phi''  in log coordinates
    return phi_[i] + 3 * d1 + 2 * d2 - profile_.g(t_[i]);
}

double LagrangianDensity::max_interior_residual() const {
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < tau_.size(); ++i)
        worst = std::max(worst, std::abs(residual(i)));
    return worst;
}

LagrangianDensity solve_lagrangian_density(const DegeneracyProfile& p) {
    LagrangianDensity out;
    out.profile_ = p;

    const double t_hi = p.t_bar();
    const double t_lo = std::max(p.min_t(), t_hi * std::pow(2.0, -60.0));
    const double tau_lo = std::log(t_lo);
    const double tau_hi = std::log(t_hi);
    const double dtau_target = std::log(2.0) / 32.0;
    const std::size_t n = std::max<std::size_t>(
        16, static_cast<std::size_t>(std::ceil((tau_hi - tau_lo) / dtau_target)) + 1);
    const double dtau = (tau_hi - tau_lo) / static_cast<double>(n - 1);

    out.tau_.resize(n);
    out.t_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.tau_[i] = tau_lo + dtau * static_cast<double>(i);
        out.t_[i] = std::exp(out.tau_[i]);
    }

    // Tail of the two integrals below the grid floor, with g modeled as a
    // local power there: g(s) ~ g(t_lo) (s/t_lo)^alpha.
    double alpha = 0.0;
    const double g_lo = p.g(t_lo);
    if (g_lo > 0) {
        const double t_probe = t_lo * 1.5;
        const double g_probe = p.g(std::min(t_probe, t_hi));
        if (g_probe > 0)
            alpha = std::max(0.0, std::log(g_probe / g_lo) / std::log(t_probe / t_lo));
    }
    double I1 = g_lo > 0 ? g_lo * std::sqrt(t_lo) / (alpha + 0.5) : 0.0;
    double I2 = g_lo > 0 ? g_lo * t_lo / (alpha + 1.0) : 0.0;

    auto psi1 = [&](double s) { return std::exp(0.5 * s) * p.g(std::exp(s)); };
    auto psi2 = [&](double s) { return std::exp(s) * p.g(std::exp(s)); };

    out.f_.resize(n);
    out.fp_.resize(n);
    out.phi_.resize(n);
    out.dphi_.resize(n);
    auto record = [&](std::size_t i) {
        const double t = out.t_[i];
        const double rt = std::sqrt(t);
        out.f_[i] = I1 / rt - I2 / t;
        out.fp_[i] = -0.5 * I1 / (t * rt) + I2 / (t * t);
        out.phi_[i] = out.f_[i];
        out.dphi_[i] = t * out.fp_[i];
    };
    record(0);
    for (std::size_t i = 1; i < n; ++i) {
        const double a = out.tau_[i - 1], b = out.tau_[i], m = 0.5 * (a + b);
        I1 += (b - a) / 6.0 * (psi1(a) + 4.0 * psi1(m) + psi1(b));
        I2 += (b - a) / 6.0 * (psi2(a) + 4.0 * psi2(m) + psi2(b));
        record(i);
    }
    out.interp_ = CubicHermite(out.tau_, out.phi_, out.dphi_);
    return out;
}

}  // namespace hopf
