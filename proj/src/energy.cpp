#include "hopf/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hopf {

EnergyModel EnergyModel::from_profiles(const OperatorProfiles& ops) {
    EnergyModel m;
    m.N = ops.dim();
    for (const auto& p : ops.g) m.f.push_back(solve_lagrangian_density(p));
    return m;
}

double EnergyModel::energy(const GridField& u) const {
    if (u.N != N) throw std::invalid_argument("energy: dimension mismatch");
    double cell = 1.0;
    for (int i = 0; i < N; ++i) cell *= u.h[static_cast<std::size_t>(i)];
    double J = 0.0;
    for (int axis = 0; axis < N; ++axis) {
        const auto ax = static_cast<std::size_t>(axis);
        const std::size_t str = u.stride(axis);
        for (std::size_t fidx = 0; fidx < u.size(); ++fidx) {
            const auto idx = u.unflat(fidx);
            if (idx[ax] + 1 >= u.shape[ax]) continue;
            const double D = (u.value[fidx + str] - u.value[fidx]) / u.h[ax];
            J += 0.5 * f[ax].f_at(D * D) * D * D * cell;
        }
    }
    return J;
}

std::vector<double> EnergyModel::gradient(const GridField& u) const {
    if (u.N != N) throw std::invalid_argument("gradient: dimension mismatch");
    double cell = 1.0;
    for (int i = 0; i < N; ++i) cell *= u.h[static_cast<std::size_t>(i)];
    std::vector<double> g(u.size(), 0.0);
    for (int axis = 0; axis < N; ++axis) {
        const auto ax = static_cast<std::size_t>(axis);
        const std::size_t str = u.stride(axis);
        const double inv_h = 1.0 / u.h[ax];
        for (std::size_t fidx = 0; fidx < u.size(); ++fidx) {
            const auto idx = u.unflat(fidx);
            if (idx[ax] + 1 >= u.shape[ax]) continue;
            const double D = (u.value[fidx + str] - u.value[fidx]) * inv_h;
            const double w = f[ax].Lprime(D) * inv_h * cell;
            g[fidx + str] += w;
            g[fidx] -= w;
        }
    }
    return g;
}

MinimizeResult minimize_energy(const EnergyModel& m, const GridField& start,
                               double grad_tol, int max_iter) {
    MinimizeResult out;
    out.field = start;
    GridField& u = out.field;

    auto free_norm = [&](const std::vector<double>& g) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (!u.boundary[i]) s += g[i] * g[i];
        return std::sqrt(s);
    };

    double J = m.energy(u);
    std::vector<double> g = m.gradient(u);
    std::vector<double> g_prev, u_prev;
    double step = 1.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        const double gn = free_norm(g);
        out.grad_norm = gn;
        if (gn < grad_tol) {
            out.converged = true;
            break;
        }
        // Barzilai-Borwein step seed, then Armijo backtracking
        if (!g_prev.empty()) {
            double sy = 0.0, yy = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (u.boundary[i]) continue;
                const double si = u.value[i] - u_prev[i];
                const double yi = g[i] - g_prev[i];
                sy += si * yi;
                yy += yi * yi;
            }
            if (yy > 0 && sy > 0) step = sy / yy;
        }
        g_prev = g;
        u_prev = u.value;

        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < g.size(); ++i)
                if (!u.boundary[i]) u.value[i] = u_prev[i] - step * g_prev[i];
            const double J_new = m.energy(u);
            // sufficient decrease, certified up to the rounding level of J
            if (J_new <= J - 1e-4 * step * gn * gn + 8e-16 * std::abs(J)) {
                J = J_new;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            u.value = u_prev;
            break;  // step underflow: gradient already at rounding level
        }
        g = m.gradient(u);
    }
    out.iterations = it;
    if (!out.converged) out.grad_norm = free_norm(m.gradient(u));
    out.converged = out.grad_norm < grad_tol;
    return out;
}

ComparisonResult nodewise_leq(const GridField& sub, const GridField& super, double tol) {
    if (sub.size() != super.size())
        throw std::invalid_argument("nodewise_leq: size mismatch");
    ComparisonResult out;
    out.ordered = true;
    out.worst_gap = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const double gap = sub.value[i] - super.value[i];
        if (gap > out.worst_gap) {
            out.worst_gap = gap;
            out.worst_node = i;
        }
        if (gap > tol) out.ordered = false;
    }
    return out;
}

ComparisonResult comparison_check(const EnergyModel& m, const GridField& sub_bc,
                                  const GridField& super_bc, double tol) {
    if (sub_bc.size() != super_bc.size())
        throw std::invalid_argument("comparison_check: size mismatch");
    for (std::size_t i = 0; i < sub_bc.size(); ++i) {
        if (sub_bc.boundary[i] != super_bc.boundary[i])
            throw std::invalid_argument("comparison_check: masks differ");
        if (sub_bc.boundary[i] && sub_bc.value[i] > super_bc.value[i] + 1e-15)
            throw std::invalid_argument("comparison_check: boundary ordering violated");
    }
    auto lo = minimize_energy(m, sub_bc);
    auto hi = minimize_energy(m, super_bc);
    ComparisonResult out = nodewise_leq(lo.field, hi.field, tol);
    out.sub_solved = std::move(lo.field);
    out.super_solved = std::move(hi.field);
    return out;
}

}  // namespace hopf
