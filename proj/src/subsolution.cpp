#include "hopf/subsolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hopf {

double smallness_lhs(const DegeneracyProfile& p, double eps_over_r) {
    const double g0 = p.g(eps_over_r * eps_over_r);
    if (g0 <= 0) return 0.0;
    const double rg = std::sqrt(g0);
    return 2.0 * rg + 0.5 * rg * std::abs(std::log(g0));
}

double default_xibar(const DegeneracyProfile& p, double K) {
    const double hi = std::sqrt(p.t_bar());
    const double bound = 1.0 / (4.0 * K);
    if (smallness_lhs(p, hi) <= bound) return hi;
    const double lo_lam = std::log(std::max(p.min_t(), 1e-120)) * 0.5;
    auto fn = [&](double lam) { return smallness_lhs(p, std::exp(lam)) - bound; };
    if (fn(lo_lam) > 0)
        throw SmallnessViolated(smallness_lhs(p, std::exp(lo_lam)), bound);
    const double lam = bisect(fn, lo_lam, std::log(hi), 1e-12, 200);
    return std::exp(lam);
}

double compute_R1_annulus(const DegeneracyProfile& p, int N, double r, double eps,
                          std::optional<double> K) {
    if (!(r > 0) || !(eps > 0))
        throw std::invalid_argument("compute_R1_annulus: r > 0, eps > 0 required");
    const double x = eps / r;
    if (x * x > p.t_bar() * (1.0 + 1e-12))
        throw std::invalid_argument("compute_R1_annulus: (eps/r)^2 exceeds t_bar");
    if (classify_G(p, N, GScale::One) == GClass::Divergent)
        throw std::invalid_argument("compute_R1_annulus: budget integral diverges");
    if (K) {
        const double lhs = smallness_lhs(p, x);
        const double bound = 1.0 / (4.0 * (*K));
        if (lhs > bound) throw SmallnessViolated(lhs, bound);
    }
    const auto Gb = compute_G(p, N, x, GScale::One);
    return r / std::expm1(Gb.value / (N - 1));
}

double compute_R_abar(const DegeneracyProfile& p, int N, double r, double eps,
                      double R1, double abar) {
    if (abar < 0 || abar > 1) throw std::invalid_argument("compute_R_abar: abar in [0,1]");
    const double x2 = (eps / r) * (eps / r);
    const double g0 = p.g(x2);
    const double ga = p.g(x2 * abar);
    const double den = 1.0 - abar + ga * abar;
    // den >= 1 - abar + 0 and at abar = 1 it equals g(x2) > 0 for admissible profiles
    if (den <= 0) throw std::logic_error("compute_R_abar: degenerate denominator");
    return g0 * R1 / (N - 1) * (N - 2 + abar + ga * (1.0 - abar)) / den;
}

PartitionAlpha build_partition(const DegeneracyProfile& p, int N, double r, double eps,
                               double K) {
    const double R1 = compute_R1_annulus(p, N, r, eps);
    const double g0 = p.g((eps / r) * (eps / r));
    if (g0 <= 0 || g0 >= 1)
        throw std::invalid_argument("build_partition: need 0 < g(eps^2/r^2) < 1");
    PartitionAlpha part;
    part.sigma = R1 * g0;
    const double c1 = std::sqrt(g0);
    const double s1 = std::sqrt(1.0 - g0);

    auto R_of_a = [&](double a) { return compute_R_abar(p, N, r, eps, R1, a); };
    part.integral_c = integrate_or_throw(
        [&](double c) { return R_of_a(1.0 - c * c); }, c1, 1.0, 1e-10, 1e-14);
    part.integral_s = integrate_or_throw(
        [&](double s) { return R_of_a(s * s); }, 0.0, s1, 1e-10, 1e-14);

    const double alpha1 = std::acos(c1);
    std::size_t M = 8;
    for (;; M *= 2) {
        std::vector<double> alphas;
        alphas.reserve(2 * M + 4);
        alphas.push_back(std::acos(0.0));  // alpha_0 = pi/2
        alphas.push_back(alpha1);
        for (std::size_t j = 1; j < M; ++j) {
            const double cv = c1 + (1.0 - c1) * static_cast<double>(j) / static_cast<double>(M);
            alphas.push_back(std::acos(cv));
            const double sv = s1 * static_cast<double>(j) / static_cast<double>(M);
            alphas.push_back(std::asin(sv));
        }
        alphas.push_back(0.0);
        std::sort(alphas.begin(), alphas.end(), std::greater<>());
        alphas.erase(std::unique(alphas.begin(), alphas.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                     alphas.end());
        // keep only nodes at or below alpha_1 plus the leading pi/2
        std::vector<double> kept;
        kept.push_back(alphas.front());
        for (double a : alphas)
            if (a <= alpha1 + 1e-15 && a < kept.back() - 1e-15) kept.push_back(a);

        PartitionAlpha cand;
        cand.sigma = part.sigma;
        cand.integral_c = part.integral_c;
        cand.integral_s = part.integral_s;
        cand.alpha = kept;
        const std::size_t n = kept.size() - 1;
        cand.c.resize(n + 1);
        cand.s.resize(n + 1);
        cand.R.resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            cand.c[i] = std::cos(kept[i]);
            cand.s[i] = std::sin(kept[i]);
        }
        cand.c[0] = 0.0;
        cand.s[0] = 1.0;
        cand.c[1] = c1;   // pinned first node
        cand.s[1] = s1;
        cand.c[n] = 1.0;
        cand.s[n] = 0.0;
        for (std::size_t i = 0; i <= n; ++i) cand.R[i] = R_of_a(cand.s[i] * cand.s[i]);

        double sum_c = 0.0, sum_s = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            sum_c += cand.R[i] * (cand.c[i + 1] - cand.c[i]);
            sum_s += cand.R[i] * (cand.s[i] - cand.s[i + 1]);
        }
        cand.S1 = R1 * cand.c[1] + sum_c;
        cand.S2 = R1 * (1.0 - cand.s[1]) + sum_s;

        const double gap = std::max(std::abs(sum_c - part.integral_c),
                                    std::abs(sum_s - part.integral_s));
        if (gap <= 0.5 * part.sigma) {
            cand.s1_within_bound = cand.S1 <= 2.0 * K * r * (1.0 + 1e-12);
            cand.s2_within_bound = cand.S2 <= 0.25 * r * (1.0 + 1e-12);
            return cand;
        }
        if (2 * M > (1u << 20)) throw MeshFailure(gap);
    }
}

double GluedSubsolution::inner_value() const { return w.v_at(R1); }

int GluedSubsolution::find_piece(double s_mer, double y_mer) const {
    // Sector interfaces are rays from the drifting centers; for a point
    // outside the region the pole-side predicate against ray i (separating
    // pieces i-1 and i) is monotone in i, so the owning sector comes from a
    // binary search over the rays.  Interior points are routed elsewhere.
    const std::size_t n = pieces.size();
    auto polewards = [&](std::size_t i) {
        const auto& pc = pieces[i];
        const double c = std::sqrt(std::max(0.0, 1.0 - pc.s_hi * pc.s_hi));
        return c * (y_mer - pc.mz) - pc.s_hi * (s_mer - pc.mu) >= 0.0;
    };
    std::size_t cell;
    if (n == 1 || polewards(1)) {
        cell = 0;
    } else if (!polewards(n - 1)) {
        cell = n - 1;
    } else {
        std::size_t lo = 1, hi = n - 1;  // polewards(lo) false, polewards(hi) true
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            (polewards(mid) ? hi : lo) = mid;
        }
        cell = hi - 1;
    }
    // guard: the owning sector must contain the point's angle; fall back to
    // the first-true linear rule on the rare tolerance edge
    {
        const auto& pc = pieces[cell];
        const double dx = s_mer - pc.mu, dy = y_mer - pc.mz;
        const double rho = std::hypot(dx, dy);
        const double sin_th = rho > 0 ? dy / rho : 1.0;
        if (sin_th >= pc.s_lo - 1e-9 && sin_th <= pc.s_hi + 1e-9)
            return static_cast<int>(cell);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pc = pieces[i];
        const double dx = s_mer - pc.mu, dy = y_mer - pc.mz;
        const double rho = std::hypot(dx, dy);
        if (rho <= 0 || dy / rho >= pc.s_lo - 1e-13) return static_cast<int>(i);
    }
    return static_cast<int>(n - 1);
}

std::size_t GluedSubsolution::locate_arc_by_x(double s_mer) const {
    const auto it = std::upper_bound(arc_x.begin() + 1, arc_x.end() - 1, s_mer);
    return static_cast<std::size_t>(it - arc_x.begin()) - 1;
}

bool GluedSubsolution::inside_region(double s_mer, double y_mer) const {
    // The boundary chain runs monotonically from the pole (0, R1) to the
    // equatorial extreme (l, zstar); the point is inside exactly when it sits
    // at or below the chain height at its abscissa.
    if (s_mer > l) return false;
    const auto i = locate_arc_by_x(s_mer);
    const auto& pc = pieces[i];
    const double dx = s_mer - pc.mu;
    const double y_b = pc.mz + std::sqrt(std::max(0.0, pc.R * pc.R - dx * dx));
    return y_mer <= y_b;
}

GluedSubsolution::EvalResult GluedSubsolution::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != N)
        throw std::invalid_argument("eval: dimension mismatch");
    double s2 = 0.0;
    for (int i = 0; i + 1 < N; ++i) s2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    const double s_mer = std::sqrt(s2);
    const double y_mer = zstar + std::abs(x.back());

    const double tol = 1e-9 * r + 1e-12 * R1;
    int pi_idx;
    if (inside_region(s_mer, y_mer)) {
        // at most on the inner boundary; anything deeper is outside the collar
        pi_idx = static_cast<int>(locate_arc_by_x(s_mer));
        const auto& pc0 = pieces[static_cast<std::size_t>(pi_idx)];
        if (std::hypot(s_mer - pc0.mu, y_mer - pc0.mz) < pc0.R - tol)
            throw std::domain_error("eval: point inside the inner region");
    } else {
        pi_idx = find_piece(s_mer, y_mer);
    }
    const auto& pc = pieces[static_cast<std::size_t>(pi_idx)];
    const double dx = s_mer - pc.mu, dy = y_mer - pc.mz;
    const double rho = std::hypot(dx, dy);
    if (rho < pc.R - tol || rho > pc.R + r + tol)
        throw std::domain_error("eval: point outside the collar");
    const double rho_w = std::clamp(rho - pc.R + R1, R1, R1 + r);

    EvalResult out;
    out.piece = pi_idx;
    out.v = w.v_at(rho_w);
    out.grad.assign(static_cast<std::size_t>(N), 0.0);
    const double wr = w.v_rho_at(rho_w);
    const double ds = rho > 0 ? dx / rho : 0.0;
    const double dyn = rho > 0 ? dy / rho : 1.0;
    if (s_mer > 0) {
        for (int i = 0; i + 1 < N; ++i)
            out.grad[static_cast<std::size_t>(i)] = wr * ds * (x[static_cast<std::size_t>(i)] / s_mer);
    }
    const double sgn = x.back() >= 0 ? 1.0 : -1.0;
    out.grad.back() = wr * dyn * sgn;
    return out;
}

double GluedSubsolution::distance_to_A(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != N)
        throw std::invalid_argument("distance_to_A: dimension mismatch");
    double s2 = 0.0;
    for (int i = 0; i + 1 < N; ++i) s2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    const double s_mer = std::sqrt(s2);
    const double y_mer = zstar + std::abs(x.back());
    if (inside_region(s_mer, y_mer)) return 0.0;

    // The region is convex with a C^1 boundary of circular arcs; within the
    // owning angular sector the projection onto the boundary is radial.
    const int pi_idx = find_piece(s_mer, y_mer);
    const auto& pc = pieces[static_cast<std::size_t>(pi_idx)];
    const double rho = std::hypot(s_mer - pc.mu, y_mer - pc.mz);
    return std::max(0.0, rho - pc.R);
}

double GluedSubsolution::distance_to_A_bruteforce(const std::vector<double>& x) const {
    double s2 = 0.0;
    for (int i = 0; i + 1 < N; ++i) s2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    const double s_mer = std::sqrt(s2);
    const double y_mer = zstar + std::abs(x.back());
    if (inside_region(s_mer, y_mer)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pc : pieces) {
        const double dx = s_mer - pc.mu, dy = y_mer - pc.mz;
        // dy >= 0 after folding (centers sit at or below the equator level),
        // so the polar angle lies in [0, pi] and clamping by value picks the
        // nearer arc endpoint.
        const double phi_lo = std::asin(std::clamp(pc.s_lo, 0.0, 1.0));
        const double phi_hi = std::asin(std::clamp(pc.s_hi, 0.0, 1.0));
        const double phi_c = std::clamp(std::atan2(dy, dx), phi_lo, phi_hi);
        const double px = pc.mu + pc.R * std::cos(phi_c);
        const double py = pc.mz + pc.R * std::sin(phi_c);
        best = std::min(best, std::hypot(s_mer - px, y_mer - py));
    }
    return best;
}

double GluedSubsolution::piece_F(std::size_t i, double rho_i, double a) const {
    const auto& pc = pieces.at(i);
    const double rho_w = rho_i - pc.R + R1;
    const double wr = w.v_rho_at(rho_w);
    const double wrr = w.v_rhorho_at(rho_w);
    const double ga = profile.g(wr * wr * a);
    return wrr * (1.0 - a) + wr / rho_i * (N - 2 + a) + ga * (wrr * a + wr / rho_i * (1.0 - a));
}

double GluedSubsolution::piece_k(std::size_t i, double rho_i, double a) const {
    const auto& pc = pieces.at(i);
    const double rho_w = rho_i - pc.R + R1;
    const double wr = w.v_rho_at(rho_w);
    const double g1 = profile.g(wr * wr);
    const double ga = profile.g(wr * wr * a);
    if (g1 <= 0) return -std::numeric_limits<double>::infinity();
    return rho_w * (N - 2 + a + (1.0 - a) * ga) -
           (N - 1) * rho_i / g1 * (1.0 - a + a * ga);
}

namespace {

std::vector<std::pair<double, double>> trace_shells(const GluedSubsolution& sub,
                                                    double offset, int per_arc) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& pc : sub.pieces) {
        const double rad = pc.R + offset;
        const double phi_lo = std::asin(std::clamp(pc.s_lo, 0.0, 1.0));
        const double phi_hi = std::asin(std::clamp(pc.s_hi, 0.0, 1.0));
        for (int j = 0; j <= per_arc; ++j) {
            const double phi = phi_hi + (phi_lo - phi_hi) * j / double(per_arc);
            pts.emplace_back(pc.mu + rad * std::cos(phi),
                             pc.mz + rad * std::sin(phi) - sub.zstar);
        }
    }
    return pts;
}

}  // namespace

std::vector<std::pair<double, double>> GluedSubsolution::boundary_arc_points(
    bool outer, int per_arc) const {
    return trace_shells(*this, outer ? r : 0.0, per_arc);
}

std::vector<std::pair<double, double>> GluedSubsolution::level_set_points(
    double level, int per_arc) const {
    if (!(level > 0) || level >= inner_value())
        throw std::invalid_argument("level_set_points: level outside (0, vbar_max)");
    auto fn = [&](double d) { return w.v_at(R1 + d) - level; };
    const double offset = bisect(fn, 0.0, r, 1e-14 * r, 200);
    return trace_shells(*this, offset, per_arc);
}

GluedSubsolution assemble_glued_subsolution(const DegeneracyProfile& p, int N, double r,
                                            double eps, double K,
                                            bool enforce_smallness) {
    GluedSubsolution sub;
    sub.N = N;
    sub.profile = p;
    sub.r = r;
    sub.eps = eps;
    sub.K = K;
    sub.R1 = compute_R1_annulus(p, N, r, eps,
                                enforce_smallness ? std::optional<double>(K) : std::nullopt);
    sub.w = solve_barrier_ode(p, N, sub.R1, -eps / r, GScale::One, sub.R1 + r, r / 512.0);
    if (!sub.w.exhausted ||
        std::abs(sub.w.rho_out() - (sub.R1 + r)) > 1e-8 * (sub.R1 + r))
        throw std::runtime_error("assemble: annulus profile failed to exhaust at R1 + r");
    sub.part = build_partition(p, N, r, eps, K);

    const std::size_t n = sub.part.n();
    sub.pieces.resize(n);
    double mu = 0.0, mz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double step = sub.part.R[i - 1] - sub.part.R[i];
            mu += step * sub.part.c[i];
            mz += step * sub.part.s[i];
        }
        sub.pieces[i] = {mu, mz, sub.part.R[i], sub.part.s[i], sub.part.s[i + 1]};
    }
    sub.zstar = mz;  // equator level of the last piece
    sub.l = mu + sub.part.R[n - 1];
    sub.lN = sub.R1 - sub.zstar;
    // abscissa breakpoints of the boundary arcs (shared interface endpoints)
    sub.arc_x.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pc = sub.pieces[i];
        sub.arc_x[i] = pc.mu + pc.R * std::sqrt(std::max(0.0, 1.0 - pc.s_hi * pc.s_hi));
    }
    sub.arc_x[n] = sub.l;
    return sub;
}

DistanceCheckResult distance_check(const GluedSubsolution& sub, int samples,
                                   std::mt19937_64& rng) {
    DistanceCheckResult out;
    out.ok = true;
    const int N = sub.N;
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> face_axis(0, N - 1);
    std::uniform_int_distribution<int> side(0, 1);
    auto half_width = [&](int axis) { return axis + 1 == N ? sub.lN : sub.l; };
    for (int sidx = 0; sidx < samples; ++sidx) {
        std::vector<double> x(static_cast<std::size_t>(N));
        const int ax = face_axis(rng);
        for (int i = 0; i < N; ++i)
            x[static_cast<std::size_t>(i)] = unif(rng) * half_width(i);
        x[static_cast<std::size_t>(ax)] = (side(rng) ? 1.0 : -1.0) * half_width(ax);
        const double d = sub.distance_to_A(x);
        if (d > out.worst) {
            out.worst = d;
            out.worst_point = x;
        }
        if (!(d < sub.lN)) out.ok = false;
    }
    // the corner is the extремal case; always include it
    std::vector<double> corner(static_cast<std::size_t>(N), sub.l);
    corner.back() = sub.lN;
    const double dc = sub.distance_to_A(corner);
    if (dc > out.worst) {
        out.worst = dc;
        out.worst_point = corner;
    }
    if (!(dc < sub.lN)) out.ok = false;
    return out;
}

double corner_plane_distance(const GluedSubsolution& sub) {
    // hyperplane through p_i = l e_i (i < N) and p_N = l_N e_N:
    //   sum_{i<N} x_i / l + x_N / l_N = 1
    const int N = sub.N;
    double norm2 = (N - 1) / (sub.l * sub.l) + 1.0 / (sub.lN * sub.lN);
    const double lhs_at_corner = static_cast<double>(N);  // (N-1) * l/l + lN/lN
    return (lhs_at_corner - 1.0) / std::sqrt(norm2);
}

PlacementReport placement(const GluedSubsolution& sub, const std::vector<double>& p,
                          double dist_pC, const std::vector<double>& z) {
    const int N = sub.N;
    if (static_cast<int>(p.size()) != N || static_cast<int>(z.size()) != N)
        throw std::invalid_argument("placement: dimension mismatch");
    const double d = dist_pC;
    const double r = sub.r;
    PlacementReport rep;
    rep.r_max = d / (32.0 * (N - 1) * sub.K * sub.K + 7.0 / 8.0);
    rep.r_bound_ok = r < rep.r_max;

    double dz = 0.0;
    for (int i = 0; i < N; ++i) {
        const double di = z[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)];
        dz += di * di;
    }
    dz = std::sqrt(dz);
    if (std::abs(dz - d) > 1e-9 * d)
        throw std::invalid_argument("placement: |z - p| must equal dist_pC");

    rep.first_quadrant = true;
    for (int i = 0; i < N; ++i)
        if (z[static_cast<std::size_t>(i)] < p[static_cast<std::size_t>(i)]) rep.first_quadrant = false;

    rep.q.resize(static_cast<std::size_t>(N));
    rep.qstar.resize(static_cast<std::size_t>(N));
    const double frac = (d - 0.5 * r) / d;
    for (int i = 0; i < N; ++i) {
        rep.q[static_cast<std::size_t>(i)] =
            p[static_cast<std::size_t>(i)] +
            frac * (z[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)]);
        const double li = (i + 1 == N) ? sub.lN : sub.l;
        rep.qstar[static_cast<std::size_t>(i)] = rep.q[static_cast<std::size_t>(i)] - li;
    }

    // every corner of R(q*, l, l_N) inside B(p, d - r/4)
    rep.box_in_ball = true;
    const double rad = d - 0.25 * r;
    for (int mask = 0; mask < (1 << N); ++mask) {
        double dist2 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double li = (i + 1 == N) ? sub.lN : sub.l;
            const double ti = rep.q[static_cast<std::size_t>(i)] - ((mask >> i) & 1 ? 2.0 * li : 0.0);
            const double di = ti - p[static_cast<std::size_t>(i)];
            dist2 += di * di;
        }
        if (!(dist2 < rad * rad)) rep.box_in_ball = false;
    }

    const double lhs = (d - 0.5 * r) * (d - 0.5 * r) +
                       4.0 * ((N - 1) * sub.l * sub.l + sub.lN * sub.lN);
    rep.chain_inequality = lhs < rad * rad;

    // z in the collar around A* = q* + A
    std::vector<double> zrel(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
        zrel[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] - rep.qstar[static_cast<std::size_t>(i)];
    rep.dist_z_Astar = sub.distance_to_A(zrel);
    rep.z_in_collar = rep.dist_z_Astar > 0 && rep.dist_z_Astar < 0.75 * r;
    if (rep.z_in_collar) rep.v_at_z = sub.eval(zrel).v;
    return rep;
}

}  // namespace hopf
