#include "hopf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hopf {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (positive half).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
    double k15;
    double err;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fs = f(c - dx) + f(c + dx);
        k15 += kWgk[i] * fs;
        if (i % 2 == 1) g7 += kWg[i / 2] * fs;
    }
    k15 *= h;
    g7 *= h;
    double err = std::abs(k15 - g7);
    err = 200.0 * err * std::sqrt(std::max(err, 0.0));
    return {k15, std::max(err, std::abs(k15) * 1e-16)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, int max_panels) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    struct Panel {
        double a, b, value, err;
    };
    std::vector<Panel> stack;
    auto first = gk15(f, a, b);
    stack.push_back({a, b, first.k15, first.err});
    double total = first.k15;
    double total_err = first.err;
    int panels = 1;
    while (!stack.empty()) {
        if (total_err <= abs_tol + rel_tol * std::abs(total)) break;
        // split the worst panel
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); ++i)
            if (stack[i].err > stack[worst].err) worst = i;
        Panel p = stack[worst];
        stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(worst));
        if (panels >= max_panels) {
            stack.push_back(p);
            break;
        }
        const double mid = 0.5 * (p.a + p.b);
        auto left = gk15(f, p.a, mid);
        auto right = gk15(f, mid, p.b);
        total += left.k15 + right.k15 - p.value;
        total_err += left.err + right.err - p.err;
        stack.push_back({p.a, mid, left.k15, left.err});
        stack.push_back({mid, p.b, right.k15, right.err});
        ++panels;
        if (panels % 64 == 0) {
            // re-accumulate to limit drift from the incremental updates
            total = 0.0;
            total_err = 0.0;
            for (const auto& q : stack) {
                total += q.value;
                total_err += q.err;
            }
        }
    }
    total = 0.0;
    total_err = 0.0;
    for (const auto& q : stack) {
        total += q.value;
        total_err += q.err;
    }
    out.value = total;
    out.error = total_err;
    out.panels = panels;
    out.converged = total_err <= abs_tol + rel_tol * std::abs(total) + 1e-300;
    return out;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
    auto r = integrate(f, a, b, rel_tol, abs_tol);
    if (!r.converged)
        throw std::runtime_error("quadrature did not converge (err=" + std::to_string(r.error) + ")");
    return r.value;
}

namespace {

// Cash-Karp tableau
constexpr double kA[6] = {0.0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
constexpr double kB[6][5] = {
    {0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0},
    {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
constexpr double kC5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
constexpr double kC4[6] = {2825.0 / 27648, 0, 18575.0 / 48384, 13525.0 / 55296,
                           277.0 / 14336, 1.0 / 4};

}  // namespace

OdeResult ode_solve(const std::function<double(double, double)>& f,
                    double x0, double y0, double x_end,
                    const OdeOptions& opt,
                    const std::function<bool(double, double)>& stop) {
    OdeResult out;
    out.x.push_back(x0);
    out.y.push_back(y0);
    if (x_end == x0) return out;
    const double dir = x_end > x0 ? 1.0 : -1.0;
    double span = std::abs(x_end - x0);
    double h = opt.initial_step > 0 ? opt.initial_step : span / 128.0;
    if (opt.max_step > 0) h = std::min(h, opt.max_step);
    if (!opt.adaptive) {
        if (opt.max_step <= 0) throw std::invalid_argument("fixed-step solve needs max_step");
        h = opt.max_step;
    }
    double x = x0, y = y0;
    const double hmin = span * 1e-15;
    int steps = 0;
    const int max_steps = 2000000;
    while (dir * (x_end - x) > 0 && steps < max_steps) {
        ++steps;
        h = std::min(h, std::abs(x_end - x));
        double k[6];
        k[0] = f(x, y);
        bool bad = !std::isfinite(k[0]);
        for (int i = 1; i < 6 && !bad; ++i) {
            double yi = y;
            for (int j = 0; j < i; ++j) yi += dir * h * kB[i][j] * k[j];
            k[i] = f(x + dir * h * kA[i], yi);
            bad = !std::isfinite(k[i]);
        }
        double y5 = y, y4 = y;
        if (!bad) {
            for (int i = 0; i < 6; ++i) {
                y5 += dir * h * kC5[i] * k[i];
                y4 += dir * h * kC4[i] * k[i];
            }
        }
        const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y), std::abs(y5));
        const double err = bad ? std::numeric_limits<double>::infinity()
                               : std::abs(y5 - y4) / scale;
        if (opt.adaptive && err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
            if (h < hmin) {
                out.stalled = true;
                break;
            }
            continue;
        }
        const double x_next = x + dir * h;
        if (x_next == x) {  // step underflowed at this magnitude
            out.stalled = true;
            break;
        }
        x = x_next;
        y = y5;
        out.x.push_back(x);
        out.y.push_back(y);
        if (stop && stop(x, y)) {
            out.stopped_by_event = true;
            break;
        }
        if (opt.adaptive) {
            double grow = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
            if (opt.max_step > 0) h = std::min(h, opt.max_step);
        }
    }
    if (steps >= max_steps) out.stalled = true;
    return out;
}

double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0))
        throw std::invalid_argument("bisect: root not bracketed");
    for (int i = 0; i < max_iter; ++i) {
        double m = 0.5 * (a + b);
        if (m <= std::min(a, b) || m >= std::max(a, b)) break;  // bracket at ulp width
        double fm = f(m);
        if (fm == 0) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (std::abs(b - a) <= xtol) break;
    }
    return 0.5 * (a + b);
}

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y,
                           std::vector<double> dydx)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(dydx)) {
    if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size())
        throw std::invalid_argument("CubicHermite: inconsistent data");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("CubicHermite: knots must increase");
}

CubicHermite CubicHermite::pchip(std::vector<double> x, std::vector<double> y) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("pchip: need at least two points");
    std::vector<double> h(n - 1), delta(n - 1), d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0) {
                d[i] = 0.0;
            } else {
                const double w1 = 2 * h[i] + h[i - 1];
                const double w2 = h[i] + 2 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        auto end_slope = [](double h0, double h1, double d0, double d1) {
            double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (s * d0 <= 0) s = 0.0;
            else if (d0 * d1 <= 0 && std::abs(s) > 3 * std::abs(d0)) s = 3 * d0;
            return s;
        };
        d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
    return CubicHermite(std::move(x), std::move(y), std::move(d));
}

std::size_t CubicHermite::segment(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double CubicHermite::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double CubicHermite::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double h00 = (6 * t2 - 6 * t) / h;
    const double h10 = 3 * t2 - 4 * t + 1;
    const double h01 = (-6 * t2 + 6 * t) / h;
    const double h11 = 3 * t2 - 2 * t;
    return h00 * y_[i] + h10 * d_[i] + h01 * y_[i + 1] + h11 * d_[i + 1];
}

double central_derivative(double x0, double y0, double x1, double y1, double x2,
                          double y2) {
    const double hm = x1 - x0;
    const double hp = x2 - x1;
    return (hm * hm * y2 - hp * hp * y0 + (hp * hp - hm * hm) * y1) /
           (hp * hm * (hp + hm));
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return out;
}

}  // namespace hopf
