#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hopf {

// Adaptive Gauss-Kronrod (G7,K15) quadrature on a finite interval.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    int panels = 0;
};

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12, double abs_tol = 1e-15,
                     int max_panels = 4000);

// Convenience wrapper that throws on non-convergence.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 1e-15);

// One adaptive Cash-Karp RK45 solve of a scalar ODE y' = f(x, y).
// Nodes of every accepted step are recorded.  Integration stops when x
// reaches x_end, when stop(x, y) returns true, or when the step size
// underflows (reported via `stalled`).
struct OdeResult {
    std::vector<double> x;
    std::vector<double> y;
    bool stopped_by_event = false;
    bool stalled = false;
};

struct OdeOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step = 0.0;   // 0 = unrestricted
    double initial_step = 0.0;
    bool adaptive = true;    // false: march at max_step with single RK45 steps
};

OdeResult ode_solve(const std::function<double(double, double)>& f,
                    double x0, double y0, double x_end,
                    const OdeOptions& opt = {},
                    const std::function<bool(double, double)>& stop = nullptr);

// Bisection for a continuous function with f(a) and f(b) of opposite sign.
// Runs until the bracket width drops below xtol (absolute) or max_iter.
double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol = 0.0, int max_iter = 200);

// Piecewise cubic Hermite interpolant on strictly increasing knots.
// Slopes may be supplied (Hermite data) or derived from the values with the
// Fritsch-Carlson monotone formula (pchip).
class CubicHermite {
  public:
    CubicHermite() = default;
    CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dydx);

    static CubicHermite pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    bool empty() const { return x_.empty(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

  private:
    std::size_t segment(double x) const;
    std::vector<double> x_, y_, d_;
};

// Nonuniform centered three-point first derivative at x1 given samples at
// x0 < x1 < x2.
double central_derivative(double x0, double y0, double x1, double y1, double x2, double y2);

// Cumulative trapezoid: out[i] = integral from x[0] to x[i].
std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& y);

}  // namespace hopf
