#pragma once

#include "hopf/profiles.hpp"

namespace hopf {

// The density f recovered from g = f + 5 t f' + 2 t^2 f''.  Among the
// two-parameter solution family only the particular solution bounded at 0
// survives the growth assumption; it is
//   f(t) = t^{-1/2} int_0^t s^{-1/2} g(s) ds  -  t^{-1} int_0^t g(s) ds,
// evaluated by cumulative Simpson on a grid uniform in ln t.
class LagrangianDensity {
  public:
    const std::vector<double>& t() const { return t_; }
    const std::vector<double>& f() const { return f_; }
    const std::vector<double>& fprime() const { return fp_; }

    // Constant extension below the first and above the last sample; the
    // derivative evaluator is the exact derivative of the value evaluator.
    double f_at(double t) const;
    double fprime_at(double t) const;

    // L(p) = 1/2 f(p^2) p^2 and its derivative in p.
    double L(double p) const;
    double Lprime(double p) const;

    // |f + 5 t f' + 2 t^2 f'' - g| at sample i with both derivatives taken
    // from log-space finite differences of the stored f samples (independent
    // of the construction path).  Interior samples only.
    double residual(std::size_t i) const;
    double max_interior_residual() const;

    friend LagrangianDensity solve_lagrangian_density(const DegeneracyProfile& p);

  private:
    DegeneracyProfile profile_ = DegeneracyProfile::laplacian();
    std::vector<double> tau_, t_, f_, fp_, phi_, dphi_;  // phi = f(e^tau)
    CubicHermite interp_;
};

LagrangianDensity solve_lagrangian_density(const DegeneracyProfile& p);

}  // namespace hopf
