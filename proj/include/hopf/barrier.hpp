#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "hopf/gbudget.hpp"
#include "hopf/profiles.hpp"

namespace hopf {

struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(double rho_out_)
        : std::runtime_error("barrier budget exhausts at rho = " + std::to_string(rho_out_)),
          rho_out(rho_out_) {}
    double rho_out;
};

struct DegenerateCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One-dimensional radial profile produced by the barrier ODE
//   zeta' = -(N-1)/rho * zeta / g(zeta^2 [/N]),   zeta = v_rho < 0,
// together with v recovered by the trapezoid rule from the outer end and
// v_rhorho from the ODE right-hand side.  lam = ln(-v_rho) is stored for
// stable queries deep in the tail.
class RadialBarrier {
  public:
    int N = 2;
    GScale scale = GScale::One;
    DegeneracyProfile profile = DegeneracyProfile::laplacian();
    std::vector<double> rho, v, v_rho, v_rhorho, lam;
    bool exhausted = false;   // v_rho reaches 0 at rho_out

    double rho_in() const { return rho.front(); }
    double rho_out() const { return rho.back(); }

    void finalize();  // builds interpolants; called by the constructors below

    double lam_at(double r) const;
    double v_rho_at(double r) const;
    double v_at(double r) const;
    double v_rhorho_at(double r) const;

    // g(zeta^2 [/N]) at the profile's own scale, stable in the tail.
    double g_of_zeta_log(double lam_zeta) const;

  private:
    CubicHermite lam_interp_, v_interp_;
    std::size_t lam_nodes_ = 0;  // nodes carrying finite lam
};

// Integrates the Cauchy problem forward from rho0 until the budget exhausts
// (finite G) or rho reaches rho_max.  zeta0 must be negative and the
// coefficient positive at the initial argument.  max_step = 0 leaves the
// step choice to the adaptive controller; fixed_step marches at exactly
// max_step (refinement studies).
RadialBarrier solve_barrier_ode(const DegeneracyProfile& p, int N, double rho0,
                                double zeta0, GScale scale, double rho_max,
                                double max_step = 0.0, bool fixed_step = false);

// Annulus barrier of the Hopf lemma: zeta(r/2) = -eps/r integrated to rho = r
// with the InvN scaling; v(r) = 0, v(r/2) <= eps.  Throws BudgetExhausted when
// a finite budget runs out before rho = r.
RadialBarrier build_hopf_barrier(const DegeneracyProfile& p, int N, double r, double eps);

// Residual of the implicit relation G(zeta(rho)) - G(zeta0) = -(N-1) ln(rho/rho0)
// at node i, evaluated through the partial budget integral.
double implicit_relation_residual(const RadialBarrier& b, std::size_t i);

struct PolarDirection {
    std::vector<double> d;  // unit vector
    explicit PolarDirection(std::vector<double> dir);
    double a() const { return d.back() * d.back(); }  // sin^2 theta_{N-1}
};

PolarDirection random_direction(std::mt19937_64& rng, int N);

struct RadialFResult {
    double value = 0.0;        // exact radial formula with per-axis coefficients
    double lower_bound = 0.0;  // v_rhorho g_N(v_rho^2/N) + (N-1) v_rho / rho
};

RadialFResult radial_F(const OperatorProfiles& ops, const RadialBarrier& b,
                       const PolarDirection& dir, double rho);

}  // namespace hopf
