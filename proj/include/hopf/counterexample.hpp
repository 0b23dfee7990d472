#pragma once

#include <stdexcept>
#include <vector>

#include "hopf/barrier.hpp"

namespace hopf {

// The hypotheses of the necessary condition fail for this profile; a domain
// on which the Hopf lemma breaks cannot be built from it.
struct NoCounterexample : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveSample {
    double c = 0.0;        // cos theta_{N-1}
    double a = 0.0;        // 1 - c^2
    double R = 0.0;        // radius solving R1 (1-a) - g(u_rho(R)^2)/2 = 0
    double lam_t = 0.0;    // ln t(c), t(c) = u_rho(R)^2
    double dRdc = 0.0;     // d/dc R(1-c^2) via the h-inverse formula
    double inv_c_dRdc = 0.0;
};

struct CounterexampleOptions {
    double c_min = 1e-6;       // curve sampling floor
    double c_ratio = 0.985;    // geometric ratio between consecutive c
    double deep_c_min = 1e-12; // formula-only scan floor (closed forms)
};

// The region of the necessary condition: the barrier v on [2, R1+1], the
// shifted supersolution u(rho) = v(rho+1) on (1, R1], and the sampled
// boundary curve c -> R(1-c^2) with its derivative estimates.
class CounterexampleDomain {
  public:
    int N = 2;
    DegeneracyProfile profile = DegeneracyProfile::laplacian();
    double R1 = 0.0;
    double c_bar = 0.0;
    RadialBarrier v;                 // Cauchy solution, zeta(2) = -1, scale One
    std::vector<CurveSample> curve;  // c descending from ~c_bar to c_min
    std::vector<CurveSample> deep;   // formula-only tail, down to deep_c_min

    bool normal_derivative_zero = false;
    bool regular_boundary = false;
    bool interior_ball = false;
    double dRdc_tail = 0.0;        // |dR/dc| at the deepest evaluated c
    double interior_ball_bound = 0.0;
    bool c2_bounded_flag = false;  // from the assumption report, for cross-checks

    // shifted supersolution u(rho) = v(rho + 1)
    double u_at(double r) const { return v.v_at(r + 1.0); }
    double u_rho(double r) const { return v.v_rho_at(r + 1.0); }
    double u_rhorho(double r) const { return v.v_rhorho_at(r + 1.0); }

    // ln |u_rho(r)|; closed-form budgets invert the implicit relation, which
    // stays accurate arbitrarily close to the exhaustion radius.
    double lam_u_rho(double r) const;
    double g_at_urho(double r) const;  // g(u_rho(r)^2)
    double h_of_r(double r) const;     // sqrt(g(u_rho(r)^2) / (2 R1))

    // radius solving the defining identity for given c, by monotone bisection
    double R_of_c(double c) const;
    double eqA_residual(double c, double R) const;  // |R1 c^2 - g(u_rho(R)^2)/2|

    // radial operator value at angular parameter a = sin^2 theta_{N-1}
    double F_radial(double rho, double a) const;
    // k(rho): F(u) <= 0 on (1, R(a)) iff k stays <= 0; non-decreasing in rho
    double k_of_rho(double rho, double a) const;

    double dRdc_formula(double R) const;

  private:
    friend CounterexampleDomain build_counterexample(const DegeneracyProfile&, int,
                                                     const CounterexampleOptions&);
    double G1_total_ = 0.0;  // G(|zeta(2)|) in the One scaling
};

CounterexampleDomain build_counterexample(const DegeneracyProfile& p, int N,
                                          const CounterexampleOptions& opt = {});

// Recomputes the regularity verdict: the derivative formula evaluated toward
// c -> 0 and finite differences of the sampled curve must agree (relative
// 1e-4 where the curve resolves the derivative) and tend below tolerance.
bool verify_boundary_regularity(const CounterexampleDomain& dom);

// Bounded second derivative of the boundary curve at the tangency point,
// certified through (1/c) dR/dc; cross-checked against the C2 flag.
bool verify_interior_ball(const CounterexampleDomain& dom);

}  // namespace hopf
