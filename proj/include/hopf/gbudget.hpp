#pragma once

#include <string>

#include "hopf/profiles.hpp"

namespace hopf {

// Which argument the budget integrand carries: g(zeta^2/N)/zeta (the section-3
// definition) or g(zeta^2)/zeta (the scaling used inside the section-4/5
// proofs).  Divergence class agrees between the two; values do not, so every
// caller states which one it means.
enum class GScale { InvN, One };

std::string gscale_name(GScale s);
GScale gscale_from_name(const std::string& s);

enum class GClass { Finite, Divergent };

struct GBudget {
    double xi = 0.0;
    GScale scale = GScale::InvN;
    bool divergent = false;
    double value = 0.0;  // finite case only
};

// G(xi) = int_0^|xi| g(zeta^2[/N]) / zeta dzeta, even in xi, +inf when the
// integral diverges at 0.
GBudget compute_G(const DegeneracyProfile& p, int N, double xi, GScale scale);

GClass classify_G(const DegeneracyProfile& p, int N, GScale scale);

// Closed-form G where the family admits one (inverse-log families, flat,
// Laplacian); throws std::logic_error otherwise.  Piecewise: exact
// antiderivative below t_bar plus the constant-extension logarithm above.
bool has_closed_G(const DegeneracyProfile& p);
GBudget closed_G(const DegeneracyProfile& p, int N, double xi, GScale scale);

// Closed-form G evaluated at |xi| = e^lam; stable arbitrarily deep in the
// tail.  Finite-budget profiles only.
double closed_G_log(const DegeneracyProfile& p, int N, double lam, GScale scale);

// Inverse of lam -> closed_G_log: the log-magnitude at which the budget
// equals Gtarget (0 < Gtarget <= G at lam_hint domain).  Bisection in lam.
double lambda_of_G(const DegeneracyProfile& p, int N, double Gtarget, GScale scale);

// Partial budget int over zeta in [z_lo, z_hi] of g(zeta^2[/N])/zeta, with
// 0 < z_lo <= z_hi.  Finite even for divergent budgets; used by the implicit
// ODE relation.
double G_between(const DegeneracyProfile& p, int N, double z_lo, double z_hi, GScale scale);

// Purely numeric evaluation (quadrature in log space with a deepening lower
// cutoff); the oracle the closed forms are tested against.
GBudget numeric_G(const DegeneracyProfile& p, int N, double xi, GScale scale);

}  // namespace hopf
