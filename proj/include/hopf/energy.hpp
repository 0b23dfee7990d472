#pragma once

#include "hopf/grid.hpp"
#include "hopf/lagrangian.hpp"

namespace hopf {

// Discrete energy J_h(u) = sum over forward-difference links of
// 1/2 f_i(D_i u^2) D_i u^2 h^N; convex in the node values whenever each
// density is (guaranteed by g >= 0 on the admissible range).
struct EnergyModel {
    int N = 2;
    std::vector<LagrangianDensity> f;  // per axis

    static EnergyModel from_profiles(const OperatorProfiles& ops);

    double energy(const GridField& u) const;
    // dJ/du at every node (boundary nodes included; the minimizer projects
    // them out)
    std::vector<double> gradient(const GridField& u) const;
};

struct MinimizeResult {
    GridField field;
    double grad_norm = 0.0;  // over free nodes
    int iterations = 0;
    bool converged = false;
};

// Gradient descent with backtracking line search over the free nodes of the
// start field (boundary mask fixed), run to the given projected-gradient
// norm.  The minimizer is unique by strict convexity.
MinimizeResult minimize_energy(const EnergyModel& m, const GridField& start,
                               double grad_tol = 1e-8, int max_iter = 200000);

struct ComparisonResult {
    bool ordered = false;
    double worst_gap = 0.0;  // max(sub - super)
    std::size_t worst_node = 0;
    GridField sub_solved, super_solved;
};

// Lemma-style comparison: minimizes both boundary-value problems and checks
// sub <= super + tol nodewise.  Boundary ordering is a precondition.
ComparisonResult comparison_check(const EnergyModel& m, const GridField& sub_bc,
                                  const GridField& super_bc, double tol);

// Direct nodewise comparison of two given fields.
ComparisonResult nodewise_leq(const GridField& sub, const GridField& super, double tol);

}  // namespace hopf
