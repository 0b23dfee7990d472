#pragma once

#include <string>

#include "hopf/energy.hpp"
#include "hopf/grid.hpp"
#include "hopf/subsolution.hpp"

namespace hopf {

// Central-difference evaluation of the operator at every full-stencil node;
// boundary mask marks the nodes where the residual is NOT defined.
GridField fd_apply_F(const GridField& u, const OperatorProfiles& ops);

enum class SignMode { Sub, Super };

struct SignVerdict {
    bool ok = false;
    std::size_t worst_node = 0;
    double worst_value = 0.0;
};

// Sub: residuals >= -tol everywhere; Super: residuals <= tol.
SignVerdict check_sign(const GridField& residual, SignMode mode, double tol);

struct ScenarioReport {
    std::string name;
    bool violated = false;  // strong maximum principle violated
    bool passed = false;    // scenario self-checks
    std::vector<std::pair<std::string, double>> numbers;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, GridField>> fields;  // CSV-exportable
    double number(const std::string& key) const;
};

struct ScenarioConfig {
    int N = 2;
    int grid_n = 17;
};

// Named end-to-end scenarios: flat_g (the coefficients vanishing on an
// interval defeat the principle), laplacian (boundary minimum of the discrete
// minimizer), glued (comparison against the placed subsolution).
ScenarioReport smp_scenario(const std::string& name, const ScenarioConfig& cfg = {});

}  // namespace hopf
