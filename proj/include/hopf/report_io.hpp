#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hopf/counterexample.hpp"
#include "hopf/gbudget.hpp"
#include "hopf/profiles.hpp"
#include "hopf/subsolution.hpp"
#include "hopf/verifier.hpp"

namespace hopf {

// All numeric output is printed with 17 significant digits so that reruns
// are byte-identical and round-trip exactly.
std::string fmt17(double x);

using json = nlohmann::json;

json profile_to_json(const DegeneracyProfile& p);
DegeneracyProfile profile_from_json(const json& j);
DegeneracyProfile profile_from_csv(const std::string& path);  // columns t,g,gprime

json gbudget_to_json(const GBudget& b);
json assumption_report_to_json(const AssumptionReport& r);
json scenario_to_json(const ScenarioReport& r);
json placement_to_json(const PlacementReport& r);

void write_text(const std::string& path, const std::string& content);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace hopf
