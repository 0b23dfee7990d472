#include "hopf/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hopf {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json profile_to_json(const DegeneracyProfile& p) {
    json j;
    j["family"] = family_name(p.family());
    j["t_bar"] = p.t_bar();
    j["extension_value"] = p.extension_value();
    json params = json::object();
    switch (p.family()) {
        case Family::InverseLogPower:
        case Family::InverseLogSquare:
            params["k"] = p.k();
            break;
        case Family::FlatOnInterval:
            params["T"] = p.t_bar();
            break;
        case Family::Tabulated:
            params["t"] = p.tab_t();
            params["g"] = p.tab_g();
            params["gprime"] = p.tab_gprime();
            break;
        default:
            break;
    }
    j["params"] = params;
    return j;
}

DegeneracyProfile profile_from_json(const json& j) {
    const auto fam = family_from_name(j.at("family").get<std::string>());
    DegeneracyProfile p = DegeneracyProfile::laplacian();
    switch (fam) {
        case Family::Laplacian:
            p = DegeneracyProfile::laplacian();
            break;
        case Family::InverseLogPower:
            p = DegeneracyProfile::inverse_log_power(
                j.at("params").at("k").get<double>(),
                j.contains("t_bar") ? j["t_bar"].get<double>() : 0.0);
            break;
        case Family::InverseLogSquare:
            p = DegeneracyProfile::inverse_log_square();
            break;
        case Family::FlatOnInterval:
            p = DegeneracyProfile::flat_on_interval(j.at("params").at("T").get<double>());
            break;
        case Family::Tabulated:
            p = DegeneracyProfile::tabulated(j.at("params").at("t").get<std::vector<double>>(),
                                             j.at("params").at("g").get<std::vector<double>>(),
                                             j.at("params").at("gprime").get<std::vector<double>>());
            break;
    }
    if (j.contains("extension_value")) p.set_extension_value(j["extension_value"].get<double>());
    return p;
}

DegeneracyProfile profile_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> t, g, gp;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.find_first_of("0123456789-+.") != 0) continue;  // header
        std::istringstream ss(line);
        double a, b, c;
        char comma;
        if (ss >> a >> comma >> b >> comma >> c) {
            t.push_back(a);
            g.push_back(b);
            gp.push_back(c);
        }
    }
    return DegeneracyProfile::tabulated(std::move(t), std::move(g), std::move(gp));
}

json gbudget_to_json(const GBudget& b) {
    json j;
    j["xi"] = b.xi;
    j["scale"] = gscale_name(b.scale);
    if (b.divergent) {
        j["value"] = "divergent";
    } else {
        j["value"] = b.value;
    }
    return j;
}

json assumption_report_to_json(const AssumptionReport& r) {
    json j;
    j["L_i_ordering"] = r.L_i_ordering;
    j["L_ii_positivity"] = r.L_ii_positivity;
    j["L_iii_monotone"] = r.L_iii_monotone;
    j["extra_monotone_g"] = r.extra_monotone_g;
    j["extra_sum_bound"] = r.extra_sum_bound;
    if (r.limit_ratio) {
        switch (r.limit_ratio->cls) {
            case LimitClass::Zero: j["limit_ratio"] = {{"class", "zero"}}; break;
            case LimitClass::Positive:
                j["limit_ratio"] = {{"class", "positive"}, {"value", r.limit_ratio->value}};
                break;
            case LimitClass::Infinite: j["limit_ratio"] = {{"class", "infinite"}}; break;
        }
    } else {
        j["limit_ratio"] = {{"class", "inapplicable"}};
    }
    j["C2_bounded"] = r.C2_bounded;
    if (r.C2_bounded) j["C2_bound"] = r.C2_bound;
    switch (r.K.status) {
        case KStatus::Present: j["K_estimate"] = r.K.value; break;
        case KStatus::Absent: j["K_estimate"] = "absent"; break;
        case KStatus::Inapplicable: j["K_estimate"] = "inapplicable"; break;
    }
    return j;
}

json scenario_to_json(const ScenarioReport& r) {
    json j;
    j["scenario"] = r.name;
    j["violated"] = r.violated;
    j["passed"] = r.passed;
    for (const auto& [k, v] : r.numbers) j[k] = v;
    j["notes"] = r.notes;
    return j;
}

json placement_to_json(const PlacementReport& r) {
    json j;
    j["r_bound_ok"] = r.r_bound_ok;
    j["r_max"] = r.r_max;
    j["first_quadrant"] = r.first_quadrant;
    j["box_in_ball"] = r.box_in_ball;
    j["chain_inequality"] = r.chain_inequality;
    j["z_in_collar"] = r.z_in_collar;
    j["q"] = r.q;
    j["qstar"] = r.qstar;
    j["dist_z_Astar"] = r.dist_z_Astar;
    j["v_at_z"] = r.v_at_z;
    return j;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << fmt17(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
    write_text(path, out.str());
}

}  // namespace hopf
