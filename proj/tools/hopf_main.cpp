#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "hopf/report_io.hpp"

namespace fs = std::filesystem;
using namespace hopf;

namespace {

struct ProfileFlags {
    std::string family = "laplacian";
    double k = 2.0;
    double T = 2.0;
    double t_bar = 0.0;
    std::optional<double> extension;
    std::string csv_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family,
                        "profile family: laplacian|invlogpow|invlogsq|flat|tabulated");
        cmd->add_option("--k", k, "exponent for invlogpow");
        cmd->add_option("--T", T, "flat interval length for flat");
        cmd->add_option("--t-bar", t_bar, "override t_bar (invlogpow)");
        cmd->add_option("--extension", extension, "override the extension value");
        cmd->add_option("--csv", csv_path, "CSV with columns t,g,gprime for tabulated");
    }

    DegeneracyProfile build() const {
        DegeneracyProfile p = DegeneracyProfile::laplacian();
        switch (family_from_name(family)) {
            case Family::Laplacian: p = DegeneracyProfile::laplacian(); break;
            case Family::InverseLogPower:
                p = DegeneracyProfile::inverse_log_power(k, t_bar);
                break;
            case Family::InverseLogSquare: p = DegeneracyProfile::inverse_log_square(); break;
            case Family::FlatOnInterval: p = DegeneracyProfile::flat_on_interval(T); break;
            case Family::Tabulated: p = profile_from_csv(csv_path); break;
        }
        if (extension) p.set_extension_value(*extension);
        return p;
    }
};

std::string out_dir_default() {
    if (const char* env = std::getenv("HOPF_OUT_DIR")) return env;
    return ".";
}

void emit(const std::string& dir, const std::string& name, const json& j) {
    fs::create_directories(dir);
    write_text((fs::path(dir) / name).string(), j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
}

void write_field_csv(const std::string& path, const GridField& f) {
    std::vector<std::string> header;
    for (int i = 0; i < f.N; ++i) header.push_back("x" + std::to_string(i + 1));
    header.push_back("value");
    header.push_back("fixed");
    std::vector<std::vector<double>> rows;
    rows.reserve(f.size());
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        auto row = f.coords(idx);
        row.push_back(f.value[idx]);
        row.push_back(static_cast<double>(f.boundary[idx]));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

std::vector<std::vector<double>> mirror_polyline(
    const std::vector<std::pair<double, double>>& quarter, double part_id) {
    // quarter lives in {s >= 0, y >= 0} of the recentered meridian plane;
    // trace the full closed curve through the four sign quadrants
    std::vector<std::vector<double>> rows;
    auto push = [&](double x, double y) { rows.push_back({part_id, x, y}); };
    for (const auto& [s, y] : quarter) push(s, y);
    for (auto it = quarter.rbegin(); it != quarter.rend(); ++it) push(it->first, -it->second);
    for (const auto& [s, y] : quarter) push(-s, -y);
    for (auto it = quarter.rbegin(); it != quarter.rend(); ++it) push(-it->first, it->second);
    if (!quarter.empty()) push(quarter.front().first, quarter.front().second);
    return rows;
}

int run_figures(const std::string& kind, const ProfileFlags& pf, int N, double r,
                std::optional<double> eps_opt, std::optional<double> K_opt,
                std::optional<double> xibar, const std::string& dir) {
    const auto profile = pf.build();
    fs::create_directories(dir);
    if (kind == "fig1") {
        const auto dom = build_counterexample(profile, N);
        std::vector<std::vector<double>> rows;
        // outer curve rho = R(1-c^2), traced from -c_bar to c_bar (part 0)
        for (auto it = dom.curve.begin(); it != dom.curve.end(); ++it)
            rows.push_back({0.0, -it->c * it->R, std::sqrt(1.0 - it->c * it->c) * it->R});
        for (auto it = dom.curve.rbegin(); it != dom.curve.rend(); ++it)
            rows.push_back({0.0, it->c * it->R, std::sqrt(1.0 - it->c * it->c) * it->R});
        // radial edges (part 1) and the inner arc rho = 1 (part 2)
        const auto& edge = dom.curve.front();
        rows.push_back({1.0, edge.c * edge.R, std::sqrt(1.0 - edge.c * edge.c) * edge.R});
        rows.push_back({1.0, edge.c, std::sqrt(1.0 - edge.c * edge.c)});
        for (int j = 64; j >= -64; --j) {
            const double c = edge.c * j / 64.0;
            rows.push_back({2.0, c, std::sqrt(1.0 - c * c)});
        }
        rows.push_back({1.0, -edge.c, std::sqrt(1.0 - edge.c * edge.c)});
        rows.push_back({1.0, -edge.c * edge.R, std::sqrt(1.0 - edge.c * edge.c) * edge.R});
        write_csv((fs::path(dir) / "fig1.csv").string(), {"part", "x1", "xN"}, rows);
        json side = {{"R1", dom.R1}, {"c_bar", dom.c_bar}, {"N", N}};
        emit(dir, "fig1.json", side);
        return 0;
    }
    const double K = K_opt ? *K_opt : [&] {
        const auto Ke = estimate_K(profile, N);
        if (Ke.status != KStatus::Present)
            throw std::runtime_error("profile has no certified K; pass --K");
        return Ke.value;
    }();
    const double eps = eps_opt ? *eps_opt : r * (xibar ? *xibar : default_xibar(profile, K));
    const auto sub = assemble_glued_subsolution(profile, N, r, eps, K, false);
    if (kind == "fig2") {
        auto rows = mirror_polyline(sub.boundary_arc_points(false, 24), 0.0);
        auto outer = mirror_polyline(sub.boundary_arc_points(true, 24), 1.0);
        rows.insert(rows.end(), outer.begin(), outer.end());
        write_csv((fs::path(dir) / "fig2.csv").string(), {"part", "x1", "xN"}, rows);
        json side = {{"l", sub.l}, {"l_N", sub.lN}, {"R1", sub.R1}, {"pieces", sub.pieces.size()}};
        emit(dir, "fig2.json", side);
        return 0;
    }
    if (kind == "fig3") {
        auto rows = mirror_polyline(sub.boundary_arc_points(false, 24), 0.0);
        const double l = sub.l, lN = sub.lN;
        rows.push_back({1.0, l, lN});
        rows.push_back({1.0, -l, lN});
        rows.push_back({1.0, -l, -lN});
        rows.push_back({1.0, l, -lN});
        rows.push_back({1.0, l, lN});
        write_csv((fs::path(dir) / "fig3.csv").string(), {"part", "x1", "xN"}, rows);
        json side = {{"l", sub.l}, {"l_N", sub.lN}};
        emit(dir, "fig3.json", side);
        return 0;
    }
    throw CLI::ValidationError("--kind must be fig1|fig2|fig3");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for degenerate-operator maximum principles"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string dir = out_dir_default();
    app.add_option("--out-dir", dir, "output directory (default $HOPF_OUT_DIR or .)");

    ProfileFlags pf;
    int N = 2;
    double xi = 0.1, r = 1.0;
    std::optional<double> eps_opt, K_opt, xibar;
    std::string scale_name = "invn", scenario = "flat_g", kind = "fig1";
    int grid_n = 17;

    auto* analyze = app.add_subcommand("analyze", "assumption report for a profile");
    pf.attach(analyze);
    analyze->add_option("--n", N, "dimension");

    auto* gbudget = app.add_subcommand("gbudget", "budget integral G(xi)");
    pf.attach(gbudget);
    gbudget->add_option("--n", N, "dimension");
    gbudget->add_option("--xi", xi, "argument");
    gbudget->add_option("--scale", scale_name, "invn|one");

    auto* barrier = app.add_subcommand("barrier", "Hopf annulus barrier CSV");
    pf.attach(barrier);
    barrier->add_option("--n", N, "dimension");
    barrier->add_option("--r", r, "outer radius");
    barrier->add_option("--eps", eps_opt, "barrier height");

    auto* cex = app.add_subcommand("counterexample", "necessary-condition domain");
    pf.attach(cex);
    cex->add_option("--n", N, "dimension");

    auto* subs = app.add_subcommand("subsolution", "glued subsolution geometry");
    pf.attach(subs);
    subs->add_option("--n", N, "dimension");
    subs->add_option("--r", r, "collar width");
    subs->add_option("--eps", eps_opt,
                     "height (default r * xibar; explicit values skip the smallness gate)");
    subs->add_option("--xibar", xibar, "slope bound (default: largest admissible)");
    subs->add_option("--K", K_opt, "certified K (default: estimated)");

    auto* verify = app.add_subcommand("verify", "end-to-end scenario");
    verify->add_option("--scenario", scenario, "flat_g|laplacian|glued");
    verify->add_option("--grid", grid_n, "nodes per axis");
    verify->add_option("--n", N, "dimension");

    auto* figures = app.add_subcommand("figures", "figure geometry CSVs");
    pf.attach(figures);
    figures->add_option("--kind", kind, "fig1|fig2|fig3");
    figures->add_option("--n", N, "dimension");
    figures->add_option("--r", r, "collar width");
    figures->add_option("--eps", eps_opt, "height");
    figures->add_option("--xibar", xibar, "slope bound");
    figures->add_option("--K", K_opt, "certified K");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*analyze) {
            const auto rep = check_assumptions(pf.build(), N);
            json j = assumption_report_to_json(rep);
            j["profile"] = profile_to_json(pf.build());
            emit(dir, "analyze.json", j);
            return 0;
        }
        if (*gbudget) {
            const auto b = compute_G(pf.build(), N, xi, gscale_from_name(scale_name));
            emit(dir, "gbudget.json", gbudget_to_json(b));
            return 0;
        }
        if (*barrier) {
            const double eps = eps_opt ? *eps_opt : 0.5 * r * std::sqrt(pf.build().t_bar());
            RadialBarrier b;
            try {
                b = build_hopf_barrier(pf.build(), N, r, eps);
            } catch (const BudgetExhausted& e) {
                json j = {{"error", "budget exhausted"}, {"rho_out", e.rho_out}};
                emit(dir, "barrier.json", j);
                return 2;
            }
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < b.rho.size(); ++i)
                rows.push_back({b.rho[i], b.v[i], b.v_rho[i], b.v_rhorho[i]});
            fs::create_directories(dir);
            write_csv((fs::path(dir) / "barrier.csv").string(),
                      {"rho", "v", "v_rho", "v_rhorho"}, rows);
            json j = {{"rho_in", b.rho_in()}, {"rho_out", b.rho_out()},
                      {"v_at_inner", b.v.front()}, {"nodes", b.rho.size()}};
            emit(dir, "barrier.json", j);
            return 0;
        }
        if (*cex) {
            CounterexampleDomain dom;
            try {
                dom = build_counterexample(pf.build(), N);
            } catch (const NoCounterexample& e) {
                json j = {{"result", "no_counterexample"}, {"reason", e.what()}};
                emit(dir, "counterexample.json", j);
                return 2;
            }
            std::vector<std::vector<double>> rows;
            for (const auto& s : dom.curve) rows.push_back({s.c, s.R, s.dRdc});
            fs::create_directories(dir);
            write_csv((fs::path(dir) / "curve.csv").string(), {"c", "R", "dRdc"}, rows);
            json j = {{"R1", dom.R1},
                      {"c_bar", dom.c_bar},
                      {"normal_derivative_zero", dom.normal_derivative_zero},
                      {"regular_boundary", dom.regular_boundary},
                      {"interior_ball", dom.interior_ball},
                      {"dRdc_tail", dom.dRdc_tail},
                      {"profile", profile_to_json(pf.build())}};
            emit(dir, "counterexample.json", j);
            return 0;
        }
        if (*subs) {
            const auto profile = pf.build();
            double K;
            if (K_opt) {
                K = *K_opt;
            } else {
                const auto Ke = estimate_K(profile, N);
                if (Ke.status != KStatus::Present) {
                    json j = {{"result", "inapplicable"},
                              {"reason", Ke.status == KStatus::Inapplicable
                                             ? "budget integral diverges"
                                             : "no finite K certifies the profile"}};
                    emit(dir, "subsolution.json", j);
                    return 2;
                }
                K = Ke.value;
            }
            const double eps = eps_opt ? *eps_opt
                                       : r * (xibar ? *xibar : default_xibar(profile, K));
            const auto sub = assemble_glued_subsolution(profile, N, r, eps, K,
                                                        /*enforce_smallness=*/!eps_opt);
            json j;
            j["R1"] = sub.R1;
            j["l"] = sub.l;
            j["l_N"] = sub.lN;
            j["K"] = K;
            j["eps"] = eps;
            j["S1"] = sub.part.S1;
            j["S2"] = sub.part.S2;
            j["sigma"] = sub.part.sigma;
            j["pieces"] = sub.pieces.size();
            j["S1_within_2Kr"] = sub.part.s1_within_bound;
            j["S2_within_r4"] = sub.part.s2_within_bound;
            emit(dir, "subsolution.json", j);
            std::vector<std::vector<double>> rows;
            for (const auto& [s, y] : sub.boundary_arc_points(false, 16))
                rows.push_back({0.0, s, y});
            for (const auto& [s, y] : sub.boundary_arc_points(true, 16))
                rows.push_back({1.0, s, y});
            write_csv((fs::path(dir) / "subsolution_boundaries.csv").string(),
                      {"part", "s", "xN"}, rows);
            std::vector<std::vector<double>> lrows;
            const double vmax = sub.inner_value();
            int li = 0;
            for (double frac : {0.75, 0.5, 0.25, 0.1}) {
                for (const auto& [s, y] : sub.level_set_points(frac * vmax, 16))
                    lrows.push_back({static_cast<double>(li), frac * vmax, s, y});
                ++li;
            }
            write_csv((fs::path(dir) / "subsolution_levels.csv").string(),
                      {"level_index", "level", "s", "xN"}, lrows);
            return 0;
        }
        if (*verify) {
            ScenarioConfig cfg;
            cfg.N = N;
            cfg.grid_n = grid_n;
            const auto rep = smp_scenario(scenario, cfg);
            emit(dir, "verify_" + scenario + ".json", scenario_to_json(rep));
            for (const auto& [label, field] : rep.fields)
                write_field_csv(
                    (fs::path(dir) / ("verify_" + scenario + "_" + label + ".csv")).string(),
                    field);
            return rep.passed ? 0 : 1;
        }
        if (*figures) return run_figures(kind, pf, N, r, eps_opt, K_opt, xibar, dir);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const NoCounterexample& e) {
        std::cerr << "verified negative: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExhausted& e) {
        std::cerr << "verified negative: " << e.what() << "\n";
        return 2;
    } catch (const SmallnessViolated& e) {
        std::cerr << "verified negative: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 64;
}
