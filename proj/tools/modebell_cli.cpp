// Copyright 2026 modebell contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every command is deterministic for a fixed
// configuration (including the seed) and emits schema-stable JSON or CSV.
// Exit codes: 0 success, 2 validation failure, 3 runtime failure (e.g. a
// preparation that never passes post-selection).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "modebell/analytic.hpp"
#include "modebell/json_io.hpp"
#include "modebell/montecarlo.hpp"

namespace {

using namespace modebell;

constexpr double kPi = std::numbers::pi;

struct CommonOptions {
    double alpha_sq = 0.5;
    double gamma = 0.0;
    double q_sq = 0.5;
    double transmittivity = 0.5;
    std::string angles = "optimal";
    std::string output;
    std::string format;
    std::optional<double> mix_p;
    std::optional<double> phase_d;
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] =
            n == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(n - 1);
    }
    return grid;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + output_path);
    out << text;
}

void emit_json(const Json& j, const std::string& output_path) {
    emit(j.dump(2) + "\n", output_path);
}

void require_format(const std::string& format, const std::string& expected) {
    if (!format.empty() && format != expected) {
        throw std::invalid_argument("this command only supports --format " + expected);
    }
}

SystemBranches branches_for(const CommonOptions& opt) {
    if (opt.mix_p) {
        return branches_of(balanced_mixed_prep(*opt.mix_p, opt.gamma));
    }
    return branches_of(SystemPrep::from_weights(opt.alpha_sq, opt.gamma));
}

ChshSettings parse_angle_list(const std::string& text) {
    std::array<double, 4> vals{};
    std::stringstream ss(text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= 4) throw std::invalid_argument("--angles expects four comma-separated values");
        std::size_t used = 0;
        vals[k] = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("--angles: bad number: " + item);
        ++k;
    }
    if (k != 4) throw std::invalid_argument("--angles expects four comma-separated values");
    return {vals[0], vals[1], vals[2], vals[3]};
}

ChshSettings resolve_settings(const CommonOptions& opt, const SystemBranches& branches,
                              const ReferenceSpec& ref) {
    if (opt.phase_d) {
        // Pure-optimal offsets at the chosen phase d = gamma + a1 - b1;
        // d = -pi/4 coincides with the optimal settings.
        return surface_settings(opt.gamma, *opt.phase_d);
    }
    if (opt.angles == "optimal") {
        return optimal_settings(opt.gamma, 0.0);
    }
    if (opt.angles == "optimal-search") {
        const auto objective = [&](const ChshSettings& s) {
            try {
                return chsh(branches, ref, ref, s, opt.transmittivity);
            } catch (const PostSelectionError&) {
                return 0.0;
            }
        };
        return maximize_chsh(objective, uniform_angle_grid(72), 1e-8,
                             {optimal_settings(opt.gamma, 0.0)})
            .settings;
    }
    return parse_angle_list(opt.angles);
}

int cmd_chsh(const CommonOptions& opt) {
    require_format(opt.format, "json");
    const SystemBranches branches = branches_for(opt);
    const ReferenceSpec ref = ReferenceSpec::biased(opt.q_sq);
    const ChshSettings settings = resolve_settings(opt, branches, ref);

    const std::array<std::pair<const char*, std::pair<double, double>>, 4> pairs = {{
        {"a1b1", {settings.theta_a1, settings.theta_b1}},
        {"a1b2", {settings.theta_a1, settings.theta_b2}},
        {"a2b1", {settings.theta_a2, settings.theta_b1}},
        {"a2b2", {settings.theta_a2, settings.theta_b2}},
    }};
    Json e = Json::object();
    Json select = Json::object();
    double c = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [name, angles] = pairs[k];
        const CoincidenceTable table =
            run_experiment(branches, ref.with_theta(angles.first),
                           ref.with_theta(angles.second), opt.transmittivity);
        const double e_val = correlation(table);
        e[name] = e_val;
        select[name] = table.p_select;
        c += (k == 3 ? -e_val : e_val);
    }
    emit_json(Json{{"settings", to_json(settings)},
                   {"E", std::move(e)},
                   {"C", std::abs(c)},
                   {"p_select", std::move(select)}},
              opt.output);
    return 0;
}

int cmd_scan(const CommonOptions& opt, int p_points, int d_points) {
    if (p_points < 2 || d_points < 2) {
        throw std::invalid_argument("scan: grid resolutions must be >= 2");
    }
    const auto surface = c_mixed_surface(linspace(0.0, 1.0, p_points),
                                         linspace(-kPi, kPi, d_points));
    if (opt.format == "json") {
        Json points = Json::array();
        for (const SurfacePoint& s : surface) {
            points.push_back(Json{{"p", s.p}, {"d", s.d}, {"C", s.c}});
        }
        emit_json(Json{{"points", std::move(points)}}, opt.output);
    } else {
        require_format(opt.format, "csv");
        emit(surface_csv(surface), opt.output);
    }
    return 0;
}

int cmd_boundary(const CommonOptions& opt, double tol, int d_points) {
    require_format(opt.format, "json");
    const ViolationBoundary boundary = violation_boundary(tol, d_points);
    emit_json(Json{{"p_star", boundary.lower}, {"p_star_upper", boundary.upper}},
              opt.output);
    return 0;
}

int cmd_shots(const CommonOptions& opt, std::uint64_t shots, std::uint64_t seed) {
    require_format(opt.format, "json");
    const SystemBranches branches = branches_for(opt);
    const ReferenceSpec ref = ReferenceSpec::biased(opt.q_sq);
    const ChshSettings settings = resolve_settings(opt, branches, ref);
    const EstimatorResult result =
        estimate_chsh(branches, settings, ref, ref, opt.transmittivity, shots, seed);
    emit_json(to_json(result), opt.output);
    return 0;
}

int cmd_horodecki(const CommonOptions& opt, double p) {
    require_format(opt.format, "json");
    const double value =
        horodecki_max_chsh(TwoQubitState::from_prep(balanced_mixed_prep(p, opt.gamma)));
    emit_json(Json{{"p", p}, {"gamma1", opt.gamma}, {"max_chsh", value}}, opt.output);
    return 0;
}

int cmd_separable(const CommonOptions& opt, int total_n, int weight_points, int angle_points) {
    require_format(opt.format, "json");
    const SeparableScanResult result =
        separable_scan(total_n, linspace(0.0, 1.0, weight_points),
                       uniform_angle_grid(angle_points), opt.transmittivity);
    emit_json(Json{{"n", total_n},
                   {"max_c", result.max_c},
                   {"best_weights", result.best_weights},
                   {"best_settings", to_json(result.best_settings)},
                   {"points_scanned", result.points_scanned}},
              opt.output);
    return 0;
}

int cmd_biased(const CommonOptions& opt, const std::vector<double>& q_sq_values,
               int grid_points, int angle_points) {
    require_format(opt.format, "json");
    const std::vector<double> grid =
        q_sq_values.empty() ? linspace(0.05, 0.95, grid_points) : q_sq_values;
    const auto points = biased_reference_scan(grid, angle_points);
    Json rows = Json::array();
    double max_c = 0.0;
    for (const BiasedScanPoint& point : points) {
        max_c = std::max(max_c, point.max_c);
        rows.push_back(Json{{"qsq", point.q_sq},
                            {"C", point.max_c},
                            {"p_select", point.p_select},
                            {"settings", to_json(point.settings)}});
    }
    emit_json(Json{{"points", std::move(rows)}, {"max_c", max_c}}, opt.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator and analysis toolkit for a single-boson "
                 "two-mode Bell test with beamsplitter-and-reference measurements"};
    app.require_subcommand(1);

    CommonOptions opt;
    double mix_p = 0.0;
    double phase_d = 0.0;
    auto add_common = [&](CLI::App* cmd, bool with_prep) {
        cmd->add_option("--output", opt.output, "Write the result to this file");
        cmd->add_option("--format", opt.format, "Output format (json or csv)");
        if (with_prep) {
            cmd->add_option("--alpha-sq", opt.alpha_sq, "|alpha|^2 of the preparation")
                ->check(CLI::Range(0.0, 1.0));
            cmd->add_option("--gamma", opt.gamma, "Relative phase of the preparation");
            cmd->add_option("--qsq", opt.q_sq, "|q|^2 of both references")
                ->check(CLI::Range(0.0, 1.0));
            cmd->add_option("--transmittivity", opt.transmittivity,
                            "Beamsplitter intensity transmittivity")
                ->check(CLI::Range(0.0, 1.0));
            cmd->add_option("--angles", opt.angles,
                            "optimal | optimal-search | four comma-separated phases");
            cmd->add_option("--p", mix_p,
                            "Mix the balanced two-branch family at this probability "
                            "instead of a pure preparation")
                ->check(CLI::Range(0.0, 1.0));
            cmd->add_option("--d", phase_d,
                            "Measure at the pure-optimal offsets with this phase "
                            "d = gamma + theta_a1 - theta_b1 (overrides --angles)");
        }
    };

    CLI::App* chsh_cmd = app.add_subcommand("chsh", "Exact CHSH value");
    add_common(chsh_cmd, true);

    CLI::App* scan_cmd = app.add_subcommand("scan", "C over the (p, d) mixing surface");
    int p_points = 101, d_points = 181;
    scan_cmd->add_option("--p-points", p_points, "Grid points in p");
    scan_cmd->add_option("--d-points", d_points, "Grid points in d");
    add_common(scan_cmd, false);

    CLI::App* boundary_cmd =
        app.add_subcommand("boundary", "Mixing probability where the violation vanishes");
    double tol = 1e-9;
    int boundary_d_points = 360;
    boundary_cmd->add_option("--tol", tol, "Bisection tolerance");
    boundary_cmd->add_option("--d-points", boundary_d_points, "d-grid for the inner maximum");
    add_common(boundary_cmd, false);

    CLI::App* shots_cmd = app.add_subcommand("shots", "Finite-statistics CHSH estimate");
    std::uint64_t shots = 100000, seed = 0;
    shots_cmd->add_option("--shots", shots, "Shots per setting (>= 100)");
    shots_cmd->add_option("--seed", seed, "Master RNG seed");
    add_common(shots_cmd, true);

    CLI::App* horodecki_cmd =
        app.add_subcommand("horodecki", "Maximal CHSH value of the mixed family");
    double horodecki_p = 0.0;
    horodecki_cmd->add_option("--p", horodecki_p, "Mixing probability")
        ->check(CLI::Range(0.0, 1.0));
    horodecki_cmd->add_option("--gamma", opt.gamma, "Branch phase gamma1");
    horodecki_cmd->add_option("--output", opt.output, "Write the result to this file");
    horodecki_cmd->add_option("--format", opt.format, "Output format (json)");

    CLI::App* separable_cmd =
        app.add_subcommand("separable", "Max CHSH over number-diagonal separable states");
    int total_n = 1, weight_points = 11, angle_points = 72;
    separable_cmd->add_option("--n", total_n, "Total particle number (1 or 2)");
    separable_cmd->add_option("--weight-points", weight_points, "Weight grid resolution");
    separable_cmd->add_option("--angle-points", angle_points, "Angle grid resolution");
    separable_cmd
        ->add_option("--transmittivity", opt.transmittivity, "Beamsplitter transmittivity")
        ->check(CLI::Range(0.0, 1.0));
    separable_cmd->add_option("--output", opt.output, "Write the result to this file");
    separable_cmd->add_option("--format", opt.format, "Output format (json)");

    CLI::App* biased_cmd =
        app.add_subcommand("biased", "Violation robustness against reference bias");
    std::vector<double> q_sq_values;
    int biased_grid_points = 11, biased_angle_points = 72;
    biased_cmd->add_option("--qsq", q_sq_values, "Specific |q|^2 values to evaluate");
    biased_cmd->add_option("--points", biased_grid_points,
                           "Grid resolution when --qsq is not given");
    biased_cmd->add_option("--angle-points", biased_angle_points, "Angle grid resolution");
    biased_cmd->add_option("--output", opt.output, "Write the result to this file");
    biased_cmd->add_option("--format", opt.format, "Output format (json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (shots_cmd->parsed() && shots < 100) {
        std::cerr << "error: --shots must be at least 100 per setting\n";
        return 2;
    }
    if (chsh_cmd->count("--p") || shots_cmd->count("--p")) {
        opt.mix_p = mix_p;
    }
    if (chsh_cmd->count("--d") || shots_cmd->count("--d")) {
        opt.phase_d = phase_d;
    }

    try {
        if (chsh_cmd->parsed()) return cmd_chsh(opt);
        if (scan_cmd->parsed()) return cmd_scan(opt, p_points, d_points);
        if (boundary_cmd->parsed()) return cmd_boundary(opt, tol, boundary_d_points);
        if (shots_cmd->parsed()) return cmd_shots(opt, shots, seed);
        if (horodecki_cmd->parsed()) return cmd_horodecki(opt, horodecki_p);
        if (separable_cmd->parsed()) {
            return cmd_separable(opt, total_n, weight_points, angle_points);
        }
        if (biased_cmd->parsed()) {
            return cmd_biased(opt, q_sq_values, biased_grid_points, biased_angle_points);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
