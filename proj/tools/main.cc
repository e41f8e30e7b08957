// Copyright 2026 The dualqfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dualqfi/dualspin.h"
#include "dualqfi/entanglement.h"
#include "dualqfi/fit.h"
#include "dualqfi/harness.h"
#include "dualqfi/models.h"
#include "dualqfi/qfi.h"
#include "selftest.h"

using namespace dualqfi;

namespace {

// Exit codes.
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;

struct CliError : std::runtime_error {
    CliError(int code, const std::string &what) : std::runtime_error(what), code(code) {}
    int code;
};

size_t default_workers() {
    if (const char *env = std::getenv("DUALQFI_WORKERS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) {
                return static_cast<size_t>(v);
            }
        } catch (const std::exception &) {
        }
        throw CliError(kExitConfig, std::string("DUALQFI_WORKERS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

std::string fmt_double(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

std::ifstream open_input(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError(kExitIo, "cannot open input file '" + path + "'");
    }
    return in;
}

std::ofstream open_output(const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw CliError(kExitIo, "cannot open output file '" + path + "'");
    }
    return out;
}

nlohmann::json fit_json(const PowerFit &f) {
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"a", num(f.a)},
            {"b", num(f.b)},
            {"c", num(f.c)},
            {"sigma_a", num(f.sigma_a)},
            {"sigma_b", num(f.sigma_b)},
            {"sigma_c", num(f.sigma_c)},
            {"residual_norm", num(f.residual_norm)},
            {"flat", f.flat}};
}

// ---- sweep ----

struct SweepArgs {
    std::string config_path;
    std::string model = "cluster1d";
    std::vector<int> sizes;
    std::vector<double> rates;
    size_t traj = 0;
    uint64_t seed = 1;
    std::vector<std::string> obs;
    std::string out;
    size_t workers = 0;
    bool cold_start = false;
    double star_fraction = 0.5;
    std::string partition;
    bool quiet = false;
};

int run_sweep_cmd(const SweepArgs &args, CLI::App &cmd) {
    SweepConfig config;
    if (!args.config_path.empty()) {
        auto in = open_input(args.config_path);
        try {
            config = SweepConfig::from_json(nlohmann::json::parse(in));
        } catch (const std::exception &e) {
            throw CliError(kExitConfig, "malformed config '" + args.config_path + "': " + e.what());
        }
    } else {
        config.model = parse_model_kind(args.model);
    }
    if (cmd.count("--model")) config.model = parse_model_kind(args.model);
    if (!args.sizes.empty()) config.sizes = args.sizes;
    if (!args.rates.empty()) config.rates = args.rates;
    if (args.traj) config.trajectories = args.traj;
    if (cmd.count("--seed")) config.seed = args.seed;
    if (!args.obs.empty()) {
        config.observables.clear();
        for (const auto &o : args.obs) {
            config.observables.push_back(parse_observable(o));
        }
    }
    if (args.cold_start) config.warm_start = false;
    if (cmd.count("--star-fraction")) config.star_fraction = args.star_fraction;
    if (!args.partition.empty()) config.tmi_geometry = parse_partition_geometry(args.partition);
    config.workers = args.workers ? args.workers : (cmd.count("--config") && config.workers > 1 ? config.workers
                                                                                              : default_workers());
    try {
        config.validate();
    } catch (const std::invalid_argument &e) {
        throw CliError(kExitConfig, std::string("invalid sweep configuration: ") + e.what());
    }

    SweepResult result;
    int code = 0;
    try {
        result = run_sweep(config, args.quiet ? nullptr : &std::cerr);
    } catch (const SweepError &e) {
        std::cerr << "error: " << e.what() << "\n";
        result = e.partial();
        code = kExitFailure;
    }
    if (args.out.empty() || args.out == "-") {
        write_csv(std::cout, result);
    } else {
        auto out = open_output(args.out);
        write_csv(out, result);
        auto meta = open_output(args.out + ".json");
        meta << result.metadata.dump(2) << "\n";
        if (!args.quiet) {
            std::cerr << "[sweep] wrote " << result.rows.size() << " rows to " << args.out << " (metadata "
                      << args.out << ".json)\n";
        }
    }
    return code;
}

// ---- trajectory ----

struct TrajectoryArgs {
    std::string model = "cluster1d";
    int L = 8;
    double p = 0.0;
    uint64_t seed = 1;
    bool record = false;
    bool stabilizers = false;
    std::string partition = "strips";
};

int run_trajectory_cmd(const TrajectoryArgs &args) {
    Model model(ModelSpec{parse_model_kind(args.model), args.L, args.p});
    Trajectory traj = run_trajectory(model, args.seed, true);
    if (args.record) {
        std::cout << traj.record.to_text(model);
    }
    if (args.stabilizers) {
        for (size_t i = 0; i < model.num_qubits(); i++) {
            std::cout << "S" << i << " " << traj.state.stabilizer(i).str(model.grammar()) << "\n";
        }
    }
    DualSpinSet set = default_dual_spins(model);
    CorrelationMatrix corr = correlation_matrix(traj.state, set.taus);
    Rng rng(derive_seed(args.seed, {kAnnealStream}));
    QfiResult q = anneal_signs(corr, AnnealSchedule{}, rng, model.num_qubits());
    std::cout << "model " << to_string(model.kind()) << " L=" << args.L << " p=" << args.p << " seed=" << args.seed
              << "\n";
    std::cout << "measurements " << traj.record.entries.size() << "\n";
    std::cout << "f_q " << fmt_double(q.f_q) << "\n";
    std::cout << "witness_parties " << q.witness_parties << "\n";
    if (model.kind() == ModelKind::kCluster1D && args.L % 4 == 0) {
        std::cout << "s_topo " << s_topo(traj.state, args.L) << "\n";
    }
    if (model.kind() != ModelKind::kCluster1D && args.L >= 4) {
        std::cout << "tmi " << tmi(traj.state, tmi_partition(model, parse_partition_geometry(args.partition)))
                  << "\n";
    }
    return 0;
}

// ---- dual-spins ----

int run_dual_spins_cmd(const std::string &kind, int L, bool with_generators) {
    ModelKind k = parse_model_kind(kind);
    // Odd chains are fine for printing even though they cannot be simulated.
    if (k == ModelKind::kCluster1D) {
        if (L < 3) throw CliError(kExitConfig, "cluster1d dual spins need L >= 3");
    } else {
        ModelSpec{k, L, 0.0}.validate();
    }
    std::shared_ptr<SiteGrammar> grammar = make_grammar(k, L);
    DualSpinSet set;
    if (k == ModelKind::kCluster1D) {
        std::vector<PauliString> gens;
        for (int j = 2; j <= L - 1; j++) {
            gens.push_back(cluster1d_generator(L, j));
        }
        set = build_dual_spins(PauliString::parse("-Z1 X2", static_cast<size_t>(L)), std::move(gens));
    } else {
        set = default_dual_spins(Model(ModelSpec{k, L, 0.0}));
    }
    for (size_t j = 0; j < set.size(); j++) {
        std::cout << "τ" << j + 1 << " = " << set.taus[j].str(*grammar) << "\n";
        if (with_generators && j < set.generators.size()) {
            std::cout << "  M" << j + 1 << " = " << set.generators[j].str(*grammar) << "\n";
        }
    }
    return 0;
}

// ---- qfi-static ----

int run_qfi_static_cmd(const std::string &kind, int L, bool from_dual_spins) {
    ModelKind k = parse_model_kind(kind);
    ModelSpec{k, L, 0.0}.validate();
    double l = L, v;
    if (from_dual_spins) {
        double n = static_cast<double>(default_dual_spins(Model(ModelSpec{k, L, 0.0})).size());
        v = n * n / static_cast<double>(ModelSpec{k, L, 0.0}.num_qubits());
    } else if (k == ModelKind::kCluster1D) {
        v = (l - 2) * (l - 2) / l;
    } else if (k == ModelKind::kCluster2D) {
        v = (l * l - 4 * l + 5) * (l * l - 4 * l + 5) / (l * l);
    } else {
        v = (l * l - 4 * l + 5) * (l * l - 4 * l + 5) / (2 * l * l);
    }
    std::cout << fmt_double(v) << "\n";
    return 0;
}

// ---- entanglement ----

int run_entanglement_cmd(const TrajectoryArgs &args) {
    Model model(ModelSpec{parse_model_kind(args.model), args.L, args.p});
    Trajectory traj = run_trajectory(model, args.seed, false);
    if (model.kind() == ModelKind::kCluster1D) {
        std::vector<size_t> half(static_cast<size_t>(args.L / 2));
        for (size_t q = 0; q < half.size(); q++) half[q] = q;
        std::cout << "half_chain_entropy " << traj.state.entropy_bits(half) << "\n";
        if (args.L % 4 != 0) {
            throw CliError(kExitConfig, "s_topo needs L divisible by 4");
        }
        std::cout << "s_topo " << s_topo(traj.state, args.L) << "\n";
    } else {
        Partition part = tmi_partition(model, parse_partition_geometry(args.partition));
        std::vector<size_t> left = part.a;
        left.insert(left.end(), part.b.begin(), part.b.end());
        std::cout << "half_system_entropy " << traj.state.entropy_bits(left) << "\n";
        std::cout << "tmi " << tmi(traj.state, part) << "\n";
    }
    return 0;
}

// ---- fit / collapse ----

std::vector<SweepRow> load_rows(const std::string &path) {
    auto in = open_input(path);
    try {
        return read_csv(in);
    } catch (const std::invalid_argument &e) {
        throw CliError(kExitConfig, "malformed CSV '" + path + "': " + e.what());
    }
}

int run_fit_cmd(const std::string &path, const std::string &observable, bool weighted) {
    auto rows = load_rows(path);
    std::map<std::pair<std::string, double>, std::vector<ScalingPoint>> groups;
    for (const auto &r : rows) {
        if (r.observable == observable) {
            groups[{r.model, r.p}].push_back({static_cast<double>(r.L), r.mean, weighted ? r.stderr_ : 0.0});
        }
    }
    if (groups.empty()) {
        throw CliError(kExitConfig, "no rows with observable '" + observable + "' in '" + path + "'");
    }
    nlohmann::json out = nlohmann::json::array();
    int code = 0;
    for (auto &[key, pts] : groups) {
        nlohmann::json entry = {{"model", key.first}, {"p", key.second}, {"observable", observable}};
        std::vector<int> sizes;
        for (const auto &pt : pts) sizes.push_back(static_cast<int>(pt.L));
        entry["L"] = sizes;
        try {
            entry["fit"] = fit_json(fit_power(pts));
        } catch (const std::invalid_argument &e) {
            entry["error"] = e.what();
            code = kExitFailure;
        }
        out.push_back(entry);
    }
    std::cout << out.dump(2) << "\n";
    return code;
}

int run_collapse_cmd(const std::string &path, const std::string &observable, const CollapseOptions &options) {
    auto rows = load_rows(path);
    std::vector<CollapsePoint> data;
    std::string model;
    for (const auto &r : rows) {
        if (r.observable == observable) {
            data.push_back({static_cast<double>(r.L), r.p, r.mean, r.stderr_});
            model = r.model;
        }
    }
    if (data.empty()) {
        throw CliError(kExitConfig, "no rows with observable '" + observable + "' in '" + path + "'");
    }
    CollapseFit f = collapse_fit(data, options);
    nlohmann::json out = {{"model", model}, {"observable", observable}, {"p_c", f.p_c},
                          {"nu", f.nu},     {"quality", f.quality},     {"terms", f.terms}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Dual-spin QFI and entanglement in monitored stabilizer codes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Run an (L, p) grid of trajectories and write CSV");
    sweep_cmd->add_option("--config", sweep.config_path, "JSON sweep config (flags override)");
    sweep_cmd->add_option("--model", sweep.model, "cluster1d | cluster2d | toric");
    sweep_cmd->add_option("--L", sweep.sizes, "System sizes")->delimiter(',');
    sweep_cmd->add_option("--p", sweep.rates, "Single-site measurement rates")->delimiter(',');
    sweep_cmd->add_option("--traj", sweep.traj, "Trajectories per point");
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
    sweep_cmd->add_option("--obs", sweep.obs, "f_q, local_f_q, s_topo, tmi, correlator_decay")->delimiter(',');
    sweep_cmd->add_option("--out", sweep.out, "Output CSV (metadata goes to <out>.json); '-' for stdout");
    sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (default $DUALQFI_WORKERS or 1)");
    sweep_cmd->add_flag("--cold-start", sweep.cold_start, "Do not warm-start the sign annealer");
    sweep_cmd->add_option("--star-fraction", sweep.star_fraction, "Toric: probability a stabilizer draw is a star");
    sweep_cmd->add_option("--tmi-partition", sweep.partition, "I3 regions: strips or quadrants");
    sweep_cmd->add_flag("--quiet", sweep.quiet, "No progress output");

    TrajectoryArgs traj;
    auto *traj_cmd = app.add_subcommand("trajectory", "Run one trajectory and print its observables");
    traj_cmd->add_option("--model", traj.model)->required();
    traj_cmd->add_option("--L", traj.L)->required();
    traj_cmd->add_option("--p", traj.p, "Single-site measurement rate");
    traj_cmd->add_option("--seed", traj.seed);
    traj_cmd->add_flag("--record", traj.record, "Print the measurement record");
    traj_cmd->add_flag("--stabilizers", traj.stabilizers, "Print the final stabilizer generators");
    traj_cmd->add_option("--tmi-partition", traj.partition, "I3 regions: strips or quadrants");

    std::string ds_model;
    int ds_L = 0;
    bool ds_gens = false;
    auto *ds_cmd = app.add_subcommand("dual-spins", "Print the dual-spin set");
    ds_cmd->add_option("--model", ds_model)->required();
    ds_cmd->add_option("--L", ds_L)->required();
    ds_cmd->add_flag("--generators", ds_gens, "Also print the generator linking consecutive spins");

    std::string qs_model;
    int qs_L = 0;
    bool qs_count = false;
    auto *qs_cmd = app.add_subcommand("qfi-static", "Closed-form QFI density of the unmonitored code");
    qs_cmd->add_option("--model", qs_model)->required();
    qs_cmd->add_option("--L", qs_L)->required();
    qs_cmd->add_flag("--from-dual-spins", qs_count, "Use N^2/K with N the size of the constructed dual-spin set");

    TrajectoryArgs ent;
    auto *ent_cmd = app.add_subcommand("entanglement", "Entanglement diagnostics of one trajectory");
    ent_cmd->add_option("--model", ent.model)->required();
    ent_cmd->add_option("--L", ent.L)->required();
    ent_cmd->add_option("--p", ent.p);
    ent_cmd->add_option("--seed", ent.seed);
    ent_cmd->add_option("--tmi-partition", ent.partition, "I3 regions: strips or quadrants");

    std::string fit_in, fit_obs = "f_q";
    bool fit_unweighted = false;
    auto *fit_cmd = app.add_subcommand("fit", "Fit a + b L^c per (model, p) from a sweep CSV");
    fit_cmd->add_option("--in", fit_in)->required();
    fit_cmd->add_option("--observable", fit_obs);
    fit_cmd->add_flag("--unweighted", fit_unweighted, "Ignore stderr column");

    std::string col_in, col_obs = "s_topo";
    CollapseOptions col_opts;
    double col_pmin = NAN, col_pmax = NAN;
    auto *col_cmd = app.add_subcommand("collapse", "Finite-size-scaling collapse from a sweep CSV");
    col_cmd->add_option("--in", col_in)->required();
    col_cmd->add_option("--observable", col_obs);
    col_cmd->add_option("--nu-min", col_opts.nu_min);
    col_cmd->add_option("--nu-max", col_opts.nu_max);
    col_cmd->add_option("--p-min", col_pmin);
    col_cmd->add_option("--p-max", col_pmax);

    auto *st_cmd = app.add_subcommand("selftest", "Run built-in oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*sweep_cmd) return run_sweep_cmd(sweep, *sweep_cmd);
        if (*traj_cmd) return run_trajectory_cmd(traj);
        if (*ds_cmd) return run_dual_spins_cmd(ds_model, ds_L, ds_gens);
        if (*qs_cmd) return run_qfi_static_cmd(qs_model, qs_L, qs_count);
        if (*ent_cmd) return run_entanglement_cmd(ent);
        if (*fit_cmd) return run_fit_cmd(fit_in, fit_obs, !fit_unweighted);
        if (*col_cmd) {
            if (!std::isnan(col_pmin)) col_opts.p_min = col_pmin;
            if (!std::isnan(col_pmax)) col_opts.p_max = col_pmax;
            return run_collapse_cmd(col_in, col_obs, col_opts);
        }
        if (*st_cmd) return run_selftest(std::cout) ? 0 : kExitFailure;
    } catch (const CliError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
