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

#include "dualqfi/harness.h"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <thread>

#include "dualqfi/entanglement.h"
#include "dualqfi/rng.h"

namespace dualqfi {

std::string to_string(Observable obs) {
    switch (obs) {
        case Observable::kQfi:
            return "f_q";
        case Observable::kLocalQfi:
            return "local_f_q";
        case Observable::kSTopo:
            return "s_topo";
        case Observable::kTmi:
            return "tmi";
        case Observable::kCorrelatorDecay:
            return "correlator_decay";
    }
    return "?";
}

Observable parse_observable(std::string_view name) {
    if (name == "f_q") return Observable::kQfi;
    if (name == "local_f_q") return Observable::kLocalQfi;
    if (name == "s_topo") return Observable::kSTopo;
    if (name == "tmi") return Observable::kTmi;
    if (name == "correlator_decay") return Observable::kCorrelatorDecay;
    throw std::invalid_argument("unknown observable '" + std::string(name) +
                                "' (expected f_q, local_f_q, s_topo, tmi or correlator_decay)");
}

namespace {

nlohmann::json schedule_json(const AnnealSchedule &s) {
    return {{"t_init", s.t_init},
            {"t_final", s.t_final},
            {"cooling", s.cooling},
            {"sweeps_per_t", s.sweeps_per_t},
            {"restarts", s.restarts}};
}

AnnealSchedule schedule_from_json(const nlohmann::json &j) {
    AnnealSchedule s;
    s.t_init = j.value("t_init", s.t_init);
    s.t_final = j.value("t_final", s.t_final);
    s.cooling = j.value("cooling", s.cooling);
    s.sweeps_per_t = j.value("sweeps_per_t", s.sweeps_per_t);
    s.restarts = j.value("restarts", s.restarts);
    return s;
}

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

}  // namespace

void SweepConfig::validate() const {
    if (sizes.empty() || rates.empty()) {
        throw std::invalid_argument("sweep needs at least one size and one rate");
    }
    if (trajectories < 1) {
        throw std::invalid_argument("sweep needs at least one trajectory per point");
    }
    if (observables.empty()) {
        throw std::invalid_argument("sweep needs at least one observable");
    }
    schedule.validate();
    local_schedule.validate();
    for (double p : rates) {
        ModelSpec{model, sizes.front(), p, star_fraction}.validate();
    }
    for (int L : sizes) {
        ModelSpec{model, L, 0.0, star_fraction}.validate();
        for (Observable obs : observables) {
            if (obs == Observable::kSTopo && (model != ModelKind::kCluster1D || L % 4 != 0)) {
                throw std::invalid_argument("s_topo needs cluster1d with L divisible by 4");
            }
            if (obs == Observable::kTmi && (model == ModelKind::kCluster1D || L < 4)) {
                throw std::invalid_argument("tmi needs a 2D model with L >= 4");
            }
        }
    }
}

nlohmann::json SweepConfig::to_json() const {
    std::vector<std::string> obs;
    for (Observable o : observables) {
        obs.push_back(to_string(o));
    }
    return {{"model", to_string(model)},
            {"L", sizes},
            {"p", rates},
            {"trajectories", trajectories},
            {"seed", seed},
            {"observables", obs},
            {"schedule", schedule_json(schedule)},
            {"local_schedule", schedule_json(local_schedule)},
            {"warm_start", warm_start},
            {"star_fraction", star_fraction},
            {"tmi_partition", to_string(tmi_geometry)},
            {"workers", workers}};
}

SweepConfig SweepConfig::from_json(const nlohmann::json &j) {
    static const std::set<std::string> known = {"model",    "L",        "p",          "trajectories",
                                                "seed",     "observables", "schedule", "local_schedule",
                                                "warm_start", "star_fraction", "tmi_partition", "workers"};
    for (const auto &[key, value] : j.items()) {
        if (!known.count(key)) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    SweepConfig c;
    c.model = parse_model_kind(j.at("model").get<std::string>());
    c.sizes = j.at("L").get<std::vector<int>>();
    c.rates = j.at("p").get<std::vector<double>>();
    c.trajectories = j.value("trajectories", c.trajectories);
    c.seed = j.value("seed", c.seed);
    if (j.contains("observables")) {
        c.observables.clear();
        for (const auto &name : j.at("observables")) {
            c.observables.push_back(parse_observable(name.get<std::string>()));
        }
    }
    if (j.contains("schedule")) {
        c.schedule = schedule_from_json(j.at("schedule"));
    }
    if (j.contains("local_schedule")) {
        c.local_schedule = schedule_from_json(j.at("local_schedule"));
    }
    c.warm_start = j.value("warm_start", c.warm_start);
    c.star_fraction = j.value("star_fraction", c.star_fraction);
    if (j.contains("tmi_partition")) {
        c.tmi_geometry = parse_partition_geometry(j.at("tmi_partition").get<std::string>());
    }
    c.workers = j.value("workers", c.workers);
    return c;
}

const SweepRow *SweepResult::find(int L, double p, std::string_view observable) const {
    for (const auto &r : rows) {
        if (r.L == L && std::abs(r.p - p) < 1e-12 && r.observable == observable) {
            return &r;
        }
    }
    return nullptr;
}

uint64_t trajectory_seed(uint64_t master, int L, size_t p_index, size_t trajectory) {
    return derive_seed(master, {static_cast<uint64_t>(L), p_index, trajectory});
}

std::vector<std::pair<size_t, double>> correlator_decay(const CorrelationMatrix &corr) {
    std::vector<std::pair<size_t, double>> out;
    for (size_t d = 0; d < corr.n; d++) {
        double total = 0.0;
        for (size_t j = 0; j + d < corr.n; j++) {
            total += std::abs(corr.at(j, j + d));
        }
        out.emplace_back(d, total / static_cast<double>(corr.n - d));
    }
    return out;
}

std::vector<std::pair<size_t, double>> correlator_decay(const StabilizerTableau &state, const DualSpinSet &set) {
    if (set.size() < 2) {
        throw std::invalid_argument("correlator decay needs at least two dual spins");
    }
    return correlator_decay(correlation_matrix(state, set.taus));
}

std::vector<std::string> observable_columns(const Model &model, const DualSpinSet &set, const SweepConfig &config) {
    (void)model;
    std::vector<std::string> cols;
    for (Observable o : config.observables) {
        if (o == Observable::kCorrelatorDecay) {
            for (size_t d = 0; d < set.size(); d++) {
                cols.push_back("corr_d=" + std::to_string(d));
            }
        } else {
            cols.push_back(to_string(o));
        }
    }
    return cols;
}

std::vector<double> evaluate_trajectory(const Model &model, const DualSpinSet &set, const SweepConfig &config,
                                        uint64_t seed) {
    bool need_qfi = false;
    for (Observable o : config.observables) {
        need_qfi |= o == Observable::kQfi || o == Observable::kCorrelatorDecay;
    }
    bool keep_record = need_qfi && config.warm_start;
    Trajectory traj = run_trajectory(model, seed, keep_record);
    std::optional<CorrelationMatrix> corr;
    if (need_qfi) {
        corr = correlation_matrix(traj.state, set.taus);
    }
    std::vector<double> values;
    for (Observable o : config.observables) {
        switch (o) {
            case Observable::kQfi: {
                std::vector<int8_t> warm;
                if (config.warm_start) {
                    auto last = traj.record.last_generator_outcomes(model.generators().size());
                    std::vector<int> along;
                    for (size_t g : set.order) {
                        along.push_back(last[g]);
                    }
                    warm = chain_signs(along);
                }
                Rng rng(derive_seed(seed, {kAnnealStream}));
                values.push_back(anneal_signs(*corr, config.schedule, rng, model.num_qubits(), warm).f_q);
                break;
            }
            case Observable::kLocalQfi: {
                Rng rng(derive_seed(seed, {kLocalAnnealStream}));
                values.push_back(local_qfi(traj.state, config.local_schedule, rng).f_q);
                break;
            }
            case Observable::kSTopo:
                values.push_back(s_topo(traj.state, model.L()));
                break;
            case Observable::kTmi:
                values.push_back(tmi(traj.state, tmi_partition(model, config.tmi_geometry)));
                break;
            case Observable::kCorrelatorDecay:
                for (const auto &[d, v] : correlator_decay(*corr)) {
                    values.push_back(v);
                }
                break;
        }
    }
    return values;
}

std::pair<double, double> mean_and_stderr(std::span<const double> values) {
    size_t n = values.size();
    if (n == 0) {
        return {std::nan(""), std::nan("")};
    }
    auto compensated = [&](auto &&term) {
        double sum = 0.0, comp = 0.0;
        for (double v : values) {
            double t = term(v);
            double s = sum + t;
            comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
            sum = s;
        }
        return sum + comp;
    };
    double mean = compensated([](double v) { return v; }) / static_cast<double>(n);
    if (n == 1) {
        return {mean, 0.0};
    }
    double ss = compensated([&](double v) { return (v - mean) * (v - mean); });
    double var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

SweepResult run_sweep(const SweepConfig &config, std::ostream *progress) {
    config.validate();
    struct Point {
        Point(int L_, size_t pi, double p_, Model m, DualSpinSet s)
            : L(L_), p_index(pi), p(p_), model(std::move(m)), set(std::move(s)) {}
        int L;
        size_t p_index;
        double p;
        Model model;
        DualSpinSet set;
        std::vector<std::string> columns;
        std::vector<std::vector<double>> values;  // [column][trajectory]
        std::atomic<size_t> done{0};
        std::atomic<bool> failed{false};
        std::string error;
    };
    std::vector<std::unique_ptr<Point>> points;
    for (int L : config.sizes) {
        for (size_t pi = 0; pi < config.rates.size(); pi++) {
            Model model(ModelSpec{config.model, L, config.rates[pi], config.star_fraction});
            DualSpinSet set = default_dual_spins(model);
            auto pt = std::make_unique<Point>(L, pi, config.rates[pi], std::move(model), std::move(set));
            pt->columns = observable_columns(pt->model, pt->set, config);
            pt->values.assign(pt->columns.size(), std::vector<double>(config.trajectories, 0.0));
            points.push_back(std::move(pt));
        }
    }

    size_t total = points.size() * config.trajectories;
    std::atomic<size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&]() {
        while (true) {
            size_t task = next.fetch_add(1);
            if (task >= total) {
                return;
            }
            Point &pt = *points[task / config.trajectories];
            size_t t = task % config.trajectories;
            if (pt.failed.load()) {
                continue;
            }
            try {
                uint64_t seed = trajectory_seed(config.seed, pt.L, pt.p_index, t);
                std::vector<double> v = evaluate_trajectory(pt.model, pt.set, config, seed);
                for (size_t c = 0; c < v.size(); c++) {
                    pt.values[c][t] = v[c];
                }
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(log_mutex);
                if (!pt.failed.exchange(true)) {
                    pt.error = e.what();
                }
                continue;
            }
            if (pt.done.fetch_add(1) + 1 == config.trajectories && progress) {
                std::lock_guard<std::mutex> lock(log_mutex);
                *progress << "[sweep] " << to_string(config.model) << " L=" << pt.L << " p=" << pt.p << " done ("
                          << config.trajectories << " trajectories)\n"
                          << std::flush;
            }
        }
    };
    size_t workers = std::max<size_t>(1, config.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    SweepResult result;
    result.metadata = {{"tool", "dualqfi"},
                       {"version", kVersion},
                       {"csv_schema", kCsvHeader},
                       {"config", config.to_json()}};
    std::vector<std::pair<int, double>> missing;
    std::string first_error;
    for (const auto &pt : points) {
        if (pt->failed) {
            missing.emplace_back(pt->L, pt->p);
            if (first_error.empty()) {
                first_error = pt->error;
            }
            continue;
        }
        for (size_t c = 0; c < pt->columns.size(); c++) {
            auto [mean, se] = mean_and_stderr(pt->values[c]);
            result.rows.push_back(
                {to_string(config.model), pt->L, pt->p, pt->columns[c], mean, se, config.trajectories, config.seed});
        }
    }
    if (!missing.empty()) {
        std::string what = "sweep incomplete; missing points:";
        for (auto [L, p] : missing) {
            what += " (L=" + std::to_string(L) + ", p=" + format_double(p) + ")";
        }
        what += "; first error: " + first_error;
        throw SweepError(what, std::move(result), std::move(missing));
    }
    return result;
}

void write_csv(std::ostream &out, const SweepResult &result) {
    out << kCsvSchemaLine << "\n" << kCsvHeader << "\n";
    for (const auto &r : result.rows) {
        out << r.model << "," << r.L << "," << format_double(r.p) << "," << r.observable << ","
            << format_double(r.mean) << "," << format_double(r.stderr_) << "," << r.n << "," << r.seed << "\n";
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
            cell.pop_back();
        }
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

double to_double(const std::string &s, size_t line) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("line " + std::to_string(line) + ": '" + s + "' is not a number");
    }
}

}  // namespace

std::vector<SweepRow> read_csv(std::istream &in) {
    std::vector<SweepRow> rows;
    std::string line;
    size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": expected header '" + kCsvHeader +
                                            "'");
            }
            header_seen = true;
            continue;
        }
        auto cells = split_csv_line(line);
        if (cells.size() != 8) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 8 columns, got " +
                                        std::to_string(cells.size()));
        }
        SweepRow r;
        r.model = cells[0];
        r.L = static_cast<int>(to_double(cells[1], lineno));
        r.p = to_double(cells[2], lineno);
        r.observable = cells[3];
        r.mean = to_double(cells[4], lineno);
        r.stderr_ = to_double(cells[5], lineno);
        r.n = static_cast<size_t>(to_double(cells[6], lineno));
        r.seed = std::stoull(cells[7]);
        rows.push_back(std::move(r));
    }
    if (!header_seen) {
        throw std::invalid_argument("missing CSV header '" + std::string(kCsvHeader) + "'");
    }
    return rows;
}

}  // namespace dualqfi
