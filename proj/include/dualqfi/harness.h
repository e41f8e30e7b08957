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

#ifndef DUALQFI_HARNESS_H
#define DUALQFI_HARNESS_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dualqfi/dualspin.h"
#include "dualqfi/entanglement.h"
#include "dualqfi/models.h"
#include "dualqfi/qfi.h"

namespace dualqfi {

inline constexpr const char *kVersion = "0.1.0";
inline constexpr const char *kCsvSchemaLine = "# dualqfi sweep csv v1";
inline constexpr const char *kCsvHeader = "model,L,p,observable,mean,stderr,n,seed";

enum class Observable { kQfi, kLocalQfi, kSTopo, kTmi, kCorrelatorDecay };

std::string to_string(Observable obs);
/// "f_q", "local_f_q", "s_topo", "tmi", "correlator_decay".
Observable parse_observable(std::string_view name);

struct SweepConfig {
    ModelKind model = ModelKind::kCluster1D;
    std::vector<int> sizes;
    std::vector<double> rates;
    size_t trajectories = 5000;
    uint64_t seed = 1;
    std::vector<Observable> observables = {Observable::kQfi};
    AnnealSchedule schedule;
    AnnealSchedule local_schedule;
    /// Seed restart 0 of the sign annealer from recorded outcomes.
    bool warm_start = true;
    double star_fraction = 0.5;
    PartitionGeometry tmi_geometry = PartitionGeometry::kStrips;
    size_t workers = 1;

    /// Throws std::invalid_argument for an unusable configuration.
    void validate() const;
    nlohmann::json to_json() const;
    static SweepConfig from_json(const nlohmann::json &j);
};

struct SweepRow {
    std::string model;
    int L = 0;
    double p = 0.0;
    std::string observable;
    double mean = 0.0;
    double stderr_ = 0.0;
    size_t n = 0;
    uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    nlohmann::json metadata;

    /// nullptr if absent.
    const SweepRow *find(int L, double p, std::string_view observable) const;
};

/// Thrown when some grid points could not be completed; carries the rows
/// that did finish.
class SweepError : public std::runtime_error {
   public:
    SweepError(const std::string &what, SweepResult partial, std::vector<std::pair<int, double>> missing)
        : std::runtime_error(what), partial_(std::move(partial)), missing_(std::move(missing)) {
    }
    const SweepResult &partial() const { return partial_; }
    const std::vector<std::pair<int, double>> &missing() const { return missing_; }

   private:
    SweepResult partial_;
    std::vector<std::pair<int, double>> missing_;
};

/// Seed of one trajectory, independent of scheduling.
uint64_t trajectory_seed(uint64_t master, int L, size_t p_index, size_t trajectory);

/// Mean |C_{j,j+d}| over j for every separation d = 0..N-1.
std::vector<std::pair<size_t, double>> correlator_decay(const CorrelationMatrix &corr);
std::vector<std::pair<size_t, double>> correlator_decay(const StabilizerTableau &state, const DualSpinSet &set);

/// Observable names produced per trajectory for a given model and config
/// (correlator decay expands to one "corr_d=<d>" column per separation).
std::vector<std::string> observable_columns(const Model &model, const DualSpinSet &set, const SweepConfig &config);

/// Runs one trajectory and evaluates every requested observable, in the
/// order of observable_columns().
std::vector<double> evaluate_trajectory(const Model &model, const DualSpinSet &set, const SweepConfig &config,
                                        uint64_t seed);

/// Runs every (L, p) point with config.trajectories independent trajectories.
/// Results are bit-identical for any worker count. Progress lines go to
/// `progress` when non-null.
SweepResult run_sweep(const SweepConfig &config, std::ostream *progress = nullptr);

void write_csv(std::ostream &out, const SweepResult &result);
/// Parses the sweep CSV schema; comment lines starting with '#' are skipped.
std::vector<SweepRow> read_csv(std::istream &in);

/// Neumaier-compensated mean and standard error (sample std / sqrt(n)).
std::pair<double, double> mean_and_stderr(std::span<const double> values);

}  // namespace dualqfi

#endif
