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

#ifndef DUALQFI_MODELS_H
#define DUALQFI_MODELS_H

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dualqfi/pauli.h"
#include "dualqfi/tableau.h"

namespace dualqfi {

enum class ModelKind { kCluster1D, kCluster2D, kToric };

std::string to_string(ModelKind kind);
/// Accepts "cluster1d", "cluster2d", "toric".
ModelKind parse_model_kind(std::string_view name);

/// One monitored code at a given size and single-site measurement rate.
///
/// Geometry (all boundaries open):
///  - cluster1d: K = L qubits on a chain, sites 1..L.
///  - cluster2d: K = L^2 qubits at sites (i, j), 1 <= i, j <= L.
///  - toric: K = 2 L^2 edge qubits h_{r,c} = (r,c)-(r,c+1) and
///    v_{r,c} = (r,c)-(r+1,c) for 0 <= r, c < L. Edges with c = L-1 (h) or
///    r = L-1 (v) leave the patch; stars are measured only at vertices whose
///    four edges stay inside, i.e. 1 <= r, c <= L-2, and plaquettes on every
///    face (r,c), 0 <= r, c <= L-2.
struct ModelSpec {
    ModelKind kind = ModelKind::kCluster1D;
    int L = 8;
    /// p_z for cluster1d, p_y for cluster2d and toric.
    double p = 0.0;
    /// Toric only: probability that a stabilizer draw picks a star.
    double star_fraction = 0.5;

    size_t num_qubits() const;
    size_t time_steps() const;
    size_t updates_per_step() const;
    size_t total_updates() const { return time_steps() * updates_per_step(); }
    /// Throws std::invalid_argument if any parameter is out of range.
    void validate() const;
};

struct Edge {
    int row;
    int col;
    char orientation;  // 'h' or 'v'
    bool operator==(const Edge &) const = default;
};

size_t cluster2d_qubit(int L, int i, int j);
size_t toric_qubit(int L, Edge e);
Edge toric_edge(int L, size_t qubit);

/// X_{j-1} Z_j X_{j+1}, 2 <= j <= L-1 (1-based sites).
PauliString cluster1d_generator(int L, int j);
/// X_{i,j} times Z on the four neighbours, 2 <= i, j <= L-1.
PauliString cluster2d_generator(int L, int i, int j);
/// X on the four edges at vertex (r,c), 1 <= r, c <= L-2.
PauliString toric_star(int L, int r, int c);
/// Z on the four edges around face (r,c), 0 <= r, c <= L-2.
PauliString toric_plaquette(int L, int r, int c);

enum class GeneratorType { kCluster, kStar, kPlaquette };

struct Generator {
    GeneratorType type;
    int i;  // site (1D uses i only), or vertex / face row
    int j;
    PauliString op;
    std::vector<uint32_t> support;
    std::string label;
};

/// Model geometry with every measurable operator precomputed.
class Model {
   public:
    explicit Model(ModelSpec spec);

    const ModelSpec &spec() const { return spec_; }
    ModelKind kind() const { return spec_.kind; }
    int L() const { return spec_.L; }
    size_t num_qubits() const { return spec_.num_qubits(); }

    const std::vector<Generator> &generators() const { return generators_; }
    /// Index into generators(); throws std::out_of_range for sites outside
    /// the allowed generator range.
    size_t generator_index(GeneratorType type, int i, int j = 0) const;
    const Generator &generator_at(GeneratorType type, int i, int j = 0) const {
        return generators_[generator_index(type, i, j)];
    }

    /// Single-site competitor at flat qubit q: Z for cluster1d, Y otherwise.
    const PauliString &single_site(size_t q) const { return singles_[q]; }
    std::span<const uint32_t> single_site_support(size_t q) const { return single_support_[q]; }

    const SiteGrammar &grammar() const { return *grammar_; }

    /// Generator indices drawn by the stabilizer branch of the schedule.
    const std::vector<size_t> &star_like() const { return primary_draw_; }
    const std::vector<size_t> &plaquettes() const { return plaquette_draw_; }

   private:
    ModelSpec spec_;
    std::vector<Generator> generators_;
    std::vector<PauliString> singles_;
    std::vector<std::vector<uint32_t>> single_support_;
    std::vector<size_t> primary_draw_;
    std::vector<size_t> plaquette_draw_;
    std::vector<long> index_;  // dense lookup, -1 where no generator
    std::shared_ptr<SiteGrammar> grammar_;

    size_t lookup_slot(GeneratorType type, int i, int j) const;
    void add(Generator g);
};

std::shared_ptr<SiteGrammar> make_grammar(ModelKind kind, int L);

struct RecordEntry {
    uint32_t op;  // generator index, or qubit index for single-site draws
    bool single_site;
    int8_t outcome;
    bool deterministic;
};

struct MeasurementRecord {
    std::vector<RecordEntry> entries;

    /// Last recorded outcome of every generator (0 if never measured).
    std::vector<int> last_generator_outcomes(size_t num_generators) const;
    /// "G <label> <+1|-1> <d|r>" or "S <site> ..." per line.
    std::string to_text(const Model &model) const;
};

struct Trajectory {
    StabilizerTableau state;
    MeasurementRecord record;
};

/// Runs the full measurement schedule from |0...0>. Pure in (model, seed):
/// the schedule and the outcome coins come from separate derived streams.
Trajectory run_trajectory(const Model &model, uint64_t seed, bool keep_record = true);

}  // namespace dualqfi

#endif
