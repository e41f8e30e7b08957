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

#include "dualqfi/models.h"

#include <charconv>
#include <stdexcept>

#include "dualqfi/rng.h"

namespace dualqfi {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad site label '" + std::string(whole) + "'");
    }
    return v;
}

/// "_{i,j}" with 1-based i, j; q = (i-1) L + (j-1).
class SquareGrammar : public SiteGrammar {
   public:
    explicit SquareGrammar(int L) : L_(L) {
    }
    std::string label(size_t q) const override {
        return "_{" + std::to_string(q / L_ + 1) + "," + std::to_string(q % L_ + 1) + "}";
    }
    size_t parse(std::string_view label) const override {
        if (label.size() < 6 || label.substr(0, 2) != "_{" || label.back() != '}') {
            throw std::invalid_argument("bad square-lattice site '" + std::string(label) + "'");
        }
        std::string_view body = label.substr(2, label.size() - 3);
        size_t comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("bad square-lattice site '" + std::string(label) + "'");
        }
        int i = parse_int(body.substr(0, comma), label);
        int j = parse_int(body.substr(comma + 1), label);
        if (i < 1 || i > L_ || j < 1 || j > L_) {
            throw std::out_of_range("square-lattice site '" + std::string(label) + "' out of range");
        }
        return cluster2d_qubit(L_, i, j);
    }

   private:
    int L_;
};

/// "_{r,c}^h" / "_{r,c}^v" with 0-based r, c.
class EdgeGrammar : public SiteGrammar {
   public:
    explicit EdgeGrammar(int L) : L_(L) {
    }
    std::string label(size_t q) const override {
        Edge e = toric_edge(L_, q);
        return "_{" + std::to_string(e.row) + "," + std::to_string(e.col) + "}^" + e.orientation;
    }
    size_t parse(std::string_view label) const override {
        if (label.size() < 8 || label.substr(0, 2) != "_{" || label[label.size() - 2] != '^') {
            throw std::invalid_argument("bad edge site '" + std::string(label) + "'");
        }
        char o = label.back();
        size_t close = label.find('}');
        if ((o != 'h' && o != 'v') || close != label.size() - 3) {
            throw std::invalid_argument("bad edge site '" + std::string(label) + "'");
        }
        std::string_view body = label.substr(2, close - 2);
        size_t comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("bad edge site '" + std::string(label) + "'");
        }
        int r = parse_int(body.substr(0, comma), label);
        int c = parse_int(body.substr(comma + 1), label);
        if (r < 0 || r >= L_ || c < 0 || c >= L_) {
            throw std::out_of_range("edge '" + std::string(label) + "' out of range");
        }
        return toric_qubit(L_, {r, c, o});
    }

   private:
    int L_;
};

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw std::out_of_range(message);
    }
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::kCluster1D:
            return "cluster1d";
        case ModelKind::kCluster2D:
            return "cluster2d";
        case ModelKind::kToric:
            return "toric";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "cluster1d") return ModelKind::kCluster1D;
    if (name == "cluster2d") return ModelKind::kCluster2D;
    if (name == "toric") return ModelKind::kToric;
    throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected cluster1d, cluster2d or toric)");
}

size_t ModelSpec::num_qubits() const {
    size_t l = static_cast<size_t>(L);
    switch (kind) {
        case ModelKind::kCluster1D:
            return l;
        case ModelKind::kCluster2D:
            return l * l;
        case ModelKind::kToric:
            return 2 * l * l;
    }
    return 0;
}

size_t ModelSpec::time_steps() const {
    size_t l = static_cast<size_t>(L);
    return kind == ModelKind::kCluster1D ? 2 * l : 2 * l * l;
}

size_t ModelSpec::updates_per_step() const {
    size_t l = static_cast<size_t>(L);
    switch (kind) {
        case ModelKind::kCluster1D:
            return l;
        case ModelKind::kCluster2D:
            return l * l;
        case ModelKind::kToric:
            return 2 * l * l;
    }
    return 0;
}

void ModelSpec::validate() const {
    if (kind == ModelKind::kCluster1D) {
        if (L < 4 || L % 2 != 0) {
            throw std::invalid_argument("cluster1d needs an even L >= 4, got " + std::to_string(L));
        }
    } else if (L < 3) {
        throw std::invalid_argument(to_string(kind) + " needs L >= 3, got " + std::to_string(L));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("measurement rate p must lie in [0, 1]");
    }
    if (!(star_fraction >= 0.0 && star_fraction <= 1.0)) {
        throw std::invalid_argument("star_fraction must lie in [0, 1]");
    }
}

size_t cluster2d_qubit(int L, int i, int j) {
    return static_cast<size_t>((i - 1) * L + (j - 1));
}

size_t toric_qubit(int L, Edge e) {
    size_t base = e.orientation == 'h' ? 0 : static_cast<size_t>(L) * L;
    return base + static_cast<size_t>(e.row * L + e.col);
}

Edge toric_edge(int L, size_t qubit) {
    size_t ll = static_cast<size_t>(L) * L;
    char o = qubit < ll ? 'h' : 'v';
    size_t k = qubit % ll;
    return {static_cast<int>(k / L), static_cast<int>(k % L), o};
}

PauliString cluster1d_generator(int L, int j) {
    require(j >= 2 && j <= L - 1, "cluster1d generator site " + std::to_string(j) + " outside 2.." +
                                      std::to_string(L - 1));
    PauliString p(static_cast<size_t>(L));
    p.set_letter(j - 2, 'X');
    p.set_letter(j - 1, 'Z');
    p.set_letter(j, 'X');
    return p;
}

PauliString cluster2d_generator(int L, int i, int j) {
    require(i >= 2 && i <= L - 1 && j >= 2 && j <= L - 1,
            "cluster2d generator site (" + std::to_string(i) + "," + std::to_string(j) + ") not interior");
    PauliString p(static_cast<size_t>(L) * L);
    p.set_letter(cluster2d_qubit(L, i, j), 'X');
    p.set_letter(cluster2d_qubit(L, i - 1, j), 'Z');
    p.set_letter(cluster2d_qubit(L, i + 1, j), 'Z');
    p.set_letter(cluster2d_qubit(L, i, j - 1), 'Z');
    p.set_letter(cluster2d_qubit(L, i, j + 1), 'Z');
    return p;
}

PauliString toric_star(int L, int r, int c) {
    require(r >= 1 && r <= L - 2 && c >= 1 && c <= L - 2,
            "star vertex (" + std::to_string(r) + "," + std::to_string(c) + ") not interior");
    PauliString p(2 * static_cast<size_t>(L) * L);
    p.set_letter(toric_qubit(L, {r, c - 1, 'h'}), 'X');
    p.set_letter(toric_qubit(L, {r, c, 'h'}), 'X');
    p.set_letter(toric_qubit(L, {r - 1, c, 'v'}), 'X');
    p.set_letter(toric_qubit(L, {r, c, 'v'}), 'X');
    return p;
}

PauliString toric_plaquette(int L, int r, int c) {
    require(r >= 0 && r <= L - 2 && c >= 0 && c <= L - 2,
            "plaquette face (" + std::to_string(r) + "," + std::to_string(c) + ") outside the patch");
    PauliString p(2 * static_cast<size_t>(L) * L);
    p.set_letter(toric_qubit(L, {r, c, 'h'}), 'Z');
    p.set_letter(toric_qubit(L, {r + 1, c, 'h'}), 'Z');
    p.set_letter(toric_qubit(L, {r, c, 'v'}), 'Z');
    p.set_letter(toric_qubit(L, {r, c + 1, 'v'}), 'Z');
    return p;
}

std::shared_ptr<SiteGrammar> make_grammar(ModelKind kind, int L) {
    switch (kind) {
        case ModelKind::kCluster1D:
            return std::make_shared<SiteGrammar>();
        case ModelKind::kCluster2D:
            return std::make_shared<SquareGrammar>(L);
        case ModelKind::kToric:
            return std::make_shared<EdgeGrammar>(L);
    }
    throw std::invalid_argument("unknown model kind");
}

Model::Model(ModelSpec spec) : spec_(spec) {
    spec_.validate();
    int L = spec_.L;
    size_t slots = 3 * static_cast<size_t>(L + 1) * (L + 1);
    index_.assign(slots, -1);
    grammar_ = make_grammar(spec_.kind, L);
    size_t K = num_qubits();
    char single_letter = spec_.kind == ModelKind::kCluster1D ? 'Z' : 'Y';
    for (size_t q = 0; q < K; q++) {
        singles_.push_back(PauliString::single(K, q, single_letter));
        single_support_.push_back(support_words(singles_.back()));
    }

    auto make = [&](GeneratorType type, int i, int j, PauliString op, std::string label) {
        Generator g{type, i, j, std::move(op), {}, std::move(label)};
        g.support = support_words(g.op);
        add(std::move(g));
    };
    switch (spec_.kind) {
        case ModelKind::kCluster1D:
            for (int j = 2; j <= L - 1; j++) {
                make(GeneratorType::kCluster, j, 0, cluster1d_generator(L, j), "M" + std::to_string(j));
            }
            break;
        case ModelKind::kCluster2D:
            for (int i = 2; i <= L - 1; i++) {
                for (int j = 2; j <= L - 1; j++) {
                    make(GeneratorType::kCluster, i, j, cluster2d_generator(L, i, j),
                         "M_{" + std::to_string(i) + "," + std::to_string(j) + "}");
                }
            }
            break;
        case ModelKind::kToric:
            for (int r = 1; r <= L - 2; r++) {
                for (int c = 1; c <= L - 2; c++) {
                    make(GeneratorType::kStar, r, c, toric_star(L, r, c),
                         "A_s^{" + std::to_string(r) + "," + std::to_string(c) + "}");
                }
            }
            for (int r = 0; r <= L - 2; r++) {
                for (int c = 0; c <= L - 2; c++) {
                    make(GeneratorType::kPlaquette, r, c, toric_plaquette(L, r, c),
                         "B_p^{" + std::to_string(r) + "," + std::to_string(c) + "}");
                }
            }
            break;
    }
}

size_t Model::lookup_slot(GeneratorType type, int i, int j) const {
    int L = spec_.L;
    if (i < 0 || i > L || j < 0 || j > L) {
        return index_.size();
    }
    return (static_cast<size_t>(type) * (L + 1) + i) * (L + 1) + j;
}

void Model::add(Generator g) {
    size_t slot = lookup_slot(g.type, g.i, g.j);
    index_[slot] = static_cast<long>(generators_.size());
    if (g.type == GeneratorType::kPlaquette) {
        plaquette_draw_.push_back(generators_.size());
    } else {
        primary_draw_.push_back(generators_.size());
    }
    generators_.push_back(std::move(g));
}

size_t Model::generator_index(GeneratorType type, int i, int j) const {
    size_t slot = lookup_slot(type, i, j);
    if (slot >= index_.size() || index_[slot] < 0) {
        throw std::out_of_range("no generator of that type at (" + std::to_string(i) + "," + std::to_string(j) +
                                ") in " + to_string(spec_.kind) + " L=" + std::to_string(spec_.L));
    }
    return static_cast<size_t>(index_[slot]);
}

std::vector<int> MeasurementRecord::last_generator_outcomes(size_t num_generators) const {
    std::vector<int> last(num_generators, 0);
    for (const auto &e : entries) {
        if (!e.single_site && e.op < num_generators) {
            last[e.op] = e.outcome;
        }
    }
    return last;
}

std::string MeasurementRecord::to_text(const Model &model) const {
    std::string out;
    for (const auto &e : entries) {
        if (e.single_site) {
            out += "S ";
            out += model.single_site(e.op).str(model.grammar()).substr(1);
        } else {
            out += "G ";
            out += model.generators()[e.op].label;
        }
        out += e.outcome > 0 ? " +1" : " -1";
        out += e.deterministic ? " d\n" : " r\n";
    }
    return out;
}

Trajectory run_trajectory(const Model &model, uint64_t seed, bool keep_record) {
    const ModelSpec &spec = model.spec();
    Rng schedule(derive_seed(seed, {kScheduleStream}));
    Trajectory traj{StabilizerTableau(model.num_qubits(), derive_seed(seed, {kOutcomeStream})), {}};
    size_t total = spec.total_updates();
    if (keep_record) {
        traj.record.entries.reserve(total);
    }
    const auto &primary = model.star_like();
    const auto &plaquettes = model.plaquettes();
    size_t K = model.num_qubits();
    bool toric = spec.kind == ModelKind::kToric;
    for (size_t step = 0; step < total; step++) {
        RecordEntry entry{};
        if (uniform01(schedule) < spec.p) {
            size_t q = uniform_below(schedule, K);
            MeasureOutcome m = traj.state.measure(model.single_site(q), model.single_site_support(q));
            entry = {static_cast<uint32_t>(q), true, static_cast<int8_t>(m.outcome), m.deterministic};
        } else {
            size_t g;
            if (toric && uniform01(schedule) >= spec.star_fraction) {
                g = plaquettes[uniform_below(schedule, plaquettes.size())];
            } else {
                g = primary[uniform_below(schedule, primary.size())];
            }
            const Generator &gen = model.generators()[g];
            MeasureOutcome m = traj.state.measure(gen.op, gen.support);
            entry = {static_cast<uint32_t>(g), false, static_cast<int8_t>(m.outcome), m.deterministic};
        }
        if (keep_record) {
            traj.record.entries.push_back(entry);
        }
    }
    return traj;
}

}  // namespace dualqfi
