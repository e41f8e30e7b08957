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

#include "dualqfi/entanglement.h"

#include <stdexcept>
#include <utility>

namespace dualqfi {

namespace {

std::vector<size_t> join(std::initializer_list<const std::vector<size_t> *> parts) {
    std::vector<size_t> out;
    for (const auto *p : parts) {
        out.insert(out.end(), p->begin(), p->end());
    }
    return out;
}

}  // namespace

void Partition::validate(size_t num_qubits) const {
    std::vector<bool> used(num_qubits, false);
    for (const auto *region : {&a, &b, &c, &d}) {
        for (size_t q : *region) {
            if (q >= num_qubits) {
                throw std::invalid_argument("partition index " + std::to_string(q) + " outside the system");
            }
            if (used[q]) {
                throw std::invalid_argument("partition regions overlap at qubit " + std::to_string(q));
            }
            used[q] = true;
        }
    }
}

Partition chain_quarters(int L) {
    if (L < 4 || L % 4 != 0) {
        throw std::invalid_argument("chain quarters need L divisible by 4, got " + std::to_string(L));
    }
    Partition part;
    size_t quarter = static_cast<size_t>(L) / 4;
    std::vector<size_t> *order[4] = {&part.a, &part.b, &part.d, &part.c};
    for (size_t q = 0; q < static_cast<size_t>(L); q++) {
        order[q / quarter]->push_back(q);
    }
    return part;
}

Partition vertical_strips(const Model &model) {
    int L = model.L();
    if (model.kind() == ModelKind::kCluster1D || L < 4) {
        throw std::invalid_argument("vertical strips need a 2D model with L >= 4");
    }
    Partition part;
    std::vector<size_t> *strips[4] = {&part.a, &part.b, &part.c, &part.d};
    for (size_t q = 0; q < model.num_qubits(); q++) {
        int col = model.kind() == ModelKind::kToric ? toric_edge(L, q).col : static_cast<int>(q % L);
        strips[(4 * col) / L]->push_back(q);
    }
    return part;
}

namespace {

std::pair<int, int> row_col(const Model &model, size_t q) {
    int L = model.L();
    if (model.kind() == ModelKind::kToric) {
        Edge e = toric_edge(L, q);
        return {e.row, e.col};
    }
    return {static_cast<int>(q) / L, static_cast<int>(q) % L};
}

}  // namespace

Partition quadrants(const Model &model) {
    int L = model.L();
    if (model.kind() == ModelKind::kCluster1D || L < 4) {
        throw std::invalid_argument("quadrants need a 2D model with L >= 4");
    }
    Partition part;
    int half = L / 2;
    for (size_t q = 0; q < model.num_qubits(); q++) {
        auto [row, col] = row_col(model, q);
        bool top = row < half, left = col < half;
        (top ? (left ? part.a : part.b) : (left ? part.d : part.c)).push_back(q);
    }
    return part;
}

std::string to_string(PartitionGeometry g) { return g == PartitionGeometry::kStrips ? "strips" : "quadrants"; }

PartitionGeometry parse_partition_geometry(std::string_view name) {
    if (name == "strips") return PartitionGeometry::kStrips;
    if (name == "quadrants") return PartitionGeometry::kQuadrants;
    throw std::invalid_argument("unknown partition geometry '" + std::string(name) + "'");
}

Partition tmi_partition(const Model &model, PartitionGeometry g) {
    return g == PartitionGeometry::kStrips ? vertical_strips(model) : quadrants(model);
}

int conditional_mutual_information(const StabilizerTableau &state, const Partition &part) {
    part.validate(state.num_qubits());
    auto ab = join({&part.a, &part.b});
    auto bc = join({&part.b, &part.c});
    auto abc = join({&part.a, &part.b, &part.c});
    return state.entropy_bits(ab) + state.entropy_bits(bc) - state.entropy_bits(part.b) - state.entropy_bits(abc);
}

int s_topo(const StabilizerTableau &state, int L) {
    if (static_cast<size_t>(L) != state.num_qubits()) {
        throw std::invalid_argument("chain length does not match the state");
    }
    return conditional_mutual_information(state, chain_quarters(L));
}

int tmi(const StabilizerTableau &state, const Partition &part) {
    part.validate(state.num_qubits());
    auto ab = join({&part.a, &part.b});
    auto bc = join({&part.b, &part.c});
    auto ca = join({&part.c, &part.a});
    auto abc = join({&part.a, &part.b, &part.c});
    return state.entropy_bits(part.a) + state.entropy_bits(part.b) + state.entropy_bits(part.c) +
           state.entropy_bits(abc) - state.entropy_bits(ab) - state.entropy_bits(bc) - state.entropy_bits(ca);
}

}  // namespace dualqfi
