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

#include "dualqfi/dualspin.h"

#include <stdexcept>

namespace dualqfi {

SeedReport validate_seed(const PauliString &tau1, std::span<const PauliString> generators) {
    SeedReport report;
    if (!tau1.is_hermitian_involution()) {
        report.ok = false;
        report.reason = "seed " + tau1.dense_str() + " is not a Hermitian involution";
        return report;
    }
    for (size_t k = 0; k < generators.size(); k++) {
        if (generators[k].num_qubits() != tau1.num_qubits()) {
            report.ok = false;
            report.first_violation = k;
            report.reason = "generator " + std::to_string(k) + " has the wrong qubit count";
            return report;
        }
        if (!commutes(tau1, generators[k])) {
            report.ok = false;
            report.first_violation = k;
            report.reason = "seed anticommutes with generator " + std::to_string(k) + " (" +
                            generators[k].dense_str() + ")";
            return report;
        }
    }
    return report;
}

DualSpinSet build_dual_spins(const PauliString &tau1, std::vector<PauliString> ordered_generators) {
    SeedReport report = validate_seed(tau1, ordered_generators);
    if (!report.ok) {
        throw std::invalid_argument(report.reason);
    }
    for (size_t a = 0; a < ordered_generators.size(); a++) {
        for (size_t b = a + 1; b < ordered_generators.size(); b++) {
            if (!commutes(ordered_generators[a], ordered_generators[b])) {
                throw std::invalid_argument("generators " + std::to_string(a) + " and " + std::to_string(b) +
                                            " anticommute");
            }
        }
    }
    DualSpinSet set{tau1, {tau1}, std::move(ordered_generators), {}};
    set.taus.reserve(set.generators.size() + 1);
    for (const auto &m : set.generators) {
        set.taus.push_back(multiply(set.taus.back(), m));
    }
    return set;
}

DualSpinSet default_dual_spins(const Model &model) {
    int L = model.L();
    size_t K = model.num_qubits();
    PauliString seed(K);
    std::vector<size_t> order;
    switch (model.kind()) {
        case ModelKind::kCluster1D:
            seed = PauliString::parse("-Z1 X2", K);
            for (int j = 2; j <= L - 1; j++) {
                order.push_back(model.generator_index(GeneratorType::kCluster, j));
            }
            break;
        case ModelKind::kCluster2D:
            seed = PauliString::single(K, cluster2d_qubit(L, 1, 1), 'X');
            for (int j = 2; j <= L - 1; j++) {
                bool up = (j - 2) % 2 == 0;
                for (int s = 0; s < L - 2; s++) {
                    int i = up ? 2 + s : L - 1 - s;
                    order.push_back(model.generator_index(GeneratorType::kCluster, i, j));
                }
            }
            break;
        case ModelKind::kToric:
            seed = PauliString::single(K, toric_qubit(L, {0, 0, 'h'}), 'X');
            for (int r = 1; r <= L - 2; r++) {
                bool right = (r - 1) % 2 == 0;
                for (int s = 0; s < L - 2; s++) {
                    int c = right ? 1 + s : L - 2 - s;
                    order.push_back(model.generator_index(GeneratorType::kStar, r, c));
                }
            }
            break;
    }
    std::vector<PauliString> gens;
    gens.reserve(order.size());
    for (size_t g : order) {
        gens.push_back(model.generators()[g].op);
    }
    DualSpinSet set = build_dual_spins(seed, std::move(gens));
    set.order = std::move(order);
    return set;
}

PauliString string_operator(const DualSpinSet &set, size_t a, size_t b) {
    if (a < 1 || b > set.size() || a >= b) {
        throw std::out_of_range("need 1 <= a < b <= " + std::to_string(set.size()));
    }
    PauliString prod(set.seed.num_qubits());
    for (size_t j = a; j < b; j++) {
        prod *= set.generators[j - 1];
    }
    return prod;
}

bool string_identity_check(const StabilizerTableau &state, const DualSpinSet &set, size_t a, size_t b) {
    PauliString strand = string_operator(set, a, b);
    PauliString pair = multiply(set.taus[a - 1], set.taus[b - 1]);
    return state.expectation(pair) == state.expectation(strand);
}

}  // namespace dualqfi
