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

#ifndef DUALQFI_DUALSPIN_H
#define DUALQFI_DUALSPIN_H

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualqfi/models.h"
#include "dualqfi/pauli.h"
#include "dualqfi/tableau.h"

namespace dualqfi {

/// Dual Ising spins tau_1..tau_{n+1} generated from a seed by
/// tau_{j+1} = tau_j * M_{order[j]}.
struct DualSpinSet {
    PauliString seed;
    std::vector<PauliString> taus;
    /// Generators consumed, in order (taus.size() - 1 entries).
    std::vector<PauliString> generators;
    /// Indices into Model::generators() when built from a model, else empty.
    std::vector<size_t> order;

    size_t size() const { return taus.size(); }
};

struct SeedReport {
    bool ok = true;
    /// Index (into the generator list) of the first generator the seed fails
    /// to commute with.
    std::optional<size_t> first_violation;
    std::string reason;
};

/// Seed must be a Hermitian involution commuting with every generator.
SeedReport validate_seed(const PauliString &tau1, std::span<const PauliString> generators);

/// Throws std::invalid_argument when the seed is invalid or the generators do
/// not pairwise commute.
DualSpinSet build_dual_spins(const PauliString &tau1, std::vector<PauliString> ordered_generators);

/// The construction used for each model:
///  - cluster1d: seed -Z_1 X_2, generators at sites 2..L-1 left to right.
///  - cluster2d: seed X_{1,1}, interior generators snaking with the first
///    index fastest: (2,2), (3,2), ..., (L-1,2), (L-1,3), (L-2,3), ...
///  - toric: seed X^h_{0,0}, interior stars snaking with the column fastest:
///    (1,1), (1,2), ..., (1,L-2), (2,L-2), ...
DualSpinSet default_dual_spins(const Model &model);

/// Checks <tau_a tau_b> == <prod of the generators consumed between a and b>
/// on the given state (1-based a < b). Throws std::out_of_range on bad indices.
bool string_identity_check(const StabilizerTableau &state, const DualSpinSet &set, size_t a, size_t b);

/// Product of generators a..b-1 (1-based, as consumed between tau_a and tau_b).
PauliString string_operator(const DualSpinSet &set, size_t a, size_t b);

}  // namespace dualqfi

#endif
