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

#ifndef DUALQFI_ENTANGLEMENT_H
#define DUALQFI_ENTANGLEMENT_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dualqfi/models.h"
#include "dualqfi/tableau.h"

namespace dualqfi {

/// Disjoint qubit regions A, B, C; D is whatever is left over.
struct Partition {
    std::vector<size_t> a;
    std::vector<size_t> b;
    std::vector<size_t> c;
    std::vector<size_t> d;

    /// Throws std::invalid_argument if regions overlap or leave [0, K).
    void validate(size_t num_qubits) const;
};

/// Chain of L sites cut into contiguous quarters ordered A | B | D | C.
Partition chain_quarters(int L);

/// Four vertical strips (columns floor(4 c / L)) spanning the full height,
/// A, B, C adjacent and D the last strip. Toric edges are binned by the
/// column index of their label.
Partition vertical_strips(const Model &model);

/// Quadrants split at row and column L/2: A top-left, B top-right,
/// C bottom-right, D bottom-left. A, B and C meet at the centre.
Partition quadrants(const Model &model);

enum class PartitionGeometry { kStrips, kQuadrants };

std::string to_string(PartitionGeometry g);
/// "strips" or "quadrants".
PartitionGeometry parse_partition_geometry(std::string_view name);
/// The I3 partition of a 2D model in the given geometry.
Partition tmi_partition(const Model &model, PartitionGeometry g);

/// I(A:C|B) = S_AB + S_BC - S_B - S_ABC.
int conditional_mutual_information(const StabilizerTableau &state, const Partition &part);

/// Topological entanglement of a chain: conditional mutual information on
/// chain_quarters(L). Throws std::invalid_argument unless 4 divides L.
int s_topo(const StabilizerTableau &state, int L);

/// I3 = S_A + S_B + S_C + S_ABC - S_AB - S_BC - S_CA.
int tmi(const StabilizerTableau &state, const Partition &part);

}  // namespace dualqfi

#endif
