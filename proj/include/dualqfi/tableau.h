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

#ifndef DUALQFI_TABLEAU_H
#define DUALQFI_TABLEAU_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualqfi/pauli.h"
#include "dualqfi/rng.h"

namespace dualqfi {

struct MeasureOutcome {
    int outcome;  // +1 or -1
    bool deterministic;
};

/// Pure stabilizer state on K qubits with destabilizer bookkeeping.
///
/// Rows 0..K-1 hold destabilizers, rows K..2K-1 the paired stabilizers.
/// Destabilizer i anticommutes with stabilizer i and commutes with every
/// other stabilizer, so the sign of a commuting Pauli is read off in O(K^2/64)
/// without Gaussian elimination.
///
/// A tableau is not thread safe (measurement and expectation share scratch
/// space); move it between threads, never share it.
class StabilizerTableau {
   public:
    /// |0...0>: stabilizers +Z_j, destabilizers +X_j. Throws for K = 0.
    explicit StabilizerTableau(size_t num_qubits, uint64_t seed = 0);

    size_t num_qubits() const { return n_; }

    /// Projective measurement of a Hermitian Pauli. A forced outcome is only
    /// honoured for random measurements; for deterministic ones it must match.
    MeasureOutcome measure(const PauliString &p, std::optional<int> forced = std::nullopt);
    /// Same, with the support words of p precomputed by support_words().
    MeasureOutcome measure(const PauliString &p, std::span<const uint32_t> support,
                           std::optional<int> forced = std::nullopt);

    /// <p> in {-1, 0, +1}. Throws std::invalid_argument for non-Hermitian p.
    int expectation(const PauliString &p) const;

    /// Von Neumann entropy (base 2) of the reduced state on `region`.
    int entropy_bits(std::span<const size_t> region) const;

    PauliString stabilizer(size_t i) const { return row_pauli(n_ + i); }
    PauliString destabilizer(size_t i) const { return row_pauli(i); }

    /// Throws std::logic_error if a structural invariant is broken.
    void validate() const;

    /// One line per row: "D<i> <dense>" then "S<i> <dense>".
    std::string dump() const;

    Rng &rng() { return rng_; }

   private:
    size_t n_;
    size_t words_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> phases_;
    Rng rng_;
    mutable std::vector<uint64_t> scratch_;

    uint64_t *x(size_t r) { return xs_.data() + r * words_; }
    uint64_t *z(size_t r) { return zs_.data() + r * words_; }
    const uint64_t *x(size_t r) const { return xs_.data() + r * words_; }
    const uint64_t *z(size_t r) const { return zs_.data() + r * words_; }

    bool row_anticommutes(size_t r, const PauliString &p, std::span<const uint32_t> support) const;
    void row_multiply(size_t target, size_t source);
    int deterministic_sign(const PauliString &p, std::span<const uint32_t> support) const;
    PauliString row_pauli(size_t r) const;
};

}  // namespace dualqfi

#endif
