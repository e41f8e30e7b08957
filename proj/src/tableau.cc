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

#include "dualqfi/tableau.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "dualqfi/gf2.h"

namespace dualqfi {

StabilizerTableau::StabilizerTableau(size_t num_qubits, uint64_t seed)
    : n_(num_qubits),
      words_(words_for(num_qubits)),
      xs_(2 * num_qubits * words_, 0),
      zs_(2 * num_qubits * words_, 0),
      phases_(2 * num_qubits, 0),
      rng_(seed),
      scratch_(2 * words_ + 1, 0) {
    if (num_qubits == 0) {
        throw std::invalid_argument("a stabilizer tableau needs at least one qubit");
    }
    for (size_t q = 0; q < n_; q++) {
        x(q)[q / 64] |= uint64_t{1} << (q % 64);
        z(n_ + q)[q / 64] |= uint64_t{1} << (q % 64);
    }
}

bool StabilizerTableau::row_anticommutes(size_t r, const PauliString &p,
                                         std::span<const uint32_t> support) const {
    return anticommute_on({x(r), words_}, {z(r), words_}, p.x_words(), p.z_words(), support);
}

void StabilizerTableau::row_multiply(size_t target, size_t source) {
    uint64_t *tx = x(target);
    uint64_t *tz = z(target);
    const uint64_t *sx = x(source);
    const uint64_t *sz = z(source);
    uint64_t flips = 0;
    for (size_t w = 0; w < words_; w++) {
        flips += std::popcount(tz[w] & sx[w]);
        tx[w] ^= sx[w];
        tz[w] ^= sz[w];
    }
    phases_[target] = static_cast<uint8_t>((phases_[target] + phases_[source] + 2 * flips) & 3);
}

int StabilizerTableau::deterministic_sign(const PauliString &p, std::span<const uint32_t> support) const {
    uint64_t *ax = scratch_.data();
    uint64_t *az = scratch_.data() + words_;
    std::fill(scratch_.begin(), scratch_.end(), 0);
    uint64_t phase = 0;
    for (size_t i = 0; i < n_; i++) {
        if (!row_anticommutes(i, p, support)) {
            continue;
        }
        const uint64_t *sx = x(n_ + i);
        const uint64_t *sz = z(n_ + i);
        uint64_t flips = 0;
        for (size_t w = 0; w < words_; w++) {
            flips += std::popcount(az[w] & sx[w]);
            ax[w] ^= sx[w];
            az[w] ^= sz[w];
        }
        phase += phases_[n_ + i] + 2 * flips;
    }
    auto px = p.x_words();
    auto pz = p.z_words();
    for (size_t w = 0; w < words_; w++) {
        if (ax[w] != px[w] || az[w] != pz[w]) {
            throw std::logic_error("commuting Pauli is not in the stabilizer group; tableau corrupted");
        }
    }
    uint64_t diff = (p.phase_exp() + 4 - (phase & 3)) & 3;
    if (diff & 1) {
        throw std::logic_error("odd phase difference against stabilizer product");
    }
    return diff == 0 ? +1 : -1;
}

MeasureOutcome StabilizerTableau::measure(const PauliString &p, std::optional<int> forced) {
    auto support = support_words(p);
    return measure(p, support, forced);
}

MeasureOutcome StabilizerTableau::measure(const PauliString &p, std::span<const uint32_t> support,
                                          std::optional<int> forced) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("measured Pauli has the wrong qubit count");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("cannot measure non-Hermitian " + p.dense_str());
    }
    if (forced && *forced != 1 && *forced != -1) {
        throw std::invalid_argument("forced outcome must be +1 or -1");
    }
    size_t pivot = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (row_anticommutes(r, p, support)) {
            pivot = r;
            break;
        }
    }
    if (pivot == 2 * n_) {
        int s = deterministic_sign(p, support);
        if (forced && *forced != s) {
            throw std::invalid_argument("forced outcome contradicts deterministic measurement of " +
                                        p.dense_str());
        }
        return {s, true};
    }
    int outcome = forced ? *forced : ((rng_() >> 63) ? -1 : +1);
    for (size_t r = 0; r < 2 * n_; r++) {
        if (r != pivot && r != pivot - n_ && row_anticommutes(r, p, support)) {
            row_multiply(r, pivot);
        }
    }
    size_t d = pivot - n_;
    std::copy_n(x(pivot), words_, x(d));
    std::copy_n(z(pivot), words_, z(d));
    phases_[d] = phases_[pivot];
    auto px = p.x_words();
    auto pz = p.z_words();
    std::copy(px.begin(), px.end(), x(pivot));
    std::copy(pz.begin(), pz.end(), z(pivot));
    phases_[pivot] = static_cast<uint8_t>((p.phase_exp() + (outcome < 0 ? 2 : 0)) & 3);
    return {outcome, false};
}

int StabilizerTableau::expectation(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("observable has the wrong qubit count");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("expectation of non-Hermitian " + p.dense_str());
    }
    auto support = support_words(p);
    for (size_t r = n_; r < 2 * n_; r++) {
        if (row_anticommutes(r, p, support)) {
            return 0;
        }
    }
    return deterministic_sign(p, support);
}

int StabilizerTableau::entropy_bits(std::span<const size_t> region) const {
    std::vector<bool> seen(n_, false);
    for (size_t q : region) {
        if (q >= n_) {
            throw std::out_of_range("region index " + std::to_string(q) + " outside " + std::to_string(n_) +
                                    " qubits");
        }
        if (seen[q]) {
            throw std::invalid_argument("region lists qubit " + std::to_string(q) + " twice");
        }
        seen[q] = true;
    }
    if (region.empty()) {
        return 0;
    }
    Gf2Matrix m(n_, 2 * region.size());
    for (size_t i = 0; i < n_; i++) {
        const uint64_t *sx = x(n_ + i);
        const uint64_t *sz = z(n_ + i);
        uint64_t *dst = m.row(i);
        for (size_t t = 0; t < region.size(); t++) {
            size_t q = region[t];
            uint64_t xb = (sx[q / 64] >> (q % 64)) & 1;
            uint64_t zb = (sz[q / 64] >> (q % 64)) & 1;
            dst[(2 * t) / 64] |= (xb << ((2 * t) % 64)) | (zb << ((2 * t + 1) % 64));
        }
    }
    return static_cast<int>(m.eliminate_rank()) - static_cast<int>(region.size());
}

PauliString StabilizerTableau::row_pauli(size_t r) const {
    PauliString p(n_);
    for (size_t q = 0; q < n_; q++) {
        p.set_bits(q, (x(r)[q / 64] >> (q % 64)) & 1, (z(r)[q / 64] >> (q % 64)) & 1);
    }
    p.set_phase_exp(phases_[r]);
    return p;
}

void StabilizerTableau::validate() const {
    std::vector<PauliString> stab;
    std::vector<PauliString> destab;
    for (size_t i = 0; i < n_; i++) {
        stab.push_back(stabilizer(i));
        destab.push_back(destabilizer(i));
    }
    for (size_t i = 0; i < n_; i++) {
        if (!stab[i].is_hermitian()) {
            throw std::logic_error("stabilizer " + std::to_string(i) + " has an odd sign");
        }
        for (size_t j = i + 1; j < n_; j++) {
            if (!commutes(stab[i], stab[j])) {
                throw std::logic_error("stabilizers " + std::to_string(i) + " and " + std::to_string(j) +
                                       " anticommute");
            }
        }
        for (size_t j = 0; j < n_; j++) {
            if (commutes(destab[i], stab[j]) == (i == j)) {
                throw std::logic_error("destabilizer " + std::to_string(i) + " is not paired with stabilizer " +
                                       std::to_string(i) + " alone");
            }
        }
    }
    Gf2Matrix m(2 * n_, 2 * n_);
    for (size_t r = 0; r < 2 * n_; r++) {
        for (size_t q = 0; q < n_; q++) {
            m.set(r, q, (x(r)[q / 64] >> (q % 64)) & 1);
            m.set(r, n_ + q, (z(r)[q / 64] >> (q % 64)) & 1);
        }
    }
    if (m.eliminate_rank() != 2 * n_) {
        throw std::logic_error("tableau rows are linearly dependent");
    }
}

std::string StabilizerTableau::dump() const {
    std::string out;
    for (size_t i = 0; i < n_; i++) {
        out += "D" + std::to_string(i) + " " + destabilizer(i).dense_str() + "\n";
    }
    for (size_t i = 0; i < n_; i++) {
        out += "S" + std::to_string(i) + " " + stabilizer(i).dense_str() + "\n";
    }
    return out;
}

}  // namespace dualqfi
