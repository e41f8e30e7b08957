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

#ifndef DUALQFI_QFI_H
#define DUALQFI_QFI_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dualqfi/pauli.h"
#include "dualqfi/rng.h"
#include "dualqfi/tableau.h"

namespace dualqfi {

// Normalization used throughout: for O = sum_j n_j T_j built from
// involutions T_j, F_Q(O) = Var(O) = sum_jk n_j n_k C_jk and f_Q = F_Q / K.
// This is the textbook 4 Var(O) with spin-1/2 constituents T_j / 2, so a
// GHZ-like set of N dual spins gives F_Q = N^2 and a K-qubit GHZ state gives
// f_Q = K.

/// Connected correlators C_jk = <T_j T_k> - <T_j><T_k> of commuting
/// involutions. Entries are in {-1, 0, +1}.
struct CorrelationMatrix {
    size_t n = 0;
    std::vector<int8_t> c;
    std::vector<int8_t> means;

    int at(size_t j, size_t k) const { return c[j * n + k]; }
};

CorrelationMatrix correlation_matrix(const StabilizerTableau &state, std::span<const PauliString> observables);

/// Sign vector with its cached field h_j = sum_k C_jk s_k, so a single flip
/// is scored and applied in O(N).
struct SignField {
    explicit SignField(const CorrelationMatrix &c) : corr(&c) {}

    const CorrelationMatrix *corr;
    std::vector<int8_t> signs;
    std::vector<int64_t> field;
    int64_t form = 0;

    void reset(std::vector<int8_t> s);
    /// Change of the quadratic form if s_j is flipped.
    int64_t flip_delta(size_t j) const;
    void flip(size_t j);
};

/// sum_jk s_j s_k C_jk.
int64_t quadratic_form(const CorrelationMatrix &corr, std::span<const int8_t> signs);

/// quadratic_form / K. Throws std::invalid_argument on size mismatch or K = 0.
double qfi_density(const CorrelationMatrix &corr, std::span<const int8_t> signs, size_t num_qubits);

/// Smallest number of parties certified entangled by f_q: if f_q > m for
/// integer m then at least m + 1 parties are entangled.
int witness_parties(double f_q);

struct AnnealSchedule {
    double t_init = 2.0;
    double t_final = 0.05;
    double cooling = 0.9;
    /// Moves per temperature; 0 means ceil(N^{3/2}).
    size_t sweeps_per_t = 0;
    int restarts = 3;

    void validate() const;
    size_t moves_per_temperature(size_t n) const;
};

struct QfiResult {
    double f_q = 0.0;
    int64_t form = 0;
    std::vector<int8_t> signs;
    size_t iterations = 0;
    size_t accepted = 0;
    int witness_parties = 1;
};

/// Metropolis single-flip annealing of the sign vector maximizing the
/// quadratic form, with geometric cooling and a zero-temperature quench at
/// the end of every restart. Restart 0 starts from `warm_start` if given.
QfiResult anneal_signs(const CorrelationMatrix &corr, const AnnealSchedule &schedule, Rng &rng,
                       size_t num_qubits, std::span<const int8_t> warm_start = {});

/// Exact maximum over all sign vectors (Gray-code walk). N <= 24.
QfiResult brute_force_signs(const CorrelationMatrix &corr, size_t num_qubits);

/// Warm start n_1 = +1, n_{j+1} = n_j * m_j from the last recorded outcome
/// m_j of the generator between tau_j and tau_{j+1} (0 counts as +1).
std::vector<int8_t> chain_signs(std::span<const int> generator_outcomes);

struct LocalQfiResult {
    double f_q = 0.0;
    double form = 0.0;
    std::vector<std::array<double, 3>> directions;
    size_t iterations = 0;
    size_t accepted = 0;
};

/// 3K x 3K connected correlators of single-site X, Y, Z (row index 3q + a).
/// Same-site blocks use the symmetrized product, delta_ab - <s_a><s_b>.
std::vector<double> local_covariance(const StabilizerTableau &state);

/// QFI density of O = sum_j n_j . sigma_j maximized over unit vectors n_j.
/// Annealing resamples one n_j uniformly on the sphere per move; each
/// restart ends with fixed-point iterations n_j <- normalize((C n)_j), which
/// cannot decrease the (convex) objective.
LocalQfiResult local_qfi(const StabilizerTableau &state, const AnnealSchedule &schedule, Rng &rng);

}  // namespace dualqfi

#endif
