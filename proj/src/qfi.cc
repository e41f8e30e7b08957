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

#include "dualqfi/qfi.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dualqfi {

CorrelationMatrix correlation_matrix(const StabilizerTableau &state, std::span<const PauliString> observables) {
    CorrelationMatrix corr;
    corr.n = observables.size();
    corr.c.assign(corr.n * corr.n, 0);
    corr.means.assign(corr.n, 0);
    for (size_t j = 0; j < corr.n; j++) {
        if (observables[j].num_qubits() != state.num_qubits()) {
            throw std::invalid_argument("observable " + std::to_string(j) + " does not match the state size");
        }
        corr.means[j] = static_cast<int8_t>(state.expectation(observables[j]));
    }
    PauliString prod(state.num_qubits());
    for (size_t j = 0; j < corr.n; j++) {
        corr.c[j * corr.n + j] = static_cast<int8_t>(1 - corr.means[j] * corr.means[j]);
        for (size_t k = j + 1; k < corr.n; k++) {
            prod = observables[j];
            prod *= observables[k];
            int v = state.expectation(prod) - corr.means[j] * corr.means[k];
            corr.c[j * corr.n + k] = static_cast<int8_t>(v);
            corr.c[k * corr.n + j] = static_cast<int8_t>(v);
        }
    }
    return corr;
}

int64_t quadratic_form(const CorrelationMatrix &corr, std::span<const int8_t> signs) {
    if (signs.size() != corr.n) {
        throw std::invalid_argument("sign vector has " + std::to_string(signs.size()) + " entries, expected " +
                                    std::to_string(corr.n));
    }
    int64_t total = 0;
    for (size_t j = 0; j < corr.n; j++) {
        int64_t row = 0;
        for (size_t k = 0; k < corr.n; k++) {
            row += corr.c[j * corr.n + k] * signs[k];
        }
        total += row * signs[j];
    }
    return total;
}

double qfi_density(const CorrelationMatrix &corr, std::span<const int8_t> signs, size_t num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("qubit count must be positive");
    }
    return static_cast<double>(quadratic_form(corr, signs)) / static_cast<double>(num_qubits);
}

int witness_parties(double f_q) {
    if (!(f_q > 0.0)) {
        return 1;
    }
    return static_cast<int>(std::ceil(f_q - 1e-12));
}

void AnnealSchedule::validate() const {
    if (!(t_final > 0.0) || !(t_init > t_final)) {
        throw std::invalid_argument("annealing needs t_init > t_final > 0");
    }
    if (!(cooling > 0.0 && cooling < 1.0)) {
        throw std::invalid_argument("cooling factor must lie in (0, 1)");
    }
    if (restarts < 1) {
        throw std::invalid_argument("annealing needs at least one restart");
    }
}

size_t AnnealSchedule::moves_per_temperature(size_t n) const {
    if (sweeps_per_t > 0) {
        return sweeps_per_t;
    }
    return static_cast<size_t>(std::ceil(std::pow(static_cast<double>(n), 1.5)));
}

void SignField::reset(std::vector<int8_t> s) {
    signs = std::move(s);
    size_t n = corr->n;
    field.assign(n, 0);
    form = 0;
    for (size_t j = 0; j < n; j++) {
        int64_t h = 0;
        for (size_t k = 0; k < n; k++) {
            h += corr->c[j * n + k] * signs[k];
        }
        field[j] = h;
        form += h * signs[j];
    }
}

int64_t SignField::flip_delta(size_t j) const {
    int64_t off = field[j] - corr->c[j * corr->n + j] * signs[j];
    return -4 * signs[j] * off;
}

void SignField::flip(size_t j) {
    size_t n = corr->n;
    int64_t delta = flip_delta(j);
    int8_t old = signs[j];
    const int8_t *col = corr->c.data() + j * n;  // symmetric
    for (size_t k = 0; k < n; k++) {
        field[k] -= 2 * col[k] * old;
    }
    signs[j] = static_cast<int8_t>(-old);
    form += delta;
}

namespace {

std::vector<int8_t> random_signs(size_t n, Rng &rng) {
    std::vector<int8_t> s(n);
    for (auto &v : s) {
        v = (rng() >> 63) ? -1 : 1;
    }
    return s;
}

}  // namespace

QfiResult anneal_signs(const CorrelationMatrix &corr, const AnnealSchedule &schedule, Rng &rng, size_t num_qubits,
                       std::span<const int8_t> warm_start) {
    schedule.validate();
    if (num_qubits == 0) {
        throw std::invalid_argument("qubit count must be positive");
    }
    if (!warm_start.empty() && warm_start.size() != corr.n) {
        throw std::invalid_argument("warm start has the wrong length");
    }
    QfiResult best;
    if (corr.n == 0) {
        return best;
    }
    best.form = std::numeric_limits<int64_t>::min();
    size_t n = corr.n;
    size_t moves = schedule.moves_per_temperature(n);
    SignField st(corr);
    for (int r = 0; r < schedule.restarts; r++) {
        if (r == 0 && !warm_start.empty()) {
            st.reset(std::vector<int8_t>(warm_start.begin(), warm_start.end()));
        } else {
            st.reset(random_signs(n, rng));
        }
        auto consider = [&]() {
            if (st.form > best.form) {
                best.form = st.form;
                best.signs = st.signs;
            }
        };
        consider();
        for (double t = schedule.t_init; t >= schedule.t_final; t *= schedule.cooling) {
            for (size_t m = 0; m < moves; m++) {
                size_t j = uniform_below(rng, n);
                int64_t delta = st.flip_delta(j);
                best.iterations++;
                if (delta >= 0 || uniform01(rng) < std::exp(static_cast<double>(delta) / t)) {
                    st.flip(j);
                    best.accepted++;
                    if (delta > 0) {
                        consider();
                    }
                }
            }
        }
        bool improved = true;
        while (improved) {
            improved = false;
            for (size_t j = 0; j < n; j++) {
                int64_t delta = st.flip_delta(j);
                if (delta > 0) {
                    st.flip(j);
                    improved = true;
                }
            }
        }
        consider();
    }
    best.f_q = static_cast<double>(best.form) / static_cast<double>(num_qubits);
    best.witness_parties = witness_parties(best.f_q);
    return best;
}

QfiResult brute_force_signs(const CorrelationMatrix &corr, size_t num_qubits) {
    if (corr.n > 24) {
        throw std::invalid_argument("brute force limited to 24 spins, got " + std::to_string(corr.n));
    }
    if (num_qubits == 0) {
        throw std::invalid_argument("qubit count must be positive");
    }
    QfiResult best;
    if (corr.n == 0) {
        return best;
    }
    size_t n = corr.n;
    SignField st(corr);
    st.reset(std::vector<int8_t>(n, 1));
    best.form = st.form;
    best.signs = st.signs;
    // s_0 stays +1: the form is invariant under a global flip.
    uint64_t count = uint64_t{1} << (n - 1);
    for (uint64_t i = 1; i < count; i++) {
        size_t j = static_cast<size_t>(std::countr_zero(i)) + 1;
        st.flip(j);
        best.iterations++;
        if (st.form > best.form) {
            best.form = st.form;
            best.signs = st.signs;
        }
    }
    best.f_q = static_cast<double>(best.form) / static_cast<double>(num_qubits);
    best.witness_parties = witness_parties(best.f_q);
    return best;
}

std::vector<int8_t> chain_signs(std::span<const int> generator_outcomes) {
    std::vector<int8_t> s(generator_outcomes.size() + 1, 1);
    for (size_t j = 0; j < generator_outcomes.size(); j++) {
        s[j + 1] = static_cast<int8_t>(generator_outcomes[j] < 0 ? -s[j] : s[j]);
    }
    return s;
}

std::vector<double> local_covariance(const StabilizerTableau &state) {
    size_t K = state.num_qubits();
    size_t dim = 3 * K;
    static constexpr char kAxes[3] = {'X', 'Y', 'Z'};
    std::vector<PauliString> ops;
    ops.reserve(dim);
    std::vector<double> means(dim);
    for (size_t q = 0; q < K; q++) {
        for (char a : kAxes) {
            ops.push_back(PauliString::single(K, q, a));
            means[ops.size() - 1] = state.expectation(ops.back());
        }
    }
    std::vector<double> cov(dim * dim, 0.0);
    PauliString prod(K);
    for (size_t q = 0; q < K; q++) {
        for (size_t a = 0; a < 3; a++) {
            for (size_t b = 0; b < 3; b++) {
                size_t u = 3 * q + a, v = 3 * q + b;
                cov[u * dim + v] = (a == b ? 1.0 : 0.0) - means[u] * means[v];
            }
        }
        for (size_t r = q + 1; r < K; r++) {
            for (size_t a = 0; a < 3; a++) {
                for (size_t b = 0; b < 3; b++) {
                    size_t u = 3 * q + a, v = 3 * r + b;
                    prod = ops[u];
                    prod *= ops[v];
                    double c = state.expectation(prod) - means[u] * means[v];
                    cov[u * dim + v] = c;
                    cov[v * dim + u] = c;
                }
            }
        }
    }
    return cov;
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 random_direction(Rng &rng) {
    double z = 2.0 * uniform01(rng) - 1.0;
    double phi = 2.0 * std::numbers::pi * uniform01(rng);
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {rho * std::cos(phi), rho * std::sin(phi), z};
}

struct DirectionState {
    const std::vector<double> &cov;
    size_t K;
    std::vector<Vec3> n;
    std::vector<Vec3> field;  // field_j = sum_k C_jk n_k
    double form = 0.0;

    double entry(size_t j, size_t a, size_t k, size_t b) const { return cov[(3 * j + a) * 3 * K + 3 * k + b]; }

    void reset(std::vector<Vec3> dirs) {
        n = std::move(dirs);
        field.assign(K, {0, 0, 0});
        form = 0.0;
        for (size_t j = 0; j < K; j++) {
            for (size_t a = 0; a < 3; a++) {
                double h = 0.0;
                for (size_t k = 0; k < K; k++) {
                    for (size_t b = 0; b < 3; b++) {
                        h += entry(j, a, k, b) * n[k][b];
                    }
                }
                field[j][a] = h;
                form += h * n[j][a];
            }
        }
    }

    double delta(size_t j, const Vec3 &m) const {
        // F(n') - F(n) = 2 (m - n_j).(h_j - C_jj n_j) + m C_jj m - n_j C_jj n_j
        const Vec3 &old = n[j];
        double d = 0.0;
        for (size_t a = 0; a < 3; a++) {
            double self = 0.0;
            for (size_t b = 0; b < 3; b++) {
                self += entry(j, a, j, b) * old[b];
            }
            d += 2.0 * (m[a] - old[a]) * (field[j][a] - self);
        }
        for (size_t a = 0; a < 3; a++) {
            for (size_t b = 0; b < 3; b++) {
                d += entry(j, a, j, b) * (m[a] * m[b] - old[a] * old[b]);
            }
        }
        return d;
    }

    void move(size_t j, const Vec3 &m, double d) {
        Vec3 diff = {m[0] - n[j][0], m[1] - n[j][1], m[2] - n[j][2]};
        for (size_t k = 0; k < K; k++) {
            for (size_t a = 0; a < 3; a++) {
                field[k][a] += entry(k, a, j, 0) * diff[0] + entry(k, a, j, 1) * diff[1] + entry(k, a, j, 2) * diff[2];
            }
        }
        n[j] = m;
        form += d;
    }
};

}  // namespace

LocalQfiResult local_qfi(const StabilizerTableau &state, const AnnealSchedule &schedule, Rng &rng) {
    schedule.validate();
    size_t K = state.num_qubits();
    std::vector<double> cov = local_covariance(state);
    LocalQfiResult best;
    best.form = -1.0;
    size_t moves = schedule.moves_per_temperature(K);
    DirectionState st{cov, K, {}, {}, 0.0};
    for (int r = 0; r < schedule.restarts; r++) {
        std::vector<Vec3> init(K);
        for (auto &v : init) {
            v = random_direction(rng);
        }
        st.reset(std::move(init));
        for (double t = schedule.t_init; t >= schedule.t_final; t *= schedule.cooling) {
            for (size_t m = 0; m < moves; m++) {
                size_t j = uniform_below(rng, K);
                Vec3 proposal = random_direction(rng);
                double d = st.delta(j, proposal);
                best.iterations++;
                if (d >= 0.0 || uniform01(rng) < std::exp(d / t)) {
                    st.move(j, proposal, d);
                    best.accepted++;
                }
            }
        }
        for (int sweep = 0; sweep < 2000; sweep++) {
            double before = st.form;
            for (size_t j = 0; j < K; j++) {
                const Vec3 &h = st.field[j];
                double norm = std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
                if (norm < 1e-12) {
                    continue;
                }
                Vec3 m = {h[0] / norm, h[1] / norm, h[2] / norm};
                double d = st.delta(j, m);
                if (d > 0.0) {
                    st.move(j, m, d);
                }
            }
            if (st.form - before < 1e-13 * std::max(1.0, st.form)) {
                break;
            }
        }
        st.reset(st.n);  // drop accumulated rounding in the running sums
        if (st.form > best.form) {
            best.form = st.form;
            best.directions = st.n;
        }
    }
    best.f_q = best.form / static_cast<double>(K);
    return best;
}

}  // namespace dualqfi
