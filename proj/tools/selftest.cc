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

#include "selftest.h"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "dualqfi/dualspin.h"
#include "dualqfi/harness.h"
#include "dualqfi/models.h"
#include "dualqfi/qfi.h"

using namespace dualqfi;

namespace {

using Mat2 = std::array<std::complex<double>, 4>;

Mat2 mat_of(char letter) {
    using C = std::complex<double>;
    switch (letter) {
        case 'X':
            return {C(0), C(1), C(1), C(0)};
        case 'Y':
            return {C(0), C(0, -1), C(0, 1), C(0)};
        case 'Z':
            return {C(1), C(0), C(0), C(-1)};
        default:
            return {C(1), C(0), C(0), C(1)};
    }
}

Mat2 matmul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

// One-qubit products against explicit matrices.
std::string check_pauli_table() {
    const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (char a : std::string("IXYZ")) {
        for (char b : std::string("IXYZ")) {
            PauliString pa = PauliString::single(1, 0, a), pb = PauliString::single(1, 0, b);
            PauliString pc = multiply(pa, pb);
            Mat2 want = matmul(mat_of(a), mat_of(b));
            Mat2 got = mat_of(pc.letter(0));
            std::complex<double> ph = ipow[(pc.phase_exp() - static_cast<int>(pc.y_count()) + 4) % 4];
            for (int k = 0; k < 4; k++) {
                if (std::abs(ph * got[k] - want[k]) > 1e-12) {
                    return std::string("product ") + a + b + " disagrees with matrices";
                }
            }
        }
    }
    return "";
}

std::string check_closed_forms() {
    for (auto [kind, L] : {std::pair{ModelKind::kCluster2D, 4}, {ModelKind::kToric, 4}, {ModelKind::kCluster1D, 8}}) {
        Model model(ModelSpec{kind, L, 0.0});
        DualSpinSet set = default_dual_spins(model);
        Trajectory t = run_trajectory(model, 7, false);
        QfiResult q = brute_force_signs(correlation_matrix(t.state, set.taus), model.num_qubits());
        double n = static_cast<double>(set.size());
        double want = n * n / static_cast<double>(model.num_qubits());
        if (std::abs(q.f_q - want) > 1e-12) {
            return to_string(kind) + " L=" + std::to_string(L) + ": f_q " + std::to_string(q.f_q) + " != N^2/K " +
                   std::to_string(want);
        }
    }
    return "";
}

std::string check_string_identity() {
    for (ModelKind kind : {ModelKind::kCluster1D, ModelKind::kCluster2D, ModelKind::kToric}) {
        for (double p : {0.1, 0.5, 0.9}) {
            Model model(ModelSpec{kind, 4, p});
            DualSpinSet set = default_dual_spins(model);
            Trajectory t = run_trajectory(model, 11, false);
            t.state.validate();
            for (size_t a = 1; a <= set.size(); a++) {
                for (size_t b = a + 1; b <= set.size(); b++) {
                    if (!string_identity_check(t.state, set, a, b)) {
                        return to_string(kind) + " p=" + std::to_string(p) + " pair (" + std::to_string(a) + "," +
                               std::to_string(b) + ")";
                    }
                }
            }
        }
    }
    return "";
}

std::string check_anneal() {
    for (ModelKind kind : {ModelKind::kCluster1D, ModelKind::kCluster2D}) {
        for (double p : {0.1, 0.5, 0.9}) {
            Model model(ModelSpec{kind, kind == ModelKind::kCluster1D ? 12 : 4, p});
            DualSpinSet set = default_dual_spins(model);
            for (uint64_t s = 0; s < 5; s++) {
                Trajectory t = run_trajectory(model, s, false);
                CorrelationMatrix c = correlation_matrix(t.state, set.taus);
                Rng rng(s);
                QfiResult an = anneal_signs(c, AnnealSchedule{}, rng, model.num_qubits());
                QfiResult bf = brute_force_signs(c, model.num_qubits());
                if (an.form > bf.form) {
                    return "annealer exceeded the exact maximum";
                }
                if (an.form < bf.form) {
                    return to_string(kind) + " p=" + std::to_string(p) + " seed " + std::to_string(s) +
                           ": annealer missed the maximum";
                }
            }
        }
    }
    return "";
}

std::string check_determinism() {
    SweepConfig c;
    c.model = ModelKind::kCluster1D;
    c.sizes = {8};
    c.rates = {0.3};
    c.trajectories = 16;
    c.observables = {Observable::kQfi, Observable::kSTopo};
    SweepResult a = run_sweep(c);
    c.workers = 3;
    SweepResult b = run_sweep(c);
    for (size_t i = 0; i < a.rows.size(); i++) {
        if (a.rows[i].mean != b.rows[i].mean || a.rows[i].stderr_ != b.rows[i].stderr_) {
            return "worker count changed the result";
        }
    }
    return "";
}

}  // namespace

bool run_selftest(std::ostream &out) {
    const std::pair<const char *, std::function<std::string()>> checks[] = {
        {"pauli multiplication table", check_pauli_table},
        {"p=0 QFI equals N^2/K", check_closed_forms},
        {"string identity and tableau invariants", check_string_identity},
        {"annealer reaches brute-force maximum", check_anneal},
        {"sweep independent of worker count", check_determinism},
    };
    bool ok = true;
    for (const auto &[name, fn] : checks) {
        std::string failure;
        try {
            failure = fn();
        } catch (const std::exception &e) {
            failure = std::string("exception: ") + e.what();
        }
        out << (failure.empty() ? "PASS " : "FAIL ") << name;
        if (!failure.empty()) {
            out << ": " << failure;
        }
        out << "\n";
        ok &= failure.empty();
    }
    return ok;
}
