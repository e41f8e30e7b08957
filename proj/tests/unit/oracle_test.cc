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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dense_state.h"
#include "dualqfi/dualspin.h"
#include "dualqfi/entanglement.h"
#include "dualqfi/models.h"
#include "dualqfi/qfi.h"

// Whole-pipeline checks against the statevector reference.

using namespace dualqfi;

namespace {

oracle::Word word(const PauliString &p) { return oracle::parse_word(p.dense_str()); }

oracle::DenseState replay(const Model &m, const Trajectory &t) {
    oracle::DenseState d(m.num_qubits());
    for (const auto &e : t.record.entries) {
        const PauliString &op = e.single_site ? m.single_site(e.op) : m.generators()[e.op].op;
        double prob = d.project(word(op), e.outcome);
        // Deterministic entries must be certain in the dense state too.
        if (e.deterministic) {
            EXPECT_NEAR(prob, 1.0, 1e-9);
        }
    }
    return d;
}

// Chain dual spins written out letter by letter, without the library.
std::vector<oracle::Word> chain_taus(size_t L) {
    std::vector<oracle::Word> out;
    out.push_back({-1.0, "ZX" + std::string(L - 2, '_')});
    for (size_t j = 2; j + 1 <= L; j++) {
        std::string l(L, '_');
        l[0] = 'Y';
        for (size_t k = 1; k + 1 < j; k++) l[k] = 'Z';
        l[j - 1] = 'Y';
        l[j] = 'X';
        out.push_back({j % 2 == 0 ? -1.0 : 1.0, l});
    }
    return out;
}

double best_dense_variance(const oracle::DenseState &d, const std::vector<oracle::Word> &ops) {
    size_t n = ops.size();
    double best = 0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
        std::vector<double> c(n);
        for (size_t j = 0; j < n; j++) c[j] = (mask >> j & 1) ? -1.0 : 1.0;
        best = std::max(best, d.variance(ops, c));
    }
    return best;
}

}  // namespace

TEST(DenseOracle, ChainDualSpinCountAtSixSites) {
    // At p = 0 the best signed sum of chain dual spins has variance N^2, and
    // the dense state resolves N = L - 1.
    const size_t L = 6;
    Model m(ModelSpec{ModelKind::kCluster1D, static_cast<int>(L), 0.0});
    auto taus = chain_taus(L);
    ASSERT_EQ(taus.size(), L - 1);
    for (uint64_t seed = 0; seed < 3; seed++) {
        Trajectory t = run_trajectory(m, seed);
        oracle::DenseState d = replay(m, t);
        double best = best_dense_variance(d, taus);
        EXPECT_NEAR(best, 25.0, 1e-9);
        EXPECT_NEAR(best / L, 25.0 / 6.0, 1e-9);

        DualSpinSet set = default_dual_spins(m);
        ASSERT_EQ(set.size(), taus.size());
        for (size_t j = 0; j < taus.size(); j++) {
            EXPECT_EQ(set.taus[j].dense_str(), (taus[j].sign < 0 ? "-" : "+") + taus[j].letters);
        }
        CorrelationMatrix c = correlation_matrix(t.state, set.taus);
        EXPECT_NEAR(brute_force_signs(c, L).f_q, best / L, 1e-12);
    }
}

TEST(DenseOracle, ChainQfiAcrossRates) {
    const size_t L = 8;
    auto taus = chain_taus(L);
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        Model m(ModelSpec{ModelKind::kCluster1D, static_cast<int>(L), p});
        DualSpinSet set = default_dual_spins(m);
        for (uint64_t seed = 0; seed < 3; seed++) {
            Trajectory t = run_trajectory(m, seed);
            oracle::DenseState d = replay(m, t);
            CorrelationMatrix c = correlation_matrix(t.state, set.taus);
            Rng rng(seed);
            QfiResult r = anneal_signs(c, AnnealSchedule{}, rng, L);
            EXPECT_NEAR(r.form, best_dense_variance(d, taus), 1e-8) << "p=" << p;
            EXPECT_NEAR(s_topo(t.state, L), [&] {
                Partition part = chain_quarters(L);
                auto cat = [](std::vector<size_t> x, const std::vector<size_t> &y) {
                    x.insert(x.end(), y.begin(), y.end());
                    return x;
                };
                return d.entropy(cat(part.a, part.b)) + d.entropy(cat(part.b, part.c)) - d.entropy(part.b) -
                       d.entropy(cat(cat(part.a, part.b), part.c));
            }(), 1e-8);
        }
    }
}

TEST(DenseOracle, SquareLatticeReplay) {
    Model m(ModelSpec{ModelKind::kCluster2D, 4, 0.3});
    DualSpinSet set = default_dual_spins(m);
    std::vector<oracle::Word> ops;
    for (const auto &tau : set.taus) ops.push_back(word(tau));
    for (uint64_t seed = 0; seed < 2; seed++) {
        Trajectory t = run_trajectory(m, seed);
        oracle::DenseState d = replay(m, t);
        EXPECT_NEAR(d.norm(), 1.0, 1e-9);
        for (const auto &g : m.generators()) {
            double e = d.expectation(word(g.op));
            EXPECT_NEAR(e, t.state.expectation(g.op), 1e-9);
        }
        CorrelationMatrix c = correlation_matrix(t.state, set.taus);
        EXPECT_NEAR(brute_force_signs(c, 16).form, best_dense_variance(d, ops), 1e-8);
    }
}

TEST(DenseOracle, ToricReplayAtThree) {
    Model m(ModelSpec{ModelKind::kToric, 3, 0.3});
    ASSERT_EQ(m.num_qubits(), 18u);
    DualSpinSet set = default_dual_spins(m);
    std::vector<oracle::Word> ops;
    for (const auto &tau : set.taus) ops.push_back(word(tau));
    Trajectory t = run_trajectory(m, 5);
    oracle::DenseState d = replay(m, t);
    for (const auto &g : m.generators()) {
        EXPECT_NEAR(d.expectation(word(g.op)), t.state.expectation(g.op), 1e-9);
    }
    for (const auto &tau : set.taus) {
        EXPECT_NEAR(d.expectation(word(tau)), t.state.expectation(tau), 1e-9);
    }
    CorrelationMatrix c = correlation_matrix(t.state, set.taus);
    EXPECT_NEAR(brute_force_signs(c, 18).form, best_dense_variance(d, ops), 1e-8);
}

TEST(DenseOracle, ToricZeroRateAtThree) {
    Model m(ModelSpec{ModelKind::kToric, 3, 0.0});
    DualSpinSet set = default_dual_spins(m);
    std::vector<oracle::Word> ops;
    for (const auto &tau : set.taus) ops.push_back(word(tau));
    Trajectory t = run_trajectory(m, 2);
    oracle::DenseState d = replay(m, t);
    double n = static_cast<double>(set.size());
    EXPECT_NEAR(best_dense_variance(d, ops), n * n, 1e-8);
}
