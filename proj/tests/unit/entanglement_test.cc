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
#include <random>

#include "dense_state.h"
#include "dualqfi/entanglement.h"
#include "dualqfi/models.h"

using namespace dualqfi;

namespace {

oracle::Word word(const PauliString &p) { return oracle::parse_word(p.dense_str()); }

PauliString two_site(size_t n, size_t a, size_t b, char la, char lb) {
    PauliString p(n);
    p.set_letter(a, la);
    p.set_letter(b, lb);
    return p;
}

// Bell pairs on (a, b) built from XX and ZZ measurements with +1 outcomes,
// mirrored on the dense state.
void bell(StabilizerTableau &t, oracle::DenseState &d, size_t a, size_t b) {
    size_t n = t.num_qubits();
    for (char l : {'X', 'Z'}) {
        PauliString p = two_site(n, a, b, l, l);
        int m = t.measure(p, 1).outcome;
        d.project(word(p), m);
    }
}

double dense_cmi(const oracle::DenseState &d, const Partition &part) {
    auto cat = [](std::vector<size_t> x, const std::vector<size_t> &y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    return d.entropy(cat(part.a, part.b)) + d.entropy(cat(part.b, part.c)) - d.entropy(part.b) -
           d.entropy(cat(cat(part.a, part.b), part.c));
}

}  // namespace

TEST(Entanglement, ChainQuarters) {
    Partition p = chain_quarters(8);
    EXPECT_EQ(p.a, (std::vector<size_t>{0, 1}));
    EXPECT_EQ(p.b, (std::vector<size_t>{2, 3}));
    EXPECT_EQ(p.d, (std::vector<size_t>{4, 5}));
    EXPECT_EQ(p.c, (std::vector<size_t>{6, 7}));
    EXPECT_THROW(chain_quarters(6), std::invalid_argument);
    EXPECT_THROW(chain_quarters(0), std::invalid_argument);
}

TEST(Entanglement, VerticalStrips) {
    Model m(ModelSpec{ModelKind::kCluster2D, 8, 0.0});
    Partition p = vertical_strips(m);
    EXPECT_EQ(p.a.size(), 16u);
    EXPECT_EQ(p.d.size(), 16u);
    EXPECT_NO_THROW(p.validate(64));
    Model toric(ModelSpec{ModelKind::kToric, 4, 0.0});
    Partition q = vertical_strips(toric);
    EXPECT_EQ(q.a.size() + q.b.size() + q.c.size() + q.d.size(), 32u);
    Model chain(ModelSpec{ModelKind::kCluster1D, 8, 0.0});
    EXPECT_THROW(vertical_strips(chain), std::invalid_argument);
}

TEST(Entanglement, PartitionErrors) {
    Partition p{{0, 1}, {1, 2}, {3}, {}};
    EXPECT_THROW(p.validate(4), std::invalid_argument);
    Partition q{{0}, {1}, {9}, {}};
    EXPECT_THROW(q.validate(4), std::invalid_argument);
    StabilizerTableau t(8);
    EXPECT_THROW(s_topo(t, 12), std::invalid_argument);
    EXPECT_THROW(tmi(t, q), std::invalid_argument);
}

TEST(Entanglement, SteadyStateValues) {
    for (int L : {8, 16, 32}) {
        Model spt(ModelSpec{ModelKind::kCluster1D, L, 0.0});
        Model triv(ModelSpec{ModelKind::kCluster1D, L, 1.0});
        for (uint64_t seed = 0; seed < 3; seed++) {
            EXPECT_EQ(s_topo(run_trajectory(spt, seed, false).state, L), 2);
            EXPECT_EQ(s_topo(run_trajectory(triv, seed, false).state, L), 0);
        }
    }
}

TEST(Entanglement, BellPairsAcrossTheGap) {
    StabilizerTableau t(8);
    oracle::DenseState d(8);
    Partition part = chain_quarters(8);
    // Each pair lies inside ABC, so it counts twice.
    bell(t, d, 0, 6);
    EXPECT_EQ(s_topo(t, 8), 2);
    EXPECT_NEAR(dense_cmi(d, part), 2.0, 1e-9);
    bell(t, d, 1, 7);
    EXPECT_EQ(s_topo(t, 8), 4);
    EXPECT_NEAR(dense_cmi(d, part), 4.0, 1e-9);
    // One pair straddling B and C only adds nothing across A and C.
    StabilizerTableau u(8);
    oracle::DenseState e(8);
    bell(u, e, 3, 6);
    EXPECT_EQ(s_topo(u, 8), 0);
    EXPECT_NEAR(dense_cmi(e, part), 0.0, 1e-9);
}

TEST(Entanglement, TmiExamples) {
    StabilizerTableau prod(8);
    Partition part = chain_quarters(8);
    EXPECT_EQ(tmi(prod, part), 0);
    // Pure GHZ split over A, B, C.
    StabilizerTableau g(6);
    for (size_t q = 0; q < 6; q++) g.measure(PauliString::single(6, q, 'X'), 1);
    for (size_t q = 0; q + 1 < 6; q++) g.measure(two_site(6, q, q + 1, 'Z', 'Z'));
    Partition abc{{0, 1}, {2, 3}, {4, 5}, {}};
    EXPECT_EQ(tmi(g, abc), 0);
    // With D holding a share, ABC is a classical mixture and I3 = 1.
    Partition abcd{{0}, {1, 2}, {3}, {4, 5}};
    EXPECT_EQ(tmi(g, abcd), 1);
}

TEST(Entanglement, MatchesDenseOnTrajectories) {
    Model m(ModelSpec{ModelKind::kCluster1D, 12, 0.4});
    Partition part = chain_quarters(12);
    for (uint64_t seed = 0; seed < 5; seed++) {
        Trajectory t = run_trajectory(m, seed);
        oracle::DenseState d(12);
        for (const auto &e : t.record.entries) {
            const PauliString &op = e.single_site ? m.single_site(e.op) : m.generators()[e.op].op;
            d.project(word(op), e.outcome);
        }
        EXPECT_NEAR(dense_cmi(d, part), s_topo(t.state, 12), 1e-8);
    }
}

TEST(Entanglement, StrongSubadditivityAndRelabeling) {
    std::mt19937_64 g(17);
    for (ModelKind kind : {ModelKind::kCluster1D, ModelKind::kCluster2D, ModelKind::kToric}) {
        int L = kind == ModelKind::kCluster1D ? 16 : 8;
        for (double p : {0.1, 0.5, 0.9}) {
            Model m(ModelSpec{kind, L, p});
            Partition part = kind == ModelKind::kCluster1D ? chain_quarters(L) : vertical_strips(m);
            for (uint64_t seed = 0; seed < 4; seed++) {
                Trajectory t = run_trajectory(m, seed, false);
                int cmi = conditional_mutual_information(t.state, part);
                EXPECT_GE(cmi, 0);
                int i3 = tmi(t.state, part);
                Partition shuffled = part;
                for (auto *r : {&shuffled.a, &shuffled.b, &shuffled.c, &shuffled.d}) std::shuffle(r->begin(), r->end(), g);
                EXPECT_EQ(conditional_mutual_information(t.state, shuffled), cmi);
                EXPECT_EQ(tmi(t.state, shuffled), i3);
            }
        }
    }
}

TEST(Entanglement, FourQubitGhzSingleSites) {
    StabilizerTableau g(4);
    for (size_t q = 0; q < 4; q++) g.measure(PauliString::single(4, q, 'X'), 1);
    for (size_t q = 0; q + 1 < 4; q++) g.measure(two_site(4, q, q + 1, 'Z', 'Z'));
    Partition part{{0}, {1}, {2}, {3}};
    EXPECT_EQ(tmi(g, part), 1);
}

TEST(Entanglement, Quadrants) {
    Model m(ModelSpec{ModelKind::kCluster2D, 4, 0.0});
    Partition p = quadrants(m);
    EXPECT_EQ(p.a, (std::vector<size_t>{0, 1, 4, 5}));
    EXPECT_EQ(p.b, (std::vector<size_t>{2, 3, 6, 7}));
    EXPECT_EQ(p.c, (std::vector<size_t>{10, 11, 14, 15}));
    EXPECT_EQ(p.d, (std::vector<size_t>{8, 9, 12, 13}));
    EXPECT_EQ(parse_partition_geometry("quadrants"), PartitionGeometry::kQuadrants);
    EXPECT_EQ(to_string(PartitionGeometry::kStrips), "strips");
    EXPECT_THROW(parse_partition_geometry("pie"), std::invalid_argument);
    EXPECT_EQ(tmi_partition(m, PartitionGeometry::kStrips).a, vertical_strips(m).a);
}

TEST(Entanglement, ToricZeroRatePlateaus) {
    // Pinned regression values. Quadrants all reach the open boundary and
    // give 0; three slices of a bulk disk give -1 (one bit of topological
    // entanglement). Both are size independent.
    for (int L : {8, 12}) {
        Model m(ModelSpec{ModelKind::kToric, L, 0.0});
        Trajectory t = run_trajectory(m, 3, false);
        EXPECT_EQ(tmi(t.state, quadrants(m)), 0);
        EXPECT_EQ(tmi(t.state, vertical_strips(m)), 0);
        int h = L / 2, R = L / 4;
        Partition disk;
        for (size_t q = 0; q < m.num_qubits(); q++) {
            Edge e = toric_edge(L, q);
            bool in = e.row >= h - R && e.row < h + R && e.col >= h - R && e.col < h + R;
            if (!in) disk.d.push_back(q);
            else if (e.row < h) (e.col < h ? disk.a : disk.b).push_back(q);
            else disk.c.push_back(q);
        }
        EXPECT_EQ(tmi(t.state, disk), -1) << L;
        Model sq(ModelSpec{ModelKind::kCluster2D, L, 0.0});
        EXPECT_EQ(tmi(run_trajectory(sq, 3, false).state, quadrants(sq)), -1);
    }
}
