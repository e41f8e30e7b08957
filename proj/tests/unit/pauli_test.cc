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

#include <random>

#include "dense_state.h"
#include "dualqfi/models.h"
#include "dualqfi/pauli.h"
#include "print.h"

using namespace dualqfi;

namespace {

// i^phase X^x Z^z as a dense matrix, built only from single-letter X and Z
// words so that the Y convention is not assumed.
std::vector<oracle::cplx> operator_matrix(const PauliString &p) {
    size_t n = p.num_qubits();
    size_t dim = size_t{1} << n;
    std::string xs(n, '_'), zs(n, '_');
    for (size_t q = 0; q < n; q++) {
        if (p.x(q)) xs[q] = 'X';
        if (p.z(q)) zs[q] = 'Z';
    }
    auto m = oracle::matmul(oracle::word_matrix({1.0, xs}), oracle::word_matrix({1.0, zs}), dim);
    const oracle::cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (auto &v : m) v *= ipow[p.phase_exp()];
    return m;
}

bool matrices_equal(const std::vector<oracle::cplx> &a, const std::vector<oracle::cplx> &b) {
    for (size_t i = 0; i < a.size(); i++) {
        if (std::abs(a[i] - b[i]) > 1e-12) return false;
    }
    return true;
}

// Every signed Pauli on n qubits (4^n * 4 of them).
std::vector<PauliString> all_paulis(size_t n) {
    std::vector<PauliString> out;
    for (size_t bits = 0; bits < (size_t{1} << (2 * n)); bits++) {
        for (int s = 0; s < 4; s++) {
            PauliString p(n);
            for (size_t q = 0; q < n; q++) {
                p.set_bits(q, bits >> (2 * q) & 1, bits >> (2 * q + 1) & 1);
            }
            p.set_phase_exp(s);
            out.push_back(p);
        }
    }
    return out;
}

PauliString bits(int x, int z, int s) {
    PauliString p(1);
    p.set_bits(0, x, z);
    p.set_phase_exp(s);
    return p;
}

}  // namespace

TEST(Pauli, XTimesZIsMinusIY) {
    PauliString r = multiply(bits(1, 0, 0), bits(0, 1, 0));
    EXPECT_TRUE(r.x(0));
    EXPECT_TRUE(r.z(0));
    EXPECT_EQ(r.phase_exp(), 0);
    // -iY: letter Y with sign exponent -1.
    EXPECT_EQ(r.letter(0), 'Y');
    EXPECT_EQ(r.letter_phase(), 3);
}

TEST(Pauli, ZTimesXIsPlusIY) {
    PauliString r = multiply(bits(0, 1, 0), bits(1, 0, 0));
    EXPECT_EQ(r, bits(1, 1, 2));
    EXPECT_EQ(r.letter_phase(), 1);
}

TEST(Pauli, FirstDualSpinRecursionStep) {
    PauliString tau1 = PauliString::parse("-Z1 X2", 3);
    PauliString m = PauliString::parse("X1 Z2 X3", 3);
    PauliString tau2 = multiply(tau1, m);
    EXPECT_EQ(tau2, PauliString::parse("-Y1 Y2 X3", 3));
    EXPECT_EQ(tau2.str(), "-Y1 Y2 X3");
}

TEST(Pauli, MultiplySizeMismatchThrows) {
    EXPECT_THROW(multiply(PauliString(2), PauliString(3)), std::invalid_argument);
    EXPECT_THROW(commutes(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST(Pauli, CommutationExamples) {
    EXPECT_FALSE(commutes(PauliString::parse("X1", 1), PauliString::parse("Z1", 1)));
    EXPECT_TRUE(commutes(PauliString::parse("X1 Z2 X3", 5), PauliString::parse("X3 Z4 X5", 5)));
    EXPECT_TRUE(commutes(PauliString::parse("Z1 X2", 3), PauliString::parse("X1 Z2 X3", 3)));
}

TEST(Pauli, CommutationOfOverlappingClusterTermsMatchesDenseCommutator) {
    PauliString a = PauliString::parse("X1 Z2 X3", 5), b = PauliString::parse("X3 Z4 X5", 5);
    auto ma = operator_matrix(a), mb = operator_matrix(b);
    EXPECT_TRUE(matrices_equal(oracle::matmul(ma, mb, 32), oracle::matmul(mb, ma, 32)));
}

TEST(Pauli, HermitianInvolutionExamples) {
    EXPECT_TRUE(is_hermitian_involution(PauliString::parse("-Z1 X2", 2)));
    EXPECT_FALSE(is_hermitian_involution(bits(1, 0, 1)));
    EXPECT_TRUE(is_hermitian_involution(bits(1, 1, 1)));
}

TEST(Pauli, ExhaustiveProductsMatchDenseMatrices) {
    for (size_t n = 1; n <= 3; n++) {
        size_t dim = size_t{1} << n;
        auto ps = all_paulis(n);
        std::vector<std::vector<oracle::cplx>> mats;
        for (const auto &p : ps) mats.push_back(operator_matrix(p));
        // Products over the full unsigned set times one sign are enough to
        // cover every phase combination, because phases only add.
        for (size_t i = 0; i < ps.size(); i++) {
            for (size_t j = 0; j < ps.size(); j += (n == 3 ? 4 : 1)) {
                PauliString r = multiply(ps[i], ps[j]);
                ASSERT_TRUE(matrices_equal(operator_matrix(r), oracle::matmul(mats[i], mats[j], dim)))
                    << ps[i].dense_str() << " * " << ps[j].dense_str();
                auto ab = oracle::matmul(mats[i], mats[j], dim), ba = oracle::matmul(mats[j], mats[i], dim);
                ASSERT_EQ(commutes(ps[i], ps[j]), matrices_equal(ab, ba));
            }
        }
    }
}

TEST(Pauli, ExhaustiveHermiticityMatchesConjugateTranspose) {
    for (size_t n = 1; n <= 3; n++) {
        size_t dim = size_t{1} << n;
        for (const auto &p : all_paulis(n)) {
            auto m = operator_matrix(p);
            bool hermitian = true;
            for (size_t r = 0; r < dim; r++)
                for (size_t c = 0; c < dim; c++)
                    hermitian &= std::abs(m[r * dim + c] - std::conj(m[c * dim + r])) < 1e-12;
            ASSERT_EQ(p.is_hermitian(), hermitian) << p.dense_str() << " phase " << int(p.phase_exp());
            ASSERT_EQ(p.is_hermitian_involution(), hermitian);
        }
    }
}

TEST(Pauli, HermitianSquaresToIdentity) {
    for (const auto &p : all_paulis(3)) {
        if (!p.is_hermitian()) continue;
        PauliString sq = multiply(p, p);
        EXPECT_TRUE(sq.is_identity_bits());
        EXPECT_EQ(sq.phase_exp(), 0);
    }
}

TEST(Pauli, ReversedProductDiffersBySymplecticForm) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 2000; trial++) {
        size_t n = 1 + rng() % 130;
        PauliString p(n), q(n);
        for (size_t k = 0; k < n; k++) {
            p.set_bits(k, rng() & 1, rng() & 1);
            q.set_bits(k, rng() & 1, rng() & 1);
        }
        p.set_phase_exp(static_cast<int>(rng() % 4));
        q.set_phase_exp(static_cast<int>(rng() % 4));
        PauliString pq = multiply(p, q), qp = multiply(q, p);
        int form = commutes(p, q) ? 0 : 1;
        for (size_t k = 0; k < n; k++) {
            ASSERT_EQ(pq.x(k), qp.x(k));
            ASSERT_EQ(pq.z(k), qp.z(k));
        }
        ASSERT_EQ((pq.phase_exp() - qp.phase_exp() + 4) % 4, 2 * form);
        // Associativity.
        PauliString r(n);
        for (size_t k = 0; k < n; k++) r.set_bits(k, rng() & 1, rng() & 1);
        ASSERT_EQ(multiply(multiply(p, q), r), multiply(p, multiply(q, r)));
    }
}

TEST(Pauli, WeightAndIdentity) {
    EXPECT_EQ(PauliString(7).weight(), 0u);
    EXPECT_EQ(PauliString::parse("X1 Y3 Z7", 7).weight(), 3u);
    PauliString minus_i(3);
    minus_i.set_phase_exp(2);
    EXPECT_TRUE(minus_i.is_hermitian());
    EXPECT_EQ(minus_i.str(), "-I");
}

TEST(Pauli, TextRoundTrip) {
    for (const char *s : {"+Y1 Z2 Y3 X4", "-Z1 X2", "-Y1 Z2 Z3 Y4 X5"}) {
        EXPECT_EQ(PauliString::parse(s, 6).str(), s);
    }
    EXPECT_EQ(PauliString::parse("-Z1X2", 3), PauliString::parse("-Z1 X2", 3));
    EXPECT_EQ(PauliString::from_letters("-ZX_").str(), "-Z1 X2");
    EXPECT_EQ(PauliString::parse("-Z1 X2", 3).dense_str(), "-ZX_");
    EXPECT_EQ(PauliString::from_letters("+Y").phase_exp(), 1);
}

TEST(Pauli, LatticeGrammars) {
    auto toric = make_grammar(ModelKind::kToric, 4);
    PauliString p = PauliString::parse("X_{0,0}^h X_{1,2}^v", 32, *toric);
    EXPECT_EQ(p.weight(), 2u);
    EXPECT_EQ(p.str(*toric), "+X_{0,0}^h X_{1,2}^v");
    auto square = make_grammar(ModelKind::kCluster2D, 4);
    EXPECT_EQ(PauliString::parse("Z_{2,3}", 16, *square).str(*square), "+Z_{2,3}");
}

TEST(Pauli, ParseErrors) {
    EXPECT_THROW(PauliString::parse("", 3), std::invalid_argument);
    EXPECT_THROW(PauliString::parse("Q1", 3), std::invalid_argument);
    EXPECT_THROW(PauliString::parse("X4", 3), std::out_of_range);
    EXPECT_THROW(PauliString::parse("X1 Z1", 3), std::invalid_argument);
    EXPECT_THROW(PauliString::parse("X0", 3), std::invalid_argument);
}

TEST(Pauli, SignOfNonHermitianThrows) {
    EXPECT_THROW(bits(1, 0, 1).sign(), std::domain_error);
    EXPECT_EQ(PauliString::parse("-Z1", 1).sign(), -1);
}

TEST(Pauli, SupportWordsListsOnlyTouchedWords) {
    PauliString p(200);
    p.set_letter(3, 'X');
    p.set_letter(150, 'Z');
    EXPECT_EQ(support_words(p), (std::vector<uint32_t>{0, 2}));
}
