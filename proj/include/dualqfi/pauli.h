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

#ifndef DUALQFI_PAULI_H
#define DUALQFI_PAULI_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dualqfi {

inline constexpr size_t kWordBits = 64;

inline size_t words_for(size_t num_bits) {
    return (num_bits + kWordBits - 1) / kWordBits;
}

/// Maps flat qubit indices to printable site labels and back.
///
/// The default grammar labels qubit q as the 1-based integer "q+1", so that
/// "-Z1 X2" denotes -Z on qubit 0 times X on qubit 1. Models install their own
/// grammar ("X_{2,3}" for square lattices, "X_{0,1}^h" for lattice edges).
class SiteGrammar {
   public:
    virtual ~SiteGrammar() = default;
    virtual std::string label(size_t qubit) const;
    /// Throws std::invalid_argument for labels outside the grammar.
    virtual size_t parse(std::string_view label) const;
};

/// A signed Pauli operator i^phase * X^x * Z^z on n qubits.
///
/// Bits are packed 64 per word; qubit q lives in word q / 64 at bit q % 64.
/// With this convention Y = i X Z, so a lone Y has phase_exp 1.
class PauliString {
   public:
    explicit PauliString(size_t num_qubits = 0);

    static PauliString single(size_t num_qubits, size_t qubit, char letter);
    /// Dense letter form such as "+XIZY" or "-ZX"; the sign is the sign in
    /// front of the letter product (so "+Y" has phase_exp 1).
    static PauliString from_letters(std::string_view text);
    /// Sparse labelled form such as "-Z1 X2" or "X_{0,0}^h X_{1,0}^h".
    static PauliString parse(std::string_view text, size_t num_qubits,
                             const SiteGrammar &grammar = SiteGrammar());

    size_t num_qubits() const { return num_qubits_; }
    size_t num_words() const { return x_.size(); }

    bool x(size_t q) const { return (x_[q / kWordBits] >> (q % kWordBits)) & 1; }
    bool z(size_t q) const { return (z_[q / kWordBits] >> (q % kWordBits)) & 1; }
    /// Sets the bits of qubit q, leaving phase_exp untouched.
    void set_bits(size_t q, bool x, bool z);
    /// Sets qubit q to the given letter while preserving the overall letter sign.
    void set_letter(size_t q, char letter);
    char letter(size_t q) const;

    uint8_t phase_exp() const { return phase_; }
    void set_phase_exp(int phase) { phase_ = static_cast<uint8_t>(((phase % 4) + 4) % 4); }

    std::span<const uint64_t> x_words() const { return x_; }
    std::span<const uint64_t> z_words() const { return z_; }

    size_t weight() const;
    size_t y_count() const;
    bool is_identity_bits() const;
    bool is_hermitian() const;
    bool is_hermitian_involution() const;
    /// Exponent e of the sign i^e in front of the letter product. Even for
    /// Hermitian operators.
    uint8_t letter_phase() const;
    /// +1 or -1 for Hermitian operators; throws std::domain_error otherwise.
    int sign() const;
    void negate() { phase_ = static_cast<uint8_t>((phase_ + 2) & 3); }

    /// this <- this * rhs.
    PauliString &operator*=(const PauliString &rhs);

    bool operator==(const PauliString &other) const = default;

    /// Sparse labelled form, e.g. "+Y1 Z2 Y3 X4". Identity prints as "+I".
    std::string str(const SiteGrammar &grammar = SiteGrammar()) const;
    /// Dense letter form, e.g. "-ZX_".
    std::string dense_str() const;

   private:
    size_t num_qubits_;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
    uint8_t phase_;

    friend bool commutes(const PauliString &p, const PauliString &q);
};

/// Operator product p * q. Throws std::invalid_argument on size mismatch.
PauliString multiply(const PauliString &p, const PauliString &q);

/// True iff p and q commute. Throws std::invalid_argument on size mismatch.
bool commutes(const PauliString &p, const PauliString &q);

inline bool is_hermitian_involution(const PauliString &p) {
    return p.is_hermitian_involution();
}

/// Symplectic product parity restricted to the listed words.
inline bool anticommute_on(std::span<const uint64_t> ax, std::span<const uint64_t> az,
                           std::span<const uint64_t> bx, std::span<const uint64_t> bz,
                           std::span<const uint32_t> words) {
    uint64_t acc = 0;
    for (uint32_t w : words) {
        acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return std::popcount(acc) & 1;
}

/// Indices of words in which p has support.
std::vector<uint32_t> support_words(const PauliString &p);

}  // namespace dualqfi

#endif
