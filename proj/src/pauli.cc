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

#include "dualqfi/pauli.h"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace dualqfi {

namespace {

bool is_pauli_letter(char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

void letter_bits(char letter, bool &x, bool &z) {
    switch (letter) {
        case 'I':
            x = false, z = false;
            return;
        case 'X':
            x = true, z = false;
            return;
        case 'Y':
            x = true, z = true;
            return;
        case 'Z':
            x = false, z = true;
            return;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + letter + "'");
    }
}

void check_same_size(const PauliString &p, const PauliString &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw std::invalid_argument("Pauli strings act on different qubit counts (" +
                                    std::to_string(p.num_qubits()) + " vs " +
                                    std::to_string(q.num_qubits()) + ")");
    }
}

}  // namespace

std::string SiteGrammar::label(size_t qubit) const {
    return std::to_string(qubit + 1);
}

size_t SiteGrammar::parse(std::string_view label) const {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
    if (ec != std::errc() || ptr != label.data() + label.size() || value == 0) {
        throw std::invalid_argument("bad site label '" + std::string(label) + "'");
    }
    return value - 1;
}

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), x_(words_for(num_qubits), 0), z_(words_for(num_qubits), 0), phase_(0) {
}

PauliString PauliString::single(size_t num_qubits, size_t qubit, char letter) {
    if (qubit >= num_qubits) {
        throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range");
    }
    PauliString result(num_qubits);
    result.set_letter(qubit, letter);
    return result;
}

PauliString PauliString::from_letters(std::string_view text) {
    int sign_phase = 0;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        sign_phase = text.front() == '-' ? 2 : 0;
        text.remove_prefix(1);
    }
    PauliString result(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        char c = text[q] == '_' ? 'I' : text[q];
        bool x, z;
        letter_bits(c, x, z);
        result.set_bits(q, x, z);
    }
    result.set_phase_exp(sign_phase + static_cast<int>(result.y_count()));
    return result;
}

PauliString PauliString::parse(std::string_view text, size_t num_qubits, const SiteGrammar &grammar) {
    PauliString result(num_qubits);
    size_t i = 0;
    auto skip_space = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            i++;
        }
    };
    skip_space();
    int sign_phase = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        sign_phase = text[i] == '-' ? 2 : 0;
        i++;
    }
    skip_space();
    if (i == text.size()) {
        throw std::invalid_argument("empty Pauli string");
    }
    std::vector<bool> seen(num_qubits, false);
    while (i < text.size()) {
        char letter = text[i];
        if (!is_pauli_letter(letter)) {
            throw std::invalid_argument("expected Pauli letter at offset " + std::to_string(i) + " in '" +
                                        std::string(text) + "'");
        }
        i++;
        size_t start = i;
        while (i < text.size() && !is_pauli_letter(text[i]) &&
               !std::isspace(static_cast<unsigned char>(text[i]))) {
            i++;
        }
        std::string_view label = text.substr(start, i - start);
        if (label.empty()) {
            if (letter == 'I') {
                skip_space();
                continue;
            }
            throw std::invalid_argument("missing site label after '" + std::string(1, letter) + "'");
        }
        size_t q = grammar.parse(label);
        if (q >= num_qubits) {
            throw std::out_of_range("site '" + std::string(label) + "' outside " + std::to_string(num_qubits) +
                                    " qubits");
        }
        if (seen[q]) {
            throw std::invalid_argument("site '" + std::string(label) + "' appears twice");
        }
        seen[q] = true;
        bool x, z;
        letter_bits(letter, x, z);
        result.set_bits(q, x, z);
        skip_space();
    }
    result.set_phase_exp(sign_phase + static_cast<int>(result.y_count()));
    return result;
}

void PauliString::set_bits(size_t q, bool x, bool z) {
    uint64_t mask = uint64_t{1} << (q % kWordBits);
    size_t w = q / kWordBits;
    x_[w] = x ? (x_[w] | mask) : (x_[w] & ~mask);
    z_[w] = z ? (z_[w] | mask) : (z_[w] & ~mask);
}

void PauliString::set_letter(size_t q, char letter) {
    uint8_t keep = letter_phase();
    bool x, z;
    letter_bits(letter, x, z);
    set_bits(q, x, z);
    set_phase_exp(keep + static_cast<int>(y_count()));
}

char PauliString::letter(size_t q) const {
    return "IZXY"[2 * x(q) + z(q)];
}

size_t PauliString::weight() const {
    size_t n = 0;
    for (size_t w = 0; w < x_.size(); w++) {
        n += std::popcount(x_[w] | z_[w]);
    }
    return n;
}

size_t PauliString::y_count() const {
    size_t n = 0;
    for (size_t w = 0; w < x_.size(); w++) {
        n += std::popcount(x_[w] & z_[w]);
    }
    return n;
}

bool PauliString::is_identity_bits() const {
    for (size_t w = 0; w < x_.size(); w++) {
        if (x_[w] | z_[w]) {
            return false;
        }
    }
    return true;
}

bool PauliString::is_hermitian() const {
    return (phase_ & 1) == (y_count() & 1);
}

bool PauliString::is_hermitian_involution() const {
    if (!is_hermitian()) {
        return false;
    }
    PauliString square = multiply(*this, *this);
    return square.phase_exp() == 0 && square.is_identity_bits();
}

uint8_t PauliString::letter_phase() const {
    return static_cast<uint8_t>((phase_ + 4 - (y_count() & 3)) & 3);
}

int PauliString::sign() const {
    uint8_t e = letter_phase();
    if (e & 1) {
        throw std::domain_error("Pauli string " + dense_str() + " is not Hermitian");
    }
    return e == 0 ? +1 : -1;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    check_same_size(*this, rhs);
    uint64_t flips = 0;
    for (size_t w = 0; w < x_.size(); w++) {
        flips += std::popcount(z_[w] & rhs.x_[w]);
        x_[w] ^= rhs.x_[w];
        z_[w] ^= rhs.z_[w];
    }
    phase_ = static_cast<uint8_t>((phase_ + rhs.phase_ + 2 * flips) & 3);
    return *this;
}

std::string PauliString::str(const SiteGrammar &grammar) const {
    uint8_t e = letter_phase();
    std::string out = e == 0 ? "+" : e == 1 ? "+i" : e == 2 ? "-" : "-i";
    bool first = true;
    for (size_t q = 0; q < num_qubits_; q++) {
        char c = letter(q);
        if (c == 'I') {
            continue;
        }
        if (!first) {
            out += ' ';
        }
        first = false;
        out += c;
        out += grammar.label(q);
    }
    if (first) {
        out += 'I';
    }
    return out;
}

std::string PauliString::dense_str() const {
    uint8_t e = letter_phase();
    std::string out = e == 0 ? "+" : e == 1 ? "+i" : e == 2 ? "-" : "-i";
    for (size_t q = 0; q < num_qubits_; q++) {
        char c = letter(q);
        out += c == 'I' ? '_' : c;
    }
    return out;
}

PauliString multiply(const PauliString &p, const PauliString &q) {
    PauliString result = p;
    result *= q;
    return result;
}

bool commutes(const PauliString &p, const PauliString &q) {
    check_same_size(p, q);
    uint64_t acc = 0;
    for (size_t w = 0; w < p.x_.size(); w++) {
        acc ^= (p.x_[w] & q.z_[w]) ^ (p.z_[w] & q.x_[w]);
    }
    return (std::popcount(acc) & 1) == 0;
}

std::vector<uint32_t> support_words(const PauliString &p) {
    std::vector<uint32_t> out;
    auto xs = p.x_words();
    auto zs = p.z_words();
    for (size_t w = 0; w < xs.size(); w++) {
        if (xs[w] | zs[w]) {
            out.push_back(static_cast<uint32_t>(w));
        }
    }
    return out;
}

}  // namespace dualqfi
