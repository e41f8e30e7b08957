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

#include "dualqfi/gf2.h"

#include <utility>

namespace dualqfi {

Gf2Matrix::Gf2Matrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * stride_, 0) {
}

void Gf2Matrix::set(size_t r, size_t c, bool v) {
    uint64_t mask = uint64_t{1} << (c % 64);
    uint64_t &word = row(r)[c / 64];
    word = v ? (word | mask) : (word & ~mask);
}

size_t Gf2Matrix::eliminate_rank() {
    size_t rank = 0;
    for (size_t w = 0; w < stride_ && rank < rows_; w++) {
        for (size_t b = 0; b < 64 && rank < rows_; b++) {
            uint64_t mask = uint64_t{1} << b;
            size_t pivot = rank;
            while (pivot < rows_ && !(row(pivot)[w] & mask)) {
                pivot++;
            }
            if (pivot == rows_) {
                continue;
            }
            if (pivot != rank) {
                uint64_t *a = row(pivot);
                uint64_t *b_row = row(rank);
                for (size_t k = w; k < stride_; k++) {
                    std::swap(a[k], b_row[k]);
                }
            }
            const uint64_t *p = row(rank);
            for (size_t r = rank + 1; r < rows_; r++) {
                uint64_t *t = row(r);
                if (t[w] & mask) {
                    for (size_t k = w; k < stride_; k++) {
                        t[k] ^= p[k];
                    }
                }
            }
            rank++;
        }
    }
    return rank;
}

}  // namespace dualqfi
