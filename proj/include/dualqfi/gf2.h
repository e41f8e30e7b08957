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

#ifndef DUALQFI_GF2_H
#define DUALQFI_GF2_H

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dualqfi {

/// Dense GF(2) matrix with rows packed into 64-bit words.
class Gf2Matrix {
   public:
    Gf2Matrix(size_t rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    bool get(size_t r, size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1; }
    void set(size_t r, size_t c, bool v);
    uint64_t *row(size_t r) { return data_.data() + r * stride_; }
    const uint64_t *row(size_t r) const { return data_.data() + r * stride_; }
    size_t stride() const { return stride_; }

    /// Rank by in-place row elimination; destroys the contents.
    size_t eliminate_rank();

   private:
    size_t rows_;
    size_t cols_;
    size_t stride_;
    std::vector<uint64_t> data_;
};

}  // namespace dualqfi

#endif
