/*
   Copyright 2026 The gluskabi authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include <gluskabi/polynomial.hpp>

namespace gluskabi {

// Dense matrix of polynomials, row-major. Dimensions are always positive.
class PolyMatrix {
   public:
    // 1x1 zero.
    PolyMatrix() : PolyMatrix(1, 1) {}
    PolyMatrix(size_t rows, size_t cols);
    PolyMatrix(size_t rows, size_t cols, std::vector<Polynomial> entries);
    // 1x1 matrix.
    explicit PolyMatrix(const Polynomial& p);

    static PolyMatrix identity(size_t n);
    static PolyMatrix zero(size_t rows, size_t cols) { return PolyMatrix(rows, cols); }
    // Rows given as nested initializer lists of polynomials.
    static PolyMatrix from_rows(const std::vector<std::vector<Polynomial>>& rows);

    size_t rows() const noexcept { return rows_; }
    size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Polynomial& operator()(size_t r, size_t c) { return entries_[r * cols_ + c]; }
    const Polynomial& operator()(size_t r, size_t c) const { return entries_[r * cols_ + c]; }

    // Highest entry degree; -1 when all entries are zero.
    int max_degree() const;
    bool is_zero() const;

    PolyMatrix transpose() const;
    // M*(xi) = M(-xi)^T, the formal adjoint of the differential operator M(D).
    PolyMatrix adjoint() const;
    PolyMatrix block(size_t r0, size_t c0, size_t nrows, size_t ncols) const;

    // Exact determinant via fraction-free elimination.
    Polynomial det() const;

    PolyMatrix operator-() const;
    friend PolyMatrix operator+(const PolyMatrix& lhs, const PolyMatrix& rhs);
    friend PolyMatrix operator-(const PolyMatrix& lhs, const PolyMatrix& rhs);
    friend PolyMatrix operator*(const PolyMatrix& lhs, const PolyMatrix& rhs);
    friend PolyMatrix operator*(const Polynomial& lhs, const PolyMatrix& rhs);
    friend bool operator==(const PolyMatrix& lhs, const PolyMatrix& rhs);

   private:
    size_t rows_;
    size_t cols_;
    std::vector<Polynomial> entries_;
};

PolyMatrix hcat(const PolyMatrix& left, const PolyMatrix& right);
PolyMatrix vcat(const PolyMatrix& top, const PolyMatrix& bottom);
// Block diagonal [[a, 0], [0, b]].
PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b);
// p * I_n, the componentwise extension of a scalar operator to n signals.
PolyMatrix scalar_extension(const Polynomial& p, size_t n);

std::ostream& operator<<(std::ostream& os, const PolyMatrix& m);

}  // namespace gluskabi
