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

#include <gluskabi/error.hpp>
#include <gluskabi/poly_matrix.hpp>

#include <string>
#include <utility>

namespace gluskabi {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw error(errc::dimension_mismatch, what);
    }
}

}  // namespace

PolyMatrix::PolyMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    require(rows > 0 && cols > 0, "polynomial matrix dimensions must be positive");
}

PolyMatrix::PolyMatrix(size_t rows, size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require(rows > 0 && cols > 0, "polynomial matrix dimensions must be positive");
    require(entries_.size() == rows * cols, "entry count does not match dimensions");
}

PolyMatrix::PolyMatrix(const Polynomial& p) : rows_(1), cols_(1), entries_{p} {}

PolyMatrix PolyMatrix::identity(size_t n) {
    PolyMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m(i, i) = Polynomial::constant(1);
    }
    return m;
}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<Polynomial>>& rows) {
    require(!rows.empty() && !rows.front().empty(), "empty polynomial matrix");
    PolyMatrix m(rows.size(), rows.front().size());
    for (size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == m.cols_, "ragged polynomial matrix rows");
        for (size_t c = 0; c < m.cols_; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

int PolyMatrix::max_degree() const {
    int d = -1;
    for (const auto& p : entries_) {
        d = std::max(d, p.degree());
    }
    return d;
}

bool PolyMatrix::is_zero() const { return max_degree() < 0; }

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

PolyMatrix PolyMatrix::adjoint() const {
    PolyMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c).reflected();
        }
    }
    return t;
}

PolyMatrix PolyMatrix::block(size_t r0, size_t c0, size_t nrows, size_t ncols) const {
    require(r0 + nrows <= rows_ && c0 + ncols <= cols_, "block out of range");
    PolyMatrix b(nrows, ncols);
    for (size_t r = 0; r < nrows; ++r) {
        for (size_t c = 0; c < ncols; ++c) {
            b(r, c) = (*this)(r0 + r, c0 + c);
        }
    }
    return b;
}

Polynomial PolyMatrix::det() const {
    require(is_square(), "determinant of a non-square matrix");
    const size_t n = rows_;
    std::vector<Polynomial> a = entries_;
    auto at = [&](size_t r, size_t c) -> Polynomial& { return a[r * n + c]; };
    Polynomial prev_pivot = Polynomial::constant(1);
    bool negate = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k).is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && at(swap_row, k).is_zero()) {
                ++swap_row;
            }
            if (swap_row == n) {
                return {};
            }
            for (size_t c = 0; c < n; ++c) {
                std::swap(at(k, c), at(swap_row, c));
            }
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Polynomial num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                at(i, j) = exact_div(num, prev_pivot);
            }
            at(i, k) = Polynomial{};
        }
        prev_pivot = at(k, k);
    }
    Polynomial d = at(n - 1, n - 1);
    return negate ? -d : d;
}

PolyMatrix PolyMatrix::operator-() const {
    PolyMatrix m = *this;
    for (auto& p : m.entries_) {
        p = -p;
    }
    return m;
}

PolyMatrix operator+(const PolyMatrix& lhs, const PolyMatrix& rhs) {
    require(lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_, "matrix sum dimension mismatch");
    PolyMatrix m = lhs;
    for (size_t i = 0; i < m.entries_.size(); ++i) {
        m.entries_[i] += rhs.entries_[i];
    }
    return m;
}

PolyMatrix operator-(const PolyMatrix& lhs, const PolyMatrix& rhs) { return lhs + (-rhs); }

PolyMatrix operator*(const PolyMatrix& lhs, const PolyMatrix& rhs) {
    require(lhs.cols_ == rhs.rows_, "matrix product dimension mismatch");
    PolyMatrix m(lhs.rows_, rhs.cols_);
    for (size_t r = 0; r < lhs.rows_; ++r) {
        for (size_t c = 0; c < rhs.cols_; ++c) {
            Polynomial acc;
            for (size_t k = 0; k < lhs.cols_; ++k) {
                acc += lhs(r, k) * rhs(k, c);
            }
            m(r, c) = std::move(acc);
        }
    }
    return m;
}

PolyMatrix operator*(const Polynomial& lhs, const PolyMatrix& rhs) {
    PolyMatrix m = rhs;
    for (auto& p : m.entries_) {
        p = lhs * p;
    }
    return m;
}

bool operator==(const PolyMatrix& lhs, const PolyMatrix& rhs) {
    return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.entries_ == rhs.entries_;
}

PolyMatrix hcat(const PolyMatrix& left, const PolyMatrix& right) {
    require(left.rows() == right.rows(), "hcat row mismatch");
    PolyMatrix m(left.rows(), left.cols() + right.cols());
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < left.cols(); ++c) {
            m(r, c) = left(r, c);
        }
        for (size_t c = 0; c < right.cols(); ++c) {
            m(r, left.cols() + c) = right(r, c);
        }
    }
    return m;
}

PolyMatrix vcat(const PolyMatrix& top, const PolyMatrix& bottom) { return hcat(top.transpose(), bottom.transpose()).transpose(); }

PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c) {
            m(r, c) = a(r, c);
        }
    }
    for (size_t r = 0; r < b.rows(); ++r) {
        for (size_t c = 0; c < b.cols(); ++c) {
            m(a.rows() + r, a.cols() + c) = b(r, c);
        }
    }
    return m;
}

PolyMatrix scalar_extension(const Polynomial& p, size_t n) { return p * PolyMatrix::identity(n); }

std::ostream& operator<<(std::ostream& os, const PolyMatrix& m) {
    os << "[";
    for (size_t r = 0; r < m.rows(); ++r) {
        os << (r ? "; " : "");
        for (size_t c = 0; c < m.cols(); ++c) {
            os << (c ? ", " : "") << m(r, c);
        }
    }
    return os << "]";
}

}  // namespace gluskabi
