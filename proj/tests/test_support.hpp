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

// Shared generators and independent oracles for the test suites.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <gluskabi/poly_matrix.hpp>
#include <gluskabi/polynomial.hpp>

namespace gluskabi::testing {

inline Polynomial P(std::initializer_list<long> c) { return Polynomial(c); }

inline Rational Q(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Random polynomial with degree exactly `degree` (or zero when degree < 0) and
// small rational coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, int degree) {
    if (degree < 0) {
        return {};
    }
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    std::vector<Rational> c(static_cast<size_t>(degree) + 1);
    for (auto& x : c) {
        x = Q(num(rng), den(rng));
    }
    while (c.back() == 0) {
        c.back() = Q(num(rng), den(rng));
    }
    return Polynomial(c);
}

inline Polynomial random_poly_upto(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> d(0, max_degree);
    return random_poly(rng, d(rng));
}

inline PolyMatrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols, int max_degree) {
    PolyMatrix m(rows, cols);
    std::uniform_int_distribution<int> d(-1, max_degree);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) {
            m(r, c) = random_poly(rng, d(rng));
        }
    }
    return m;
}

// Evaluate a polynomial matrix entrywise at a rational point.
inline std::vector<std::vector<Rational>> eval_at(const PolyMatrix& m, const Rational& x) {
    std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) {
            out[r][c] = m(r, c).eval(x);
        }
    }
    return out;
}

// Oracle for polynomial matrix products: two polynomial matrices agree iff their
// evaluations agree at more points than the degree bound.
inline bool product_matches_by_evaluation(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& product) {
    int bound = std::max(a.max_degree(), 0) + std::max(b.max_degree(), 0) + std::max(product.max_degree(), 0) + 1;
    for (int k = 0; k <= bound; ++k) {
        Rational x = Q(2 * k - bound, 3);
        auto av = eval_at(a, x);
        auto bv = eval_at(b, x);
        auto pv = eval_at(product, x);
        for (size_t r = 0; r < a.rows(); ++r) {
            for (size_t c = 0; c < b.cols(); ++c) {
                Rational acc = 0;
                for (size_t k2 = 0; k2 < a.cols(); ++k2) {
                    acc += av[r][k2] * bv[k2][c];
                }
                if (acc != pv[r][c]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Brute-force determinant by cofactor expansion of a dense double matrix.
inline double cofactor_det(const std::vector<std::vector<double>>& m) {
    const size_t n = m.size();
    if (n == 1) {
        return m[0][0];
    }
    double acc = 0.0;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<double>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<double> row;
            for (size_t k = 0; k < n; ++k) {
                if (k != c) {
                    row.push_back(m[r][k]);
                }
            }
            minor.push_back(row);
        }
        acc += ((c % 2 == 0) ? 1.0 : -1.0) * m[0][c] * cofactor_det(minor);
    }
    return acc;
}

// Composite trapezoid rule on a uniform grid, independent of the library's Simpson weights.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
    double h = (b - a) / n;
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) {
        acc += f(a + i * h);
    }
    return acc * h;
}

}  // namespace gluskabi::testing
