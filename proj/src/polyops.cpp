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
#include <gluskabi/polyops.hpp>

#include <string>
#include <utility>

namespace gluskabi {

Bezout ext_gcd(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() && q.is_zero()) {
        throw error(errc::invalid_argument, "ext_gcd of two zero polynomials");
    }
    if (p.degree() == 0) {
        return {Polynomial::constant(1), Polynomial::constant(1 / p.leading()), Polynomial{}};
    }
    // Invariant: r_i == s_i * p + t_i * q.
    Polynomial r0 = p, s0 = Polynomial::constant(1), t0;
    Polynomial r1 = q, s1, t1 = Polynomial::constant(1);
    while (!r1.is_zero()) {
        auto [quot, rem] = divmod(r0, r1);
        Polynomial s2 = s0 - quot * s1;
        Polynomial t2 = t0 - quot * t1;
        r0 = std::move(r1);
        s0 = std::move(s1);
        t0 = std::move(t1);
        r1 = std::move(rem);
        s1 = std::move(s2);
        t1 = std::move(t2);
        // Keep the running remainder monic to limit coefficient growth.
        if (!r1.is_zero()) {
            Rational scale = 1 / r1.leading();
            r1 *= scale;
            s1 *= scale;
            t1 *= scale;
        }
    }
    Rational scale = 1 / r0.leading();
    return {r0 * scale, s0 * scale, t0 * scale};
}

UnimodularCompletion partition_completion(const PolyMatrix& U, size_t inputs, size_t outputs) {
    if (!U.is_square() || U.rows() != inputs + outputs || inputs == 0 || outputs == 0) {
        throw error(errc::dimension_mismatch, "completion does not match the input/output split");
    }
    return {U, U.block(0, 0, inputs, outputs), U.block(0, outputs, inputs, inputs), U.block(inputs, 0, outputs, outputs),
            U.block(inputs, outputs, outputs, inputs)};
}

namespace {

void check_shapes(const PolyMatrix& N, const PolyMatrix& P) {
    if (!P.is_square()) {
        throw error(errc::dimension_mismatch, "P must be square");
    }
    if (N.rows() != P.rows()) {
        throw error(errc::dimension_mismatch, "N and P must have the same number of rows");
    }
}

void swap_columns(PolyMatrix& m, size_t a, size_t b) {
    if (a == b) {
        return;
    }
    for (size_t r = 0; r < m.rows(); ++r) {
        std::swap(m(r, a), m(r, b));
    }
}

// col_target -= factor * col_source
void subtract_column(PolyMatrix& m, size_t target, size_t source, const Polynomial& factor) {
    for (size_t r = 0; r < m.rows(); ++r) {
        if (!m(r, source).is_zero()) {
            m(r, target) -= factor * m(r, source);
        }
    }
}

PolyMatrix column_reduction(const PolyMatrix& N, const PolyMatrix& P, int degree_cap) {
    const size_t g = P.rows();
    const size_t q = N.cols() + g;
    PolyMatrix A = hcat(N, P);
    PolyMatrix U = PolyMatrix::identity(q);
    for (size_t i = 0; i < g; ++i) {
        while (true) {
            size_t pivot = q;
            for (size_t c = i; c < q; ++c) {
                if (!A(i, c).is_zero() && (pivot == q || A(i, c).degree() < A(i, pivot).degree())) {
                    pivot = c;
                }
            }
            if (pivot == q) {
                throw error(errc::not_coprime, "[N P] loses rank in row " + std::to_string(i));
            }
            swap_columns(A, i, pivot);
            swap_columns(U, i, pivot);
            bool done = true;
            for (size_t c = i + 1; c < q; ++c) {
                if (A(i, c).is_zero()) {
                    continue;
                }
                Polynomial factor = divmod(A(i, c), A(i, i)).quotient;
                subtract_column(A, c, i, factor);
                subtract_column(U, c, i, factor);
                done = done && A(i, c).is_zero();
            }
            if (U.max_degree() > degree_cap) {
                throw error(errc::degree_cap, "unimodular completion exceeded degree cap " + std::to_string(degree_cap));
            }
            if (done) {
                break;
            }
        }
    }
    // A = [H O] with H lower triangular; coprimeness forces a constant diagonal.
    PolyMatrix Hinv(g, g);
    for (size_t i = 0; i < g; ++i) {
        if (A(i, i).degree() != 0) {
            throw error(errc::not_coprime, "N and P are not left coprime (nonconstant reduced diagonal " +
                                               A(i, i).to_string() + ")");
        }
    }
    for (size_t i = 0; i < g; ++i) {
        Rational inv = 1 / A(i, i).leading();
        Hinv(i, i) = Polynomial::constant(inv);
        for (size_t j = 0; j < i; ++j) {
            Polynomial acc;
            for (size_t k = j; k < i; ++k) {
                acc += A(i, k) * Hinv(k, j);
            }
            Hinv(i, j) = -(acc * inv);
        }
    }
    return U * block_diag(Hinv, PolyMatrix::identity(q - g));
}

}  // namespace

UnimodularCompletion unimodular_completion(const PolyMatrix& N, const PolyMatrix& P, const CompletionOptions& options) {
    check_shapes(N, P);
    if (P.det().is_zero()) {
        throw error(errc::singular, "det P is identically zero");
    }
    const size_t g = P.rows();
    const size_t inputs = N.cols();
    if (options.method == CompletionMethod::bezout && g == 1 && inputs == 1) {
        const Polynomial& n = N(0, 0);
        const Polynomial& p = P(0, 0);
        Bezout b = ext_gcd(n, p);
        if (b.gcd.degree() != 0) {
            throw error(errc::not_coprime, "N and P share the factor " + b.gcd.to_string());
        }
        PolyMatrix U = PolyMatrix::from_rows({{b.alpha, -p}, {b.beta, n}});
        return partition_completion(U, inputs, g);
    }
    return partition_completion(column_reduction(N, P, options.degree_cap), inputs, g);
}

bool is_unimodular(const PolyMatrix& U) {
    if (!U.is_square()) {
        throw error(errc::dimension_mismatch, "is_unimodular needs a square matrix");
    }
    return U.det().degree() == 0;
}

std::vector<Polynomial> maximal_minors(const PolyMatrix& M) {
    const size_t g = M.rows();
    const size_t q = M.cols();
    if (g > q) {
        throw error(errc::dimension_mismatch, "more rows than columns");
    }
    std::vector<Polynomial> minors;
    std::vector<size_t> pick(g);
    for (size_t i = 0; i < g; ++i) {
        pick[i] = i;
    }
    while (true) {
        PolyMatrix sub(g, g);
        for (size_t r = 0; r < g; ++r) {
            for (size_t c = 0; c < g; ++c) {
                sub(r, c) = M(r, pick[c]);
            }
        }
        minors.push_back(sub.det());
        size_t i = g;
        while (i > 0 && pick[i - 1] == q - g + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++pick[i - 1];
        for (size_t j = i; j < g; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
    return minors;
}

bool controllability_check(const PolyMatrix& P, const PolyMatrix& N) {
    check_shapes(N, P);
    std::vector<Polynomial> minors = maximal_minors(hcat(P, -N));
    Polynomial g;
    bool any = false;
    for (const auto& m : minors) {
        if (!m.is_zero()) {
            any = true;
            g = gcd(g, m);
        }
    }
    if (!any) {
        throw error(errc::singular, "[P -N] has no nonzero maximal minor (system is not minimal)");
    }
    return g.degree() == 0;
}

PolyMatrix adjugate(const PolyMatrix& M) {
    if (!M.is_square()) {
        throw error(errc::dimension_mismatch, "adjugate needs a square matrix");
    }
    const size_t n = M.rows();
    PolyMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = Polynomial::constant(1);
        return adj;
    }
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) {
            PolyMatrix minor(n - 1, n - 1);
            for (size_t i = 0, mi = 0; i < n; ++i) {
                if (i == r) {
                    continue;
                }
                for (size_t j = 0, mj = 0; j < n; ++j) {
                    if (j == c) {
                        continue;
                    }
                    minor(mi, mj++) = M(i, j);
                }
                ++mi;
            }
            Polynomial cof = minor.det();
            adj(c, r) = ((r + c) % 2 == 0) ? cof : -cof;
        }
    }
    return adj;
}

bool is_proper(const PolyMatrix& P, const PolyMatrix& N) {
    check_shapes(N, P);
    const int d = P.det().degree();
    if (d < 0) {
        return false;
    }
    PolyMatrix num = adjugate(P) * N;
    return num.max_degree() <= d;
}

}  // namespace gluskabi
