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

#include <vector>

#include <gluskabi/poly_matrix.hpp>
#include <gluskabi/polynomial.hpp>

namespace gluskabi {

struct Bezout {
    Polynomial gcd;    // monic
    Polynomial alpha;  // alpha * p + beta * q == gcd
    Polynomial beta;
};

// Extended Euclid. When p is a nonzero constant the unit certificate
// alpha = 1/p, beta = 0 is returned directly.
Bezout ext_gcd(const Polynomial& p, const Polynomial& q);

enum class CompletionMethod {
    // g == 1 with a single input: U = [[alpha, -P], [beta, N]] from ext_gcd(N, P).
    // Falls back to column_reduction for other shapes.
    bezout,
    // Euclidean column reduction of [N P] to [H O], then H^-1 folded into U.
    column_reduction,
};

struct CompletionOptions {
    CompletionMethod method = CompletionMethod::bezout;
    int degree_cap = 64;
};

// Blocks use the layout U = [[U11, U12], [U21, U22]] with U11 (q-g)xg,
// U12 (q-g)x(q-g), U21 gxg, U22 gx(q-g).
struct UnimodularCompletion {
    PolyMatrix U;
    PolyMatrix U11;
    PolyMatrix U12;
    PolyMatrix U21;
    PolyMatrix U22;
};

UnimodularCompletion partition_completion(const PolyMatrix& U, size_t inputs, size_t outputs);

// U with [N P] U = [I O]. Throws errc::not_coprime when no polynomial completion
// exists and errc::singular when det P is identically zero.
UnimodularCompletion unimodular_completion(const PolyMatrix& N, const PolyMatrix& P,
                                           const CompletionOptions& options = {});

bool is_unimodular(const PolyMatrix& U);

// All g x g minors of a g x q matrix, in lexicographic column order.
std::vector<Polynomial> maximal_minors(const PolyMatrix& M);

// True iff [P -N] has full row rank at every complex s, i.e. the monic gcd of its
// maximal minors is 1. Throws errc::singular when every maximal minor vanishes.
bool controllability_check(const PolyMatrix& P, const PolyMatrix& N);

// P^-1 N proper: every entry of adj(P) N has degree <= deg det P.
bool is_proper(const PolyMatrix& P, const PolyMatrix& N);

PolyMatrix adjugate(const PolyMatrix& M);

}  // namespace gluskabi
