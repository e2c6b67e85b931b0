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

#include <complex>
#include <vector>

#include <gluskabi/polynomial.hpp>

namespace gluskabi {

struct Root {
    std::complex<double> value;
    int multiplicity = 1;
    // Found by the rational root search rather than by eigenvalues.
    bool exact = false;
};

struct RootOptions {
    // Relative distance under which two eigenvalues are merged into one root.
    double cluster_tolerance = 1e-8;
    // Rational root search is skipped when the integer-scaled end coefficients
    // exceed this magnitude.
    long rational_search_limit = 1000000;
};

// Square-free decomposition over Q: p = c * prod factors[i]^(i+1). Entries may be
// the constant 1 for absent multiplicities.
std::vector<Polynomial> square_free_decomposition(const Polynomial& p);

// Roots of p with multiplicities summing to deg p, sorted by real then imaginary
// part. Conjugate pairs are exact mirror images. Degree 0 yields an empty list.
std::vector<Root> char_roots(const Polynomial& p, const RootOptions& options = {});

}  // namespace gluskabi
