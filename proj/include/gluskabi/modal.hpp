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

#include <gluskabi/roots.hpp>

namespace gluskabi {

// One characteristic root (taken from the closed upper half plane) with its
// multiplicity. Basis functions are s^j e^{root s}, s = t - anchor, j < multiplicity.
struct ModeGroup {
    std::complex<double> root;
    int multiplicity = 1;
    double anchor = 0.0;

    bool is_real() const noexcept { return root.imag() == 0.0; }
    // Real unknowns contributed: one per power for real roots, two for a conjugate pair.
    int real_dimension() const noexcept { return is_real() ? multiplicity : 2 * multiplicity; }
};

// Groups for the roots of an ODE on [a, b]. Conjugate partners are dropped and each
// mode is anchored at a when Re(root) <= 0 and at b otherwise, so that no basis
// function exceeds its anchor value in magnitude on the interval.
std::vector<ModeGroup> mode_groups(const std::vector<Root>& roots, double a, double b);

// D^d [ s^j e^{root s} ] at time t.
std::complex<double> mode_derivative(const ModeGroup& group, int power, double t, int d);

// Real closed-form signal  sum_g Re( sum_j c_{g,j} s^j e^{root_g s} ).
class ModalExpansion {
   public:
    ModalExpansion() = default;
    ModalExpansion(std::vector<ModeGroup> groups, std::vector<std::vector<std::complex<double>>> coeffs);

    static ModalExpansion zero(std::vector<ModeGroup> groups);
    // Coefficients laid out as in real_dimension(): for a conjugate pair group the
    // unknowns (x, y) for power j represent x Re(f_j) - y Im(f_j).
    static ModalExpansion from_real_coefficients(std::vector<ModeGroup> groups, const std::vector<double>& x);

    const std::vector<ModeGroup>& groups() const noexcept { return groups_; }
    const std::vector<std::vector<std::complex<double>>>& coeffs() const noexcept { return coeffs_; }
    int real_dimension() const;

    double eval(double t, int derivative = 0) const;

    // a(D) applied to this signal, a given by ascending real coefficients. The
    // result lives in the same basis.
    ModalExpansion apply(const std::vector<double>& op) const;

    // Largest coefficient magnitude.
    double coefficient_scale() const;

    friend ModalExpansion operator+(const ModalExpansion& lhs, const ModalExpansion& rhs);
    friend ModalExpansion operator-(const ModalExpansion& lhs, const ModalExpansion& rhs);
    friend ModalExpansion operator*(double k, const ModalExpansion& rhs);

   private:
    std::vector<ModeGroup> groups_;
    std::vector<std::vector<std::complex<double>>> coeffs_;
};

}  // namespace gluskabi
