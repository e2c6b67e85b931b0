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
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gluskabi/rational.hpp>

namespace gluskabi {

// Univariate polynomial over the rationals. Coefficients are stored in ascending
// degree and kept canonical: no trailing zeros, so the zero polynomial is empty.
class Polynomial {
   public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<long> coeffs);

    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, int degree);
    // The indeterminate itself.
    static Polynomial xi();

    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    // Zero outside the stored range.
    Rational coeff(int i) const;
    Rational leading() const;

    Polynomial monic() const;
    // p(-xi)
    Polynomial reflected() const;
    Polynomial derivative() const;

    Rational eval(const Rational& x) const;
    double eval(double x) const;
    std::complex<double> eval(std::complex<double> x) const;

    std::vector<double> to_double() const;

    // Human-readable form, e.g. "xi^4 - 2*xi^2".
    std::string to_string(const std::string& var = "xi") const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& rhs);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend Polynomial operator*(Polynomial lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Polynomial operator*(const Rational& lhs, Polynomial rhs) { return rhs *= lhs; }
    friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

   private:
    void trim();

    std::vector<Rational> coeffs_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

// Euclidean division; throws on a zero divisor.
DivMod divmod(const Polynomial& dividend, const Polynomial& divisor);

// Exact quotient; throws errc::inconsistent when the division leaves a remainder.
Polynomial exact_div(const Polynomial& dividend, const Polynomial& divisor);

Polynomial pow(const Polynomial& base, unsigned exponent);

// Monic gcd; gcd(0, 0) is 0.
Polynomial gcd(const Polynomial& p, const Polynomial& q);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

// Inverse of Polynomial::to_string: sums of terms such as "-3/2*xi^4", "xi", "7".
// Whitespace is ignored; throws errc::invalid_argument on anything else.
Polynomial parse_polynomial(std::string_view text, std::string_view var = "xi");

}  // namespace gluskabi
