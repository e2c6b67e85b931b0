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
#include <gluskabi/polynomial.hpp>

#include <cctype>
#include <sstream>
#include <utility>

namespace gluskabi {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) {
        c.canonicalize();
    }
    trim();
}

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) {
        coeffs_.emplace_back(c);
    }
    trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
    if (degree < 0) {
        throw error(errc::invalid_argument, "negative monomial degree");
    }
    std::vector<Rational> coeffs(static_cast<size_t>(degree) + 1);
    coeffs.back() = c;
    return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::xi() { return monomial(1, 1); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Rational Polynomial::coeff(int i) const {
    if (i < 0 || i > degree()) {
        return 0;
    }
    return coeffs_[static_cast<size_t>(i)];
}

Rational Polynomial::leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

Polynomial Polynomial::monic() const {
    if (is_zero()) {
        return *this;
    }
    Rational inv = 1 / leading();
    return *this * inv;
}

Polynomial Polynomial::reflected() const {
    Polynomial r = *this;
    for (size_t i = 1; i < r.coeffs_.size(); i += 2) {
        r.coeffs_[i] = -r.coeffs_[i];
    }
    return r;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) {
        return {};
    }
    std::vector<Rational> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) {
        d[i - 1] = coeffs_[i] * static_cast<long>(i);
    }
    return Polynomial(std::move(d));
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + it->get_d();
    }
    return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + it->get_d();
    }
    return acc;
}

std::vector<double> Polynomial::to_double() const {
    std::vector<double> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c.get_d());
    }
    return out;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[static_cast<size_t>(i)];
        if (c == 0) {
            continue;
        }
        Rational mag = abs(c);
        if (first) {
            if (c < 0) {
                os << "-";
            }
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = mag == 1;
        if (!unit || i == 0) {
            os << mag.get_str();
            if (i > 0) {
                os << "*";
            }
        }
        if (i >= 1) {
            os << var;
        }
        if (i >= 2) {
            os << "^" << i;
        }
    }
    return os.str();
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) {
        c = -c;
    }
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] -= rhs.coeffs_[i];
    }
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) {
        return {};
    }
    std::vector<Rational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    for (size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (lhs.coeffs_[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    *this = *this * rhs;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& rhs) {
    if (rhs == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) {
        c *= rhs;
    }
    return *this;
}

DivMod divmod(const Polynomial& dividend, const Polynomial& divisor) {
    if (divisor.is_zero()) {
        throw error(errc::invalid_argument, "polynomial division by zero");
    }
    std::vector<Rational> rem = dividend.coeffs();
    const int dd = divisor.degree();
    const Rational lead_inv = 1 / divisor.leading();
    int rd = dividend.degree();
    if (rd < dd) {
        return {Polynomial{}, dividend};
    }
    std::vector<Rational> quot(static_cast<size_t>(rd - dd) + 1);
    const auto& dc = divisor.coeffs();
    for (int k = rd; k >= dd; --k) {
        Rational factor = rem[static_cast<size_t>(k)] * lead_inv;
        if (factor == 0) {
            continue;
        }
        quot[static_cast<size_t>(k - dd)] = factor;
        for (int j = 0; j <= dd; ++j) {
            rem[static_cast<size_t>(k - dd + j)] -= factor * dc[static_cast<size_t>(j)];
        }
    }
    rem.resize(static_cast<size_t>(dd));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial exact_div(const Polynomial& dividend, const Polynomial& divisor) {
    auto [q, r] = divmod(dividend, divisor);
    if (!r.is_zero()) {
        throw error(errc::inconsistent, "inexact polynomial division");
    }
    return q;
}

Polynomial pow(const Polynomial& base, unsigned exponent) {
    Polynomial result = Polynomial::constant(1);
    Polynomial b = base;
    while (exponent > 0) {
        if (exponent & 1u) {
            result *= b;
        }
        exponent >>= 1u;
        if (exponent > 0) {
            b *= b;
        }
    }
    return result;
}

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
    Polynomial a = p;
    Polynomial b = q;
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).remainder.monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

Polynomial parse_polynomial(std::string_view text, std::string_view var) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s.push_back(ch);
        }
    }
    auto fail = [&]() -> Polynomial {
        throw error(errc::invalid_argument, "cannot parse polynomial '" + std::string(text) + "'");
    };
    if (s.empty()) {
        return fail();
    }
    if (s == "0") {
        return {};
    }
    Polynomial out;
    size_t pos = 0;
    while (pos < s.size()) {
        Rational sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            return fail();
        }
        size_t end = pos;
        while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '/' || s[end] == '.')) {
            ++end;
        }
        Rational coeff = 1;
        const bool has_coeff = end > pos;
        if (has_coeff) {
            coeff = parse_rational(std::string_view(s).substr(pos, end - pos));
            pos = end;
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                if (s.compare(pos, var.size(), var) != 0) {
                    return fail();
                }
            }
        }
        int degree = 0;
        if (s.compare(pos, var.size(), var) == 0) {
            pos += var.size();
            degree = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                end = pos;
                while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) {
                    ++end;
                }
                if (end == pos) {
                    return fail();
                }
                degree = std::stoi(s.substr(pos, end - pos));
                pos = end;
            }
        } else if (!has_coeff) {
            return fail();
        }
        out += Polynomial::monomial(sign * coeff, degree);
        if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            return fail();
        }
    }
    return out;
}

}  // namespace gluskabi
