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
#include <gluskabi/rational.hpp>

#include <cctype>
#include <cmath>

namespace gluskabi {

const char* to_string(errc code) noexcept {
    switch (code) {
        case errc::invalid_argument:
            return "invalid_argument";
        case errc::dimension_mismatch:
            return "dimension_mismatch";
        case errc::not_coprime:
            return "not_coprime";
        case errc::singular:
            return "singular";
        case errc::not_converged:
            return "not_converged";
        case errc::inconsistent:
            return "inconsistent";
        case errc::unsupported:
            return "unsupported";
        case errc::degree_cap:
            return "degree_cap";
    }
    return "unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!is_integer_literal(s)) {
        throw error(errc::invalid_argument, "not an integer: '" + std::string(s) + "'");
    }
    if (s[0] == '+') {
        s.remove_prefix(1);
    }
    return mpz_class(std::string(s), 10);
}

Rational parse_decimal(std::string_view s) {
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        std::string_view exp_text = s.substr(e + 1);
        if (!is_integer_literal(exp_text)) {
            throw error(errc::invalid_argument, "bad exponent in '" + std::string(s) + "'");
        }
        exponent = std::stol(std::string(exp_text));
    }
    std::string digits;
    bool negative = false;
    size_t i = 0;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
        negative = mantissa[0] == '-';
        i = 1;
    }
    bool seen_point = false;
    long fraction_digits = 0;
    for (; i < mantissa.size(); ++i) {
        char c = mantissa[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) {
                ++fraction_digits;
            }
        } else {
            throw error(errc::invalid_argument, "not a number: '" + std::string(s) + "'");
        }
    }
    if (digits.empty()) {
        throw error(errc::invalid_argument, "not a number: '" + std::string(s) + "'");
    }
    Rational value(mpz_class(digits, 10));
    long shift = exponent - fraction_digits;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    if (shift >= 0) {
        value *= ten_pow;
    } else {
        value /= ten_pow;
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(trim(text.substr(0, slash)));
        mpz_class den = parse_integer(trim(text.substr(slash + 1)));
        if (den == 0) {
            throw error(errc::invalid_argument, "zero denominator in '" + std::string(text) + "'");
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (is_integer_literal(text)) {
        return Rational(parse_integer(text));
    }
    return parse_decimal(text);
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw error(errc::invalid_argument, "non-finite value cannot be made rational");
    }
    return Rational(value);
}

std::string to_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace gluskabi
