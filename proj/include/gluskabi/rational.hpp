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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gluskabi {

using Rational = mpq_class;

// Accepts "n", "n/d", or a decimal literal such as "-0.02" or "1.5e-3"; decimals
// are converted exactly (0.02 becomes 1/50, not the nearest double).
Rational parse_rational(std::string_view text);

// Exact value of a binary double.
Rational rational_from_double(double value);

// Always rendered as "num/den".
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace gluskabi
