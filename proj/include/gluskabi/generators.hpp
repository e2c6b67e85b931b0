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

#include <gluskabi/jet.hpp>

namespace gluskabi {

// Closed-form type members used as boundary data.
class Generator {
   public:
    enum class Kind { constant, exponential, polynomial, harmonic };

    static Generator constant(double c);
    // c e^{lambda t}
    static Generator exponential(double c, double lambda);
    // Ascending coefficients.
    static Generator polynomial(std::vector<double> coeffs);
    // c0 + sum_m cos_m[m-1] cos(m omega t) + sin_m[m-1] sin(m omega t)
    static Generator harmonic(double omega, double c0, std::vector<double> cos_m, std::vector<double> sin_m);

    Kind kind() const noexcept { return kind_; }
    double eval(double t, int derivative = 0) const;

   private:
    Kind kind_ = Kind::constant;
    double c_ = 0.0;
    double lambda_ = 0.0;
    std::vector<double> coeffs_;
    std::vector<double> sin_;
};

// Jet of several generators (one per column) at t.
Jet jet_of(const std::vector<Generator>& signals, double t, int depth);

}  // namespace gluskabi
