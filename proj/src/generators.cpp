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
#include <gluskabi/generators.hpp>

#include <cmath>
#include <numbers>

namespace gluskabi {

Generator Generator::constant(double c) {
    Generator g;
    g.kind_ = Kind::constant;
    g.c_ = c;
    return g;
}

Generator Generator::exponential(double c, double lambda) {
    Generator g;
    g.kind_ = Kind::exponential;
    g.c_ = c;
    g.lambda_ = lambda;
    return g;
}

Generator Generator::polynomial(std::vector<double> coeffs) {
    Generator g;
    g.kind_ = Kind::polynomial;
    g.coeffs_ = std::move(coeffs);
    return g;
}

Generator Generator::harmonic(double omega, double c0, std::vector<double> cos_m, std::vector<double> sin_m) {
    if (!(omega > 0.0)) {
        throw error(errc::invalid_argument, "harmonic generator needs omega > 0");
    }
    Generator g;
    g.kind_ = Kind::harmonic;
    g.lambda_ = omega;
    g.c_ = c0;
    const size_t n = std::max(cos_m.size(), sin_m.size());
    cos_m.resize(n, 0.0);
    sin_m.resize(n, 0.0);
    g.coeffs_ = std::move(cos_m);
    g.sin_ = std::move(sin_m);
    return g;
}

double Generator::eval(double t, int d) const {
    switch (kind_) {
        case Kind::constant:
            return d == 0 ? c_ : 0.0;
        case Kind::exponential:
            return c_ * std::pow(lambda_, d) * std::exp(lambda_ * t);
        case Kind::polynomial: {
            double acc = 0.0;
            for (size_t i = coeffs_.size(); i-- > static_cast<size_t>(d);) {
                double f = 1.0;
                for (int k = 0; k < d; ++k) {
                    f *= static_cast<double>(i) - k;
                }
                acc = acc * t + f * coeffs_[i];
            }
            return acc;
        }
        case Kind::harmonic: {
            double acc = d == 0 ? c_ : 0.0;
            // d/dt cos(x) = cos(x + pi/2), likewise for sin.
            const double shift = d * std::numbers::pi / 2;
            for (size_t m = 0; m < coeffs_.size(); ++m) {
                const double f = static_cast<double>(m + 1) * lambda_;
                const double x = f * t + shift;
                acc += std::pow(f, d) * (coeffs_[m] * std::cos(x) + sin_[m] * std::sin(x));
            }
            return acc;
        }
    }
    return 0.0;
}

Jet jet_of(const std::vector<Generator>& signals, double t, int depth) {
    Jet j;
    j.t = t;
    j.values.resize(depth + 1, static_cast<Eigen::Index>(signals.size()));
    for (size_t c = 0; c < signals.size(); ++c) {
        for (int d = 0; d <= depth; ++d) {
            j.values(d, static_cast<Eigen::Index>(c)) = signals[c].eval(t, d);
        }
    }
    return j;
}

}  // namespace gluskabi
