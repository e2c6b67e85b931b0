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

#include <gluskabi/modal.hpp>
#include <gluskabi/polynomial.hpp>
#include <gluskabi/trajectory.hpp>

namespace gluskabi {

// ||e||^2 = sum_i rho_i int_a^b (D^i e)^2 dt, with weight operator Q = sum_i rho_i (-D^2)^i.
// The zero norm is a separate, explicit state: it is what lets a dynamical problem
// drop the input (or output) term exactly.
class SobolevNorm {
   public:
    SobolevNorm() = default;
    SobolevNorm(std::vector<Rational> weights, double a, double b);
    static SobolevNorm l2(double a, double b);
    static SobolevNorm zero(double a, double b);

    const std::vector<Rational>& weights() const noexcept { return weights_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    bool is_zero() const noexcept { return zero_; }
    // Highest derivative with positive weight; -1 for the zero norm.
    int order() const noexcept;
    Polynomial q_poly() const;

   private:
    std::vector<Rational> weights_{Rational(1)};
    double a_ = 0.0;
    double b_ = 1.0;
    bool zero_ = false;
};

// Composite Simpson on the trajectory's (uniform) grid, summed over components.
double sobolev_cost(const Trajectory& e, const SobolevNorm& norm);

// Same functional for closed-form signals, sampled exactly on `points` nodes.
double sobolev_cost(const std::vector<ModalExpansion>& e, const SobolevNorm& norm, int points = 2001);

}  // namespace gluskabi
