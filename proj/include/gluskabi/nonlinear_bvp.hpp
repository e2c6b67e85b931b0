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

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <gluskabi/trajectory.hpp>

namespace gluskabi {

// A scalar differential equation r(w, w', ..., w^(order)) = 0 given pointwise on jets.
// `derivatives` holds w^(0..order) at one instant.
struct JetResidual {
    int order = 0;
    std::function<double(const Eigen::VectorXd& derivatives)> value;
    // d r / d w^(i), i = 0..order.
    std::function<Eigen::VectorXd(const Eigen::VectorXd& derivatives)> gradient;
    // Size of the terms r adds up (sum of their magnitudes); residuals are judged
    // relative to it. Defaults to 1 when empty.
    std::function<double(const Eigen::VectorXd& derivatives)> scale;
};

// Polynomial of degree 2p - 1 matching p derivatives at each end of [a, b].
class HermiteInterpolant {
   public:
    HermiteInterpolant(double a, double b, const std::vector<double>& left, const std::vector<double>& right);
    double eval(double t, int derivative = 0) const;

   private:
    double a_;
    double len_;
    std::vector<double> c_;  // in s = (t - a) / (b - a)
};

struct NonlinearBVP {
    JetResidual residual;
    double a = 0.0;
    double b = 1.0;
    // w^(i) at a and b for i = 0..p-1, p = order / 2.
    std::vector<double> left;
    std::vector<double> right;
    int nodes = 401;
    double tolerance = 1e-8;
    int max_iterations = 100;
    int continuation_steps = 8;
    // Initial iterate as w^(d)(t); the Hermite interpolant of the boundary data when empty.
    std::function<double(double t, int d)> init;
    // Boundary data of the easy instance that continuation starts from (its exact
    // solution is `easy_solution`); continuation is skipped when either is empty.
    std::vector<double> easy_right;
    std::function<double(double t, int d)> easy_solution;
};

struct NonlinearBVPSolution {
    Trajectory w;  // samples of w^(0..order)
    int iterations = 0;
    double residual = 0.0;           // max |r| / scale over the collocation nodes
    double boundary_residual = 0.0;  // max |BC mismatch|
    bool used_continuation = false;
};

// Collocation on a uniform grid. The equation is rewritten as the first-order chain
// y_k = w^(k), y_k' = y_{k+1}, r(y_0..y_{order-1}, y_{order-1}') = 0 and every
// derivative is a first-derivative FD stencil, so rounding grows like 1/h rather
// than 1/h^order. Damped Newton with Armijo backtracking, then continuation in the
// right-hand boundary data when the direct attempt fails. Throws
// errc::not_converged with the last residual.
NonlinearBVPSolution solve_nonlinear_bvp(const NonlinearBVP& problem);

}  // namespace gluskabi
