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

#include <Eigen/Core>

#include <gluskabi/poly_matrix.hpp>
#include <gluskabi/polynomial.hpp>
#include <gluskabi/sobolev.hpp>

namespace gluskabi {

// Independent check on the variational solvers: minimize the cost functional itself
// over clamped B-splines whose knots are the `points` grid nodes (exact derivatives,
// Gauss quadrature) under pinned boundary rows, never touching an Euler-Lagrange
// equation. Signals are returned sampled on the grid.

struct OracleResult {
    std::vector<double> grid;
    std::vector<Eigen::VectorXd> signals;
    double cost = 0.0;
    int iterations = 0;
    bool converged = true;
};

// End data: jets[i] = w^(i) at the endpoint.
struct EndData {
    std::vector<double> left;
    std::vector<double> right;
};

// min sum_i rho_i int (D^i op(D) w)^2 with w^(i) pinned at both ends.
OracleResult minimize_linear(const Polynomial& op, const SobolevNorm& norm, const EndData& ends, int points = 2001);

// min int (w w'' - w'^2)^2 with w, w' pinned at both ends. Levenberg-Marquardt from
// several starts (polynomial and exponential Hermite interpolants); the best
// stationary point is returned.
OracleResult minimize_exponential_family(const EndData& ends, double a, double b, int points = 2001);

// min ||op u||_Qu^2 + ||op y||_Qy^2 subject to P(D) y = N(D) u (a stiff quadratic
// penalty) and u^(i), y^(i) pinned at both ends. signals = [u..., y...].
OracleResult minimize_dynamical(const PolyMatrix& P, const PolyMatrix& N, const Polynomial& op, const SobolevNorm& qu,
                                const SobolevNorm& qy, const std::vector<EndData>& u_ends,
                                const std::vector<EndData>& y_ends, int points = 2001);

}  // namespace gluskabi
