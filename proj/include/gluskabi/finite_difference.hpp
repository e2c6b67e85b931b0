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
#include <Eigen/SparseCore>

namespace gluskabi {

// Fornberg weights for derivative orders 0..max_order at z from the nodes x.
// Result[d][i] multiplies f(x[i]) in the approximation of f^(d)(z).
std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int max_order);

// Differentiation matrix of the given order on a uniform grid of n points with
// spacing h. Each row uses order + 4 consecutive nodes (centred where possible,
// one-sided near the ends), which is at least fourth-order accurate.
Eigen::SparseMatrix<double> fd_matrix(int n, double h, int order);

// Composite Simpson weights on a uniform grid; an even point count closes with the
// three-eighths rule on the last three panels.
Eigen::VectorXd simpson_weights(int n, double h);

std::vector<double> uniform_grid(double a, double b, int n);

}  // namespace gluskabi
