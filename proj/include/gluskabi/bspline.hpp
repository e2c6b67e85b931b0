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

// Clamped B-splines of degree p on `elements` uniform elements of [a, b].
class BSplineBasis {
   public:
    BSplineBasis(double a, double b, int elements, int degree);

    int size() const noexcept { return elements_ + degree_; }
    int degree() const noexcept { return degree_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    // Values of the nonzero basis functions and their derivatives through `order`
    // at t: out(d, j) belongs to basis function first + j.
    Eigen::MatrixXd eval(double t, int order, int& first) const;

    // Rows: basis derivatives of the given order at each of the points.
    Eigen::SparseMatrix<double> matrix(const std::vector<double>& points, int order) const;

    // Gauss-Legendre points and weights, `per_element` per element.
    void quadrature(int per_element, std::vector<double>& points, Eigen::VectorXd& weights) const;

   private:
    int span(double t) const;

    double a_;
    double b_;
    int elements_;
    int degree_;
    std::vector<double> knots_;
};

}  // namespace gluskabi
