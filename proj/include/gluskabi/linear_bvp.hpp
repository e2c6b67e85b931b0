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
#include <gluskabi/poly_matrix.hpp>
#include <gluskabi/roots.hpp>
#include <gluskabi/trajectory.hpp>

namespace gluskabi {

// sum_c ops[c](D) x_c evaluated at t must equal value. ops[c] holds ascending
// coefficients; an empty entry means the component does not take part.
struct BoundaryCondition {
    double t = 0.0;
    std::vector<std::vector<double>> ops;
    double value = 0.0;
};

// ode(D) x = 0 on [a, b] for a square, nonsingular polynomial matrix ode, plus
// boundary functionals. The condition count may exceed the solution-space
// dimension; the stacked system is solved in the least-squares sense and must
// then be consistent.
struct LinearBVP {
    PolyMatrix ode{Polynomial::constant(1)};
    double a = 0.0;
    double b = 1.0;
    std::vector<BoundaryCondition> conditions;
    double tolerance = 1e-8;
    // Singular values below rank_tolerance * sigma_max count as zero.
    double rank_tolerance = 1e-10;
};

struct LinearBVPSolution {
    std::vector<ModalExpansion> components;
    std::vector<Root> roots;  // of det(ode)
    int dimension = 0;        // solution-space dimension, deg det(ode)
    int rank = 0;
    double condition_number = 0.0;
    double boundary_residual = 0.0;  // on the row-equilibrated system
    double ode_residual = 0.0;       // max |ode(D) x| on a check grid, relative to coefficient scale
};

LinearBVPSolution solve_linear_bvp(const LinearBVP& problem);

// Convenience for scalar equations: conditions x^(i)(t) = value.
BoundaryCondition derivative_condition(double t, int order, double value);

Trajectory sample(const LinearBVPSolution& solution, const std::vector<double>& grid, std::vector<std::string> names);

}  // namespace gluskabi
