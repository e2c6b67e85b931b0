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

#include <string>
#include <vector>

#include <gluskabi/jet.hpp>
#include <gluskabi/poly_matrix.hpp>
#include <gluskabi/polyops.hpp>
#include <gluskabi/roots.hpp>
#include <gluskabi/sobolev.hpp>
#include <gluskabi/trajectory.hpp>
#include <gluskabi/type_operator.hpp>

namespace gluskabi {

// P(D) y = N(D) u with P g x g and N g x m. Either norm may be the zero norm, not
// both; the interval is taken from the norms (they must agree).
struct DynamicalProblem {
    PolyMatrix P{Polynomial::constant(1)};
    PolyMatrix N{Polynomial::constant(1)};
    TypeOperator type;
    SobolevNorm qu;
    SobolevNorm qy;
    // Jets of the steady members at a and b: columns are the m inputs or g outputs.
    Jet u_left;
    Jet u_right;
    Jet y_left;
    Jet y_right;
    CompletionOptions completion;
    int grid = 2001;
    double tolerance = 1e-8;
};

struct EtaSystem {
    UnimodularCompletion completion;
    PolyMatrix X;  // op* Qu op, m x m
    PolyMatrix Z;  // op* Qy op, g x g
    PolyMatrix eta_poly;
    Polynomial determinant;  // det eta_poly
    int order = 0;           // deg det eta_poly
};

double dynamical_interval_start(const DynamicalProblem& p);
double dynamical_interval_end(const DynamicalProblem& p);

// Structural checks only: shapes, det P, properness, controllability.
void validate_structure(const DynamicalProblem& p);
// Structure plus boundary jets (type membership and the dynamics, relative 1e-8).
void validate(const DynamicalProblem& p);

EtaSystem build_eta_system(const DynamicalProblem& p);

struct DynamicalSolution {
    EtaSystem eta;
    std::vector<Root> roots;
    Trajectory u;
    Trajectory y;
    std::vector<ModalExpansion> u_closed;
    std::vector<ModalExpansion> y_closed;
    double cost = 0.0;
    int derivative_conditions = 0;  // d: u^(i), y^(i) matched for i < d
    int condition_count = 0;
    double condition_number = 0.0;
    double boundary_residual = 0.0;
    // max |P(D) y - N(D) u| coefficient in the mode basis, relative to the largest
    // coefficient of u and y, and the same on the sample grid.
    double dynamics_coefficient_residual = 0.0;
    double dynamics_residual = 0.0;
    double eta_residual = 0.0;
};

DynamicalSolution solve_dynamical_raccordation(const DynamicalProblem& p);

}  // namespace gluskabi
