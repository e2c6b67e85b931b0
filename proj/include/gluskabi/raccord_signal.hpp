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
#include <gluskabi/nonlinear_bvp.hpp>
#include <gluskabi/polynomial.hpp>
#include <gluskabi/roots.hpp>
#include <gluskabi/sobolev.hpp>
#include <gluskabi/trajectory.hpp>
#include <gluskabi/type_operator.hpp>

namespace gluskabi {

// Two ways of writing the stationarity condition of int (w w'' - w'^2)^2.
enum class ElForm {
    // Op_w* Op w expanded with (f D)* = -D (f .):
    //   w^2 w'''' + 4 w w' w''' + 3 w w''^2 - 8 w'^2 w''
    adjoint,
    // The shorter three-term form w^2 w'''' + 2 w w' w''' - 3 w'^2 w''. It vanishes on
    // every c e^{lambda t} too, but its solutions are not minimizers (see README).
    three_term,
};

const char* to_string(ElForm form) noexcept;
ElForm el_form_from_string(const std::string& name);

struct ELEquation {
    enum class Kind { linear, nonlinear };
    Kind kind = Kind::linear;
    // op(-xi) Q(xi) op(xi) as derived, and the same polynomial scaled to a positive
    // leading coefficient.
    Polynomial raw;
    Polynomial linear;
    ElForm form = ElForm::adjoint;
    JetResidual nonlinear;
    int order = 0;

    std::string describe() const;
};

ELEquation derive_el_linear(const TypeOperator& type, const SobolevNorm& norm);

// The exponential family under the plain L2 norm; other norms are unsupported.
ELEquation derive_el_L11(const SobolevNorm& norm, ElForm form = ElForm::adjoint);

ELEquation derive_el(const TypeOperator& type, const SobolevNorm& norm, ElForm form = ElForm::adjoint);

// The nonlinear residual for either form, on jets (w, w', ..., w'''').
JetResidual exponential_family_el(ElForm form);

struct SignalProblem {
    TypeOperator type;
    SobolevNorm norm;  // carries the interval [a, b]
    // Jets of the two type members at a and at b; one column per signal component.
    Jet left;
    Jet right;
    int grid = 2001;  // output samples for linear types
    ElForm el_form = ElForm::adjoint;
    int collocation_nodes = 401;
    double tolerance = 1e-8;
};

struct SignalSolution {
    Trajectory w;
    ELEquation el;
    std::vector<Root> roots;  // linear types
    double cost = 0.0;
    // Linear: max |EL(D) w| relative to the coefficient scale. Nonlinear: max |r| over
    // the sum of the term magnitudes on the collocation grid.
    double el_residual = 0.0;
    double boundary_residual = 0.0;
    double condition_number = 0.0;
    int iterations = 0;
    bool used_continuation = false;
    std::vector<std::string> warnings;
};

// Number of derivatives matched at each end: m + k (operator order plus norm order).
int boundary_condition_count(const TypeOperator& type, const SobolevNorm& norm);

// Relative equation error of a boundary jet, max over components.
double membership_defect(const TypeOperator& type, const Jet& jet);

void validate(const SignalProblem& problem);

SignalSolution solve_signal_raccordation(const SignalProblem& problem);

}  // namespace gluskabi
