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

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <gluskabi/jet.hpp>
#include <gluskabi/polynomial.hpp>

namespace gluskabi {

enum class TypeKind { linear, ltid_wronskian };

// An operator Op whose kernel is a type. Linear types are a polynomial in D applied
// to each signal component; the LTID family L^k_n uses the generalized-Wronskian
// residual instead.
class TypeOperator {
   public:
    static TypeOperator linear(Polynomial op, std::string name = "linear");
    static TypeOperator ltid(int n, int k);

    TypeKind kind() const noexcept { return kind_; }
    bool is_linear() const noexcept { return kind_ == TypeKind::linear; }
    const std::string& name() const noexcept { return name_; }

    // Linear types only.
    const Polynomial& op_poly() const;
    int ltid_order() const noexcept { return n_; }
    int ltid_variables() const noexcept { return k_; }

    // Highest derivative the residual reads: deg(op) or n + nk + k - 1.
    int required_order() const;

    // Builtin name and parameters, kept for serialization.
    const std::map<std::string, double>& params() const noexcept { return params_; }
    TypeOperator with_name(std::string name, std::map<std::string, double> params) const;

   private:
    std::map<std::string, double> params_;
    TypeKind kind_ = TypeKind::linear;
    std::string name_;
    Polynomial op_;
    int n_ = 0;
    int k_ = 0;
};

// Builtin families: "constants", "polynomials" (degree), "exponential_family",
// "ltid" (n, k), "periodic_trunc" (omega, terms). Unknown names and bad parameters
// throw errc::invalid_argument.
TypeOperator make_builtin_type(const std::string& name, const std::map<std::string, double>& params = {});

enum class LtidForm {
    // det(W_hat) times the Schur complement, i.e. bordered Wronskian determinants;
    // polynomial in the jet entries and defined where W_hat is singular.
    determinant_scaled,
    // The Schur complement itself; refuses ill-conditioned W_hat.
    schur,
};

struct LtidOptions {
    LtidForm form = LtidForm::determinant_scaled;
    double condition_limit = 1e12;
};

// Generalized Wronskian of order (n, k): (n+1)k rows by nk+k columns, block (r, c)
// holding the (r+c)-th derivative of the k-vector signal.
Eigen::MatrixXd generalized_wronskian(const Jet& jet, int n, int k);

// k x k residual of the L^k_n membership test at the jet's instant.
Eigen::MatrixXd ltid_residual(const Jet& jet, int n, int k, const LtidOptions& options = {});

// A size measure for the determinant-scaled residual: the permanent of the
// entrywise absolute bordered Wronskian, i.e. the sum of the magnitudes of the
// terms the determinant adds up. |residual| / scale lies in [0, 1].
double ltid_residual_scale(const Jet& jet, int n, int k);

// Equation error Op w at the jet's instant, one entry per component (linear) or the
// flattened k x k residual (LTID).
Eigen::VectorXd residual(const TypeOperator& type, const Jet& jet, const LtidOptions& options = {});

// Linearization (Gateaux derivative) of Op about w: coefficients c_i(t) such that
// Op_w h = sum_i c_i h^(i). Constant for linear types; w D^2 - 2 w' D + w'' for
// the exponential family. Other LTID orders are unsupported.
class Linearization {
   public:
    Linearization(TypeOperator type);

    // Coefficients at a jet of w (depth >= 2 for the exponential family).
    std::vector<double> coefficients(const Jet& w) const;
    bool constant() const noexcept { return type_.is_linear(); }

   private:
    TypeOperator type_;
};

Linearization linearize(const TypeOperator& type);

}  // namespace gluskabi
