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
#include <gluskabi/type_operator.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace gluskabi {

TypeOperator TypeOperator::linear(Polynomial op, std::string name) {
    if (op.is_zero()) {
        throw error(errc::invalid_argument, "linear type operator must be nonzero");
    }
    TypeOperator t;
    t.kind_ = TypeKind::linear;
    t.op_ = std::move(op);
    t.name_ = std::move(name);
    return t;
}

TypeOperator TypeOperator::ltid(int n, int k) {
    if (n < 1 || k < 1) {
        throw error(errc::invalid_argument, "LTID type needs n >= 1 and k >= 1");
    }
    TypeOperator t;
    t.kind_ = TypeKind::ltid_wronskian;
    t.n_ = n;
    t.k_ = k;
    t.name_ = "ltid";
    t.params_ = {{"n", n}, {"k", k}};
    return t;
}

TypeOperator TypeOperator::with_name(std::string name, std::map<std::string, double> params) const {
    TypeOperator t = *this;
    t.name_ = std::move(name);
    t.params_ = std::move(params);
    return t;
}

const Polynomial& TypeOperator::op_poly() const {
    if (!is_linear()) {
        throw error(errc::unsupported, "op_poly requested for a nonlinear type");
    }
    return op_;
}

int TypeOperator::required_order() const {
    if (is_linear()) {
        return op_.degree();
    }
    return n_ + n_ * k_ + k_ - 1;
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw error(errc::invalid_argument, "missing type parameter '" + key + "'");
    }
    return it->second;
}

int int_param(const std::map<std::string, double>& params, const std::string& key, int min) {
    double v = param(params, key);
    if (v != std::floor(v) || v < min) {
        std::ostringstream os;
        os << "type parameter '" << key << "' must be an integer >= " << min;
        throw error(errc::invalid_argument, os.str());
    }
    return static_cast<int>(v);
}

}  // namespace

TypeOperator make_builtin_type(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "constants") {
        return TypeOperator::linear(Polynomial::xi(), name).with_name(name, {});
    }
    if (name == "polynomials") {
        int d = int_param(params, "degree", 0);
        return TypeOperator::linear(Polynomial::monomial(1, d + 1)).with_name(name, {{"degree", d}});
    }
    if (name == "exponential_family") {
        return TypeOperator::ltid(1, 1).with_name(name, {});
    }
    if (name == "ltid") {
        int n = int_param(params, "n", 1);
        int k = int_param(params, "k", 1);
        return TypeOperator::ltid(n, k);
    }
    if (name == "periodic_trunc") {
        double omega = param(params, "omega");
        int terms = int_param(params, "terms", 1);
        if (!(omega > 0.0) || !std::isfinite(omega)) {
            throw error(errc::invalid_argument, "periodic_trunc needs omega > 0");
        }
        // D * prod_m (1 + D^2 / (m^2 omega^2)), omega taken as the exact value of the double.
        Rational w = rational_from_double(omega);
        Polynomial op = Polynomial::xi();
        for (int m = 1; m <= terms; ++m) {
            Rational c = 1 / (Rational(m * m) * w * w);
            op *= Polynomial(std::vector<Rational>{1, 0, c});
        }
        return TypeOperator::linear(op).with_name(name, {{"omega", omega}, {"terms", terms}});
    }
    throw error(errc::invalid_argument, "unknown builtin type '" + name + "'");
}

Eigen::MatrixXd generalized_wronskian(const Jet& jet, int n, int k) {
    const int cols = n * k + k;
    if (jet.components() != k) {
        throw error(errc::dimension_mismatch, "jet component count does not match k");
    }
    if (jet.depth() < n + cols - 1) {
        std::ostringstream os;
        os << "LTID residual needs derivatives through order " << n + cols - 1 << ", jet carries " << jet.depth();
        throw error(errc::invalid_argument, os.str());
    }
    Eigen::MatrixXd W((n + 1) * k, cols);
    for (int r = 0; r <= n; ++r) {
        for (int comp = 0; comp < k; ++comp) {
            for (int c = 0; c < cols; ++c) {
                W(r * k + comp, c) = jet(r + c, comp);
            }
        }
    }
    return W;
}

namespace {

Eigen::MatrixXd bordered(const Eigen::MatrixXd& W, int n, int k, int i, int j) {
    const int m = n * k;
    Eigen::MatrixXd B(m + 1, m + 1);
    B.topLeftCorner(m, m) = W.topLeftCorner(m, m);
    B.topRightCorner(m, 1) = W.block(0, m + j, m, 1);
    B.bottomLeftCorner(1, m) = W.block(m + i, 0, 1, m);
    B(m, m) = W(m + i, m + j);
    return B;
}

// Permanent of |B| by Ryser's formula: the sum of the absolute Leibniz terms of det B.
double abs_permanent(const Eigen::MatrixXd& B) {
    const int n = static_cast<int>(B.rows());
    if (n > 24) {
        throw error(errc::unsupported, "residual scale is limited to bordered Wronskians of size 24");
    }
    Eigen::MatrixXd A = B.cwiseAbs();
    double total = 0.0;
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        double prod = 1.0;
        for (int r = 0; r < n; ++r) {
            double row = 0.0;
            for (int c = 0; c < n; ++c) {
                if (mask & (1ul << c)) {
                    row += A(r, c);
                }
            }
            prod *= row;
        }
        total += (__builtin_popcountl(mask) % 2 == n % 2 ? 1.0 : -1.0) * prod;
    }
    return total;
}

}  // namespace

Eigen::MatrixXd ltid_residual(const Jet& jet, int n, int k, const LtidOptions& options) {
    Eigen::MatrixXd W = generalized_wronskian(jet, n, k);
    const int m = n * k;
    Eigen::MatrixXd out(k, k);
    if (options.form == LtidForm::determinant_scaled) {
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                out(i, j) = bordered(W, n, k, i, j).fullPivLu().determinant();
            }
        }
        return out;
    }
    Eigen::MatrixXd What = W.topLeftCorner(m, m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(What);
    const auto& s = svd.singularValues();
    const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
    if (!(cond <= options.condition_limit)) {
        std::ostringstream os;
        os << "generalized Wronskian is numerically singular at t = " << jet.t << " (condition " << cond << ")";
        throw error(errc::singular, os.str());
    }
    Eigen::MatrixXd Wtilde = W.topRightCorner(m, k);
    Eigen::MatrixXd lower = W.bottomLeftCorner(k, m);
    out = W.bottomRightCorner(k, k) - lower * What.fullPivLu().solve(Wtilde);
    return out;
}

double ltid_residual_scale(const Jet& jet, int n, int k) {
    Eigen::MatrixXd W = generalized_wronskian(jet, n, k);
    double scale = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            scale = std::max(scale, abs_permanent(bordered(W, n, k, i, j)));
        }
    }
    return scale;
}

Eigen::VectorXd residual(const TypeOperator& type, const Jet& jet, const LtidOptions& options) {
    if (type.is_linear()) {
        const auto& op = type.op_poly();
        if (jet.depth() < op.degree()) {
            std::ostringstream os;
            os << "type residual needs derivatives through order " << op.degree() << ", jet carries " << jet.depth();
            throw error(errc::invalid_argument, os.str());
        }
        Eigen::VectorXd e = Eigen::VectorXd::Zero(jet.components());
        for (int c = 0; c < jet.components(); ++c) {
            for (int i = 0; i <= op.degree(); ++i) {
                e(c) += op.coeff(i).get_d() * jet(i, c);
            }
        }
        return e;
    }
    Eigen::MatrixXd r = ltid_residual(jet, type.ltid_order(), type.ltid_variables(), options);
    return Eigen::Map<const Eigen::VectorXd>(r.data(), r.size());
}

Linearization::Linearization(TypeOperator type) : type_(std::move(type)) {
    if (!type_.is_linear() && (type_.ltid_order() != 1 || type_.ltid_variables() != 1)) {
        throw error(errc::unsupported, "linearization of the LTID residual is only available for n = k = 1");
    }
}

std::vector<double> Linearization::coefficients(const Jet& w) const {
    if (type_.is_linear()) {
        return type_.op_poly().to_double();
    }
    if (w.depth() < 2) {
        throw error(errc::invalid_argument, "linearization about w needs w, w', w''");
    }
    // Op w = w w'' - w'^2  =>  Op_w h = w'' h - 2 w' h' + w h''
    return {w(2), -2.0 * w(1), w(0)};
}

Linearization linearize(const TypeOperator& type) { return Linearization(type); }

}  // namespace gluskabi
