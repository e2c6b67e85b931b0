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
#include <gluskabi/finite_difference.hpp>
#include <gluskabi/sobolev.hpp>

#include <cmath>
#include <sstream>

namespace gluskabi {

SobolevNorm::SobolevNorm(std::vector<Rational> weights, double a, double b)
    : weights_(std::move(weights)), a_(a), b_(b) {
    if (!(a < b)) {
        throw error(errc::invalid_argument, "norm interval needs a < b");
    }
    bool positive = false;
    for (const auto& w : weights_) {
        if (w < 0) {
            throw error(errc::invalid_argument, "Sobolev weights must be nonnegative");
        }
        positive = positive || w > 0;
    }
    if (!positive) {
        throw error(errc::invalid_argument, "Sobolev norm needs a positive weight; use SobolevNorm::zero for the zero norm");
    }
}

SobolevNorm SobolevNorm::l2(double a, double b) { return SobolevNorm({Rational(1)}, a, b); }

SobolevNorm SobolevNorm::zero(double a, double b) {
    if (!(a < b)) {
        throw error(errc::invalid_argument, "norm interval needs a < b");
    }
    SobolevNorm n;
    n.weights_.clear();
    n.a_ = a;
    n.b_ = b;
    n.zero_ = true;
    return n;
}

int SobolevNorm::order() const noexcept {
    for (int i = static_cast<int>(weights_.size()) - 1; i >= 0; --i) {
        if (weights_[static_cast<size_t>(i)] > 0) {
            return i;
        }
    }
    return -1;
}

Polynomial SobolevNorm::q_poly() const {
    Polynomial q;
    const Polynomial minus_xi2(std::vector<Rational>{0, 0, -1});
    Polynomial power = Polynomial::constant(1);
    for (const auto& w : weights_) {
        q = q + w * power;
        power = power * minus_xi2;
    }
    return q;
}

namespace {

void check_interval(double a, double b, const SobolevNorm& norm) {
    const double tol = 1e-12 * std::max({1.0, std::abs(norm.a()), std::abs(norm.b())});
    if (std::abs(a - norm.a()) > tol || std::abs(b - norm.b()) > tol) {
        std::ostringstream os;
        os << "signal lives on [" << a << ", " << b << "] but the norm is over [" << norm.a() << ", " << norm.b() << "]";
        throw error(errc::invalid_argument, os.str());
    }
}

}  // namespace

double sobolev_cost(const Trajectory& e, const SobolevNorm& norm) {
    check_interval(e.a(), e.b(), norm);
    if (norm.is_zero() || e.components() == 0) {
        return 0.0;
    }
    if (!e.uniform()) {
        throw error(errc::invalid_argument, "quadrature needs a uniform grid");
    }
    const double h = (e.b() - e.a()) / (e.size() - 1);
    Eigen::VectorXd w = simpson_weights(e.size(), h);
    double total = 0.0;
    for (int c = 0; c < e.components(); ++c) {
        for (size_t i = 0; i < norm.weights().size(); ++i) {
            const double rho = norm.weights()[i].get_d();
            if (rho == 0.0) {
                continue;
            }
            Eigen::VectorXd d = e.derivative(c, static_cast<int>(i));
            total += rho * w.dot(d.cwiseAbs2());
        }
    }
    return total;
}

double sobolev_cost(const std::vector<ModalExpansion>& e, const SobolevNorm& norm, int points) {
    if (points < 2) {
        throw error(errc::invalid_argument, "quadrature needs at least two points");
    }
    std::vector<std::string> names;
    for (size_t i = 0; i < e.size(); ++i) {
        names.push_back("e" + std::to_string(i));
    }
    return sobolev_cost(Trajectory::from_closed_form(uniform_grid(norm.a(), norm.b(), points), names, e), norm);
}

}  // namespace gluskabi
