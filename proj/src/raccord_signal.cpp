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
#include <gluskabi/linear_bvp.hpp>
#include <gluskabi/raccord_signal.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gluskabi {

const char* to_string(ElForm form) noexcept {
    switch (form) {
        case ElForm::adjoint:
            return "adjoint";
        case ElForm::three_term:
            return "three_term";
    }
    return "?";
}

ElForm el_form_from_string(const std::string& name) {
    if (name == "adjoint") {
        return ElForm::adjoint;
    }
    if (name == "three_term") {
        return ElForm::three_term;
    }
    throw error(errc::invalid_argument, "unknown Euler-Lagrange form '" + name + "'");
}

std::string ELEquation::describe() const {
    if (kind == Kind::linear) {
        return "(" + linear.to_string("D") + ") w = 0";
    }
    if (form == ElForm::adjoint) {
        return "w^2 w'''' + 4 w w' w''' + 3 w w''^2 - 8 w'^2 w'' = 0";
    }
    return "w^2 w'''' + 2 w w' w''' - 3 w'^2 w'' = 0";
}

ELEquation derive_el_linear(const TypeOperator& type, const SobolevNorm& norm) {
    if (!type.is_linear()) {
        throw error(errc::invalid_argument, "derive_el_linear needs a linear type");
    }
    if (norm.is_zero()) {
        throw error(errc::invalid_argument, "the Euler-Lagrange equation of the zero norm is empty");
    }
    const Polynomial& op = type.op_poly();
    ELEquation el;
    el.kind = ELEquation::Kind::linear;
    el.raw = op.reflected() * norm.q_poly() * op;
    el.linear = el.raw.leading() < 0 ? -el.raw : el.raw;
    el.order = el.raw.degree();
    return el;
}

JetResidual exponential_family_el(ElForm form) {
    JetResidual r;
    r.order = 4;
    if (form == ElForm::adjoint) {
        r.value = [](const Eigen::VectorXd& d) {
            return d(0) * d(0) * d(4) + 4 * d(0) * d(1) * d(3) + 3 * d(0) * d(2) * d(2) - 8 * d(2) * d(1) * d(1);
        };
        r.gradient = [](const Eigen::VectorXd& d) {
            Eigen::VectorXd g(5);
            g << 2 * d(0) * d(4) + 4 * d(1) * d(3) + 3 * d(2) * d(2), 4 * d(0) * d(3) - 16 * d(2) * d(1),
                6 * d(0) * d(2) - 8 * d(1) * d(1), 4 * d(0) * d(1), d(0) * d(0);
            return g;
        };
        r.scale = [](const Eigen::VectorXd& d) {
            return std::abs(d(0) * d(0) * d(4)) + std::abs(4 * d(0) * d(1) * d(3)) + std::abs(3 * d(0) * d(2) * d(2)) +
                   std::abs(8 * d(2) * d(1) * d(1));
        };
        return r;
    }
    r.value = [](const Eigen::VectorXd& d) {
        return d(4) * d(0) * d(0) + 2 * d(3) * d(1) * d(0) - 3 * d(2) * d(1) * d(1);
    };
    r.gradient = [](const Eigen::VectorXd& d) {
        Eigen::VectorXd g(5);
        g << 2 * d(4) * d(0) + 2 * d(3) * d(1), 2 * d(3) * d(0) - 6 * d(2) * d(1), -3 * d(1) * d(1), 2 * d(1) * d(0),
            d(0) * d(0);
        return g;
    };
    r.scale = [](const Eigen::VectorXd& d) {
        return std::abs(d(4) * d(0) * d(0)) + std::abs(2 * d(3) * d(1) * d(0)) + std::abs(3 * d(2) * d(1) * d(1));
    };
    return r;
}

ELEquation derive_el_L11(const SobolevNorm& norm, ElForm form) {
    if (norm.is_zero() || norm.order() != 0) {
        throw error(errc::unsupported, "the exponential-family Euler-Lagrange equation is only derived for the L2 norm");
    }
    ELEquation el;
    el.kind = ELEquation::Kind::nonlinear;
    el.form = form;
    el.nonlinear = exponential_family_el(form);
    el.order = 4;
    return el;
}

ELEquation derive_el(const TypeOperator& type, const SobolevNorm& norm, ElForm form) {
    if (type.is_linear()) {
        return derive_el_linear(type, norm);
    }
    if (type.ltid_order() == 1 && type.ltid_variables() == 1) {
        return derive_el_L11(norm, form);
    }
    throw error(errc::unsupported, "raccordation of LTID types is only available for n = k = 1");
}

int boundary_condition_count(const TypeOperator& type, const SobolevNorm& norm) {
    const int k = std::max(norm.order(), 0);
    return (type.is_linear() ? type.op_poly().degree() : 2) + k;
}

double membership_defect(const TypeOperator& type, const Jet& jet) {
    Eigen::VectorXd r = residual(type, jet);
    double worst = 0.0;
    if (type.is_linear()) {
        const auto c = type.op_poly().to_double();
        for (int comp = 0; comp < jet.components(); ++comp) {
            double scale = 1.0;
            double terms = 0.0;
            for (size_t i = 0; i < c.size(); ++i) {
                terms += std::abs(c[i] * jet(static_cast<int>(i), comp));
                scale = std::max(scale, std::abs(jet(static_cast<int>(i), comp)));
            }
            worst = std::max(worst, std::abs(r(comp)) / std::max(scale, terms));
        }
        return worst;
    }
    const double scale = ltid_residual_scale(jet, type.ltid_order(), type.ltid_variables());
    return scale > 0.0 ? r.cwiseAbs().maxCoeff() / scale : 0.0;
}

void validate(const SignalProblem& p) {
    if (!(p.norm.a() < p.norm.b())) {
        throw error(errc::invalid_argument, "signal problem needs a < b");
    }
    if (p.norm.is_zero()) {
        throw error(errc::invalid_argument, "signal problem needs a nonzero norm");
    }
    if (p.left.components() != p.right.components() || p.left.components() < 1) {
        throw error(errc::dimension_mismatch, "boundary jets must have the same positive number of components");
    }
    if (!p.type.is_linear() && p.left.components() != 1) {
        throw error(errc::dimension_mismatch, "the exponential family is scalar");
    }
    const int depth = std::max(boundary_condition_count(p.type, p.norm) - 1, p.type.required_order());
    if (p.left.depth() < depth || p.right.depth() < depth) {
        std::ostringstream os;
        os << "boundary jets need derivatives through order " << depth;
        throw error(errc::invalid_argument, os.str());
    }
    if (p.grid < 3) {
        throw error(errc::invalid_argument, "output grid needs at least three points");
    }
    for (const Jet* jet : {&p.left, &p.right}) {
        const double defect = membership_defect(p.type, *jet);
        if (!(defect <= 1e-8)) {
            std::ostringstream os;
            os << "boundary jet at t = " << jet->t << " is not a member of the type (relative residual " << defect << ")";
            throw error(errc::inconsistent, os.str());
        }
    }
}

namespace {

std::vector<std::string> component_names(int k) {
    if (k == 1) {
        return {"w"};
    }
    std::vector<std::string> out;
    for (int c = 0; c < k; ++c) {
        out.push_back("w" + std::to_string(c + 1));
    }
    return out;
}

SignalSolution solve_linear(const SignalProblem& p, ELEquation el) {
    const double a = p.norm.a();
    const double b = p.norm.b();
    const int count = boundary_condition_count(p.type, p.norm);
    SignalSolution out;
    std::vector<ModalExpansion> parts;
    for (int c = 0; c < p.left.components(); ++c) {
        LinearBVP bvp;
        bvp.ode = PolyMatrix(el.linear);
        bvp.a = a;
        bvp.b = b;
        bvp.tolerance = p.tolerance;
        for (int i = 0; i < count; ++i) {
            bvp.conditions.push_back(derivative_condition(a, i, p.left(i, c)));
            bvp.conditions.push_back(derivative_condition(b, i, p.right(i, c)));
        }
        LinearBVPSolution s = solve_linear_bvp(bvp);
        if (s.rank < s.dimension) {
            throw error(errc::singular, "boundary data do not determine the raccordation uniquely");
        }
        out.roots = s.roots;
        out.condition_number = std::max(out.condition_number, s.condition_number);
        out.boundary_residual = std::max(out.boundary_residual, s.boundary_residual);
        out.el_residual = std::max(out.el_residual, s.ode_residual);
        parts.push_back(s.components.front());
    }
    std::vector<ModalExpansion> errors;
    for (const auto& w : parts) {
        errors.push_back(w.apply(p.type.op_poly().to_double()));
    }
    out.cost = sobolev_cost(errors, p.norm, p.grid);
    out.w = Trajectory::from_closed_form(uniform_grid(a, b, p.grid), component_names(p.left.components()), parts);
    out.el = std::move(el);
    return out;
}

// w = sign * exp(v) with v the cubic Hermite interpolant of log|w|; exact on members.
std::function<double(double, int)> log_hermite(const SignalProblem& p) {
    const double wa = p.left(0);
    const double wb = p.right(0);
    const double sign = wa > 0.0 ? 1.0 : -1.0;
    HermiteInterpolant v(p.norm.a(), p.norm.b(), {std::log(std::abs(wa)), p.left(1) / wa},
                         {std::log(std::abs(wb)), p.right(1) / wb});
    return [v, sign](double t, int d) {
        const double e = sign * std::exp(v.eval(t));
        const double v1 = v.eval(t, 1);
        const double v2 = v.eval(t, 2);
        const double v3 = v.eval(t, 3);
        switch (d) {
            case 0:
                return e;
            case 1:
                return e * v1;
            case 2:
                return e * (v2 + v1 * v1);
            default:
                return e * (v3 + 3 * v1 * v2 + v1 * v1 * v1);
        }
    };
}

SignalSolution solve_exponential(const SignalProblem& p, ELEquation el) {
    const double a = p.norm.a();
    const double b = p.norm.b();
    SignalSolution out;
    NonlinearBVP bvp;
    bvp.residual = el.nonlinear;
    bvp.a = a;
    bvp.b = b;
    bvp.left = {p.left(0), p.left(1)};
    bvp.right = {p.right(0), p.right(1)};
    bvp.nodes = p.collocation_nodes;
    bvp.tolerance = p.tolerance;

    const double wa = p.left(0);
    const double wb = p.right(0);
    if (wa * wb < 0.0) {
        out.warnings.push_back(
            "boundary members have opposite signs; the Euler-Lagrange equation is singular where w = 0");
    }
    if (wa != 0.0) {
        // Continuation starts from the left member carried across the interval.
        const double lambda = p.left(1) / wa;
        const double c = wa;
        bvp.easy_right = {c * std::exp(lambda * (b - a)), c * lambda * std::exp(lambda * (b - a))};
        bvp.easy_solution = [c, lambda, a](double t, int d) {
            return c * std::pow(lambda, d) * std::exp(lambda * (t - a));
        };
    }

    NonlinearBVPSolution s;
    bool solved = false;
    if (wa * wb > 0.0) {
        NonlinearBVP first = bvp;
        first.init = log_hermite(p);
        first.easy_right.clear();
        try {
            s = solve_nonlinear_bvp(first);
            solved = true;
        } catch (const error& e) {
            if (e.code() != errc::not_converged) {
                throw;
            }
        }
    }
    if (!solved) {
        s = solve_nonlinear_bvp(bvp);
    }
    out.iterations = s.iterations;
    out.used_continuation = s.used_continuation;
    out.el_residual = s.residual;
    out.boundary_residual = s.boundary_residual;

    const Eigen::VectorXd w = s.w.values(0);
    const Eigen::VectorXd e = w.cwiseProduct(s.w.derivative(0, 2)) - s.w.derivative(0, 1).cwiseAbs2();
    const double h = (b - a) / (p.collocation_nodes - 1);
    out.cost = simpson_weights(p.collocation_nodes, h).dot(e.cwiseAbs2()) * p.norm.weights()[0].get_d();
    if (wa * wb > 0.0 && (w.array() * wa <= 0.0).any()) {
        out.warnings.push_back("the raccordation crosses zero although both members have the same sign");
    }
    out.w = std::move(s.w);
    out.el = std::move(el);
    return out;
}

}  // namespace

SignalSolution solve_signal_raccordation(const SignalProblem& problem) {
    validate(problem);
    ELEquation el = derive_el(problem.type, problem.norm, problem.el_form);
    if (el.kind == ELEquation::Kind::linear) {
        return solve_linear(problem, std::move(el));
    }
    return solve_exponential(problem, std::move(el));
}

}  // namespace gluskabi
