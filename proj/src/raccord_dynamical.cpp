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
#include <gluskabi/raccord_dynamical.hpp>
#include <gluskabi/raccord_signal.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gluskabi {

namespace {

const SobolevNorm& active_norm(const DynamicalProblem& p) { return p.qy.is_zero() ? p.qu : p.qy; }

PolyMatrix weight_operator(const Polynomial& op, const SobolevNorm& norm, size_t n) {
    if (norm.is_zero()) {
        return PolyMatrix::zero(n, n);
    }
    return scalar_extension(op.reflected() * norm.q_poly() * op, n);
}

std::vector<std::string> names(const std::string& base, size_t n) {
    if (n == 1) {
        return {base};
    }
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) {
        out.push_back(base + std::to_string(i + 1));
    }
    return out;
}

// Coefficients of xi^shift * p, ascending, negated when asked.
std::vector<double> shifted(const Polynomial& p, int shift, double sign) {
    std::vector<double> out(static_cast<size_t>(shift), 0.0);
    for (double c : p.to_double()) {
        out.push_back(sign * c);
    }
    if (p.is_zero()) {
        out.clear();
    }
    return out;
}

// Row r of M(D) applied to the jet columns, with the magnitude of the terms.
std::pair<double, double> apply_row(const PolyMatrix& M, size_t r, const Jet& jet) {
    double value = 0.0;
    double terms = 0.0;
    for (size_t c = 0; c < M.cols(); ++c) {
        const auto coeffs = M(r, c).to_double();
        for (size_t i = 0; i < coeffs.size(); ++i) {
            const double v = coeffs[i] * jet(static_cast<int>(i), static_cast<int>(c));
            value += v;
            terms += std::abs(v);
        }
    }
    return {value, terms};
}

}  // namespace

double dynamical_interval_start(const DynamicalProblem& p) { return active_norm(p).a(); }
double dynamical_interval_end(const DynamicalProblem& p) { return active_norm(p).b(); }

void validate_structure(const DynamicalProblem& p) {
    const size_t g = p.P.rows();
    if (!p.P.is_square() || p.N.rows() != g) {
        throw error(errc::dimension_mismatch, "P must be g x g and N must have g rows");
    }
    if (!p.type.is_linear()) {
        throw error(errc::unsupported, "dynamical raccordation needs a linear type");
    }
    if (p.qu.is_zero() && p.qy.is_zero()) {
        throw error(errc::invalid_argument, "at least one of the input and output norms must be nonzero");
    }
    if (p.qu.a() != p.qy.a() || p.qu.b() != p.qy.b()) {
        throw error(errc::invalid_argument, "input and output norms must share the interval");
    }
    if (!(p.qu.a() < p.qu.b())) {
        throw error(errc::invalid_argument, "dynamical problem needs a < b");
    }
    if (p.P.det().is_zero()) {
        throw error(errc::singular, "det P vanishes identically");
    }
    if (!is_proper(p.P, p.N)) {
        throw error(errc::invalid_argument, "P^-1 N is not proper");
    }
    if (!controllability_check(p.P, p.N)) {
        throw error(errc::not_coprime, "P and N are not left coprime: the system is not controllable");
    }
    if (p.grid < 3) {
        throw error(errc::invalid_argument, "output grid needs at least three points");
    }
}

void validate(const DynamicalProblem& p) {
    validate_structure(p);
    const int m = static_cast<int>(p.N.cols());
    const int g = static_cast<int>(p.P.rows());
    const double a = dynamical_interval_start(p);
    const double b = dynamical_interval_end(p);
    const int dyn_depth = std::max(p.P.max_degree(), p.N.max_degree());
    const int depth = std::max(dyn_depth, p.type.required_order());
    const std::pair<const Jet*, const Jet*> ends[] = {{&p.u_left, &p.y_left}, {&p.u_right, &p.y_right}};
    for (int side = 0; side < 2; ++side) {
        const Jet& u = *ends[side].first;
        const Jet& y = *ends[side].second;
        if (u.components() != m || y.components() != g) {
            throw error(errc::dimension_mismatch, "boundary jets need one column per input and per output");
        }
        if (u.depth() < depth || y.depth() < depth) {
            std::ostringstream os;
            os << "boundary jets need derivatives through order " << depth;
            throw error(errc::invalid_argument, os.str());
        }
        const double t = side == 0 ? a : b;
        if (u.t != t || y.t != t) {
            throw error(errc::invalid_argument, "boundary jets must sit at the interval ends");
        }
        for (const Jet* jet : {&u, &y}) {
            const double defect = membership_defect(p.type, *jet);
            if (!(defect <= p.tolerance)) {
                std::ostringstream os;
                os << "boundary jet at t = " << t << " is not a member of the type (relative residual " << defect << ")";
                throw error(errc::inconsistent, os.str());
            }
        }
        for (size_t r = 0; r < static_cast<size_t>(g); ++r) {
            auto [py, py_terms] = apply_row(p.P, r, y);
            auto [nu, nu_terms] = apply_row(p.N, r, u);
            const double defect = std::abs(py - nu) / std::max({1.0, py_terms, nu_terms});
            if (!(defect <= p.tolerance)) {
                std::ostringstream os;
                os << "boundary jets at t = " << t << " violate the dynamics (relative residual " << defect << ")";
                throw error(errc::inconsistent, os.str());
            }
        }
    }
}

EtaSystem build_eta_system(const DynamicalProblem& p) {
    validate_structure(p);
    const size_t g = p.P.rows();
    const size_t m = p.N.cols();
    EtaSystem out;
    out.completion = unimodular_completion(p.N, p.P, p.completion);
    const Polynomial& op = p.type.op_poly();
    out.X = weight_operator(op, p.qu, m);
    out.Z = weight_operator(op, p.qy, g);
    const auto& U12 = out.completion.U12;
    const auto& U22 = out.completion.U22;
    out.eta_poly = U12.adjoint() * out.X * U12 + U22.adjoint() * out.Z * U22;
    out.determinant = out.eta_poly.det();
    if (out.determinant.is_zero()) {
        throw error(errc::singular, "the eta operator is singular");
    }
    out.order = out.determinant.degree();
    return out;
}

DynamicalSolution solve_dynamical_raccordation(const DynamicalProblem& p) {
    validate(p);
    DynamicalSolution out;
    out.eta = build_eta_system(p);
    const size_t g = p.P.rows();
    const size_t m = p.N.cols();
    const double a = dynamical_interval_start(p);
    const double b = dynamical_interval_end(p);
    const auto& U12 = out.eta.completion.U12;
    const auto& U22 = out.eta.completion.U22;

    // Only signals that carry a norm are matched: the other one follows from the
    // dynamics, and pinning it as well would over-determine the boundary system.
    const size_t active = (p.qu.is_zero() ? 0 : m) + (p.qy.is_zero() ? 0 : g);
    const int r = out.eta.order;
    int d = 0;
    while (2 * d * static_cast<int>(active) < r) {
        ++d;
    }
    out.derivative_conditions = d;
    if (d > 0 && (p.u_left.depth() < d - 1 || p.y_left.depth() < d - 1 || p.u_right.depth() < d - 1 ||
                  p.y_right.depth() < d - 1)) {
        std::ostringstream os;
        os << "boundary jets need derivatives through order " << d - 1;
        throw error(errc::invalid_argument, os.str());
    }

    LinearBVP bvp;
    bvp.ode = out.eta.eta_poly;
    bvp.a = a;
    bvp.b = b;
    bvp.tolerance = p.tolerance;
    auto add = [&](const PolyMatrix& map, size_t row, double sign, double t, int order, double value) {
        BoundaryCondition bc;
        bc.t = t;
        bc.value = value;
        for (size_t j = 0; j < m; ++j) {
            bc.ops.push_back(shifted(map(row, j), order, sign));
        }
        bvp.conditions.push_back(std::move(bc));
    };
    for (int i = 0; i < d; ++i) {
        if (!p.qu.is_zero()) {
            for (size_t c = 0; c < m; ++c) {
                add(U12, c, -1.0, a, i, p.u_left(i, static_cast<int>(c)));
                add(U12, c, -1.0, b, i, p.u_right(i, static_cast<int>(c)));
            }
        }
        if (!p.qy.is_zero()) {
            for (size_t c = 0; c < g; ++c) {
                add(U22, c, 1.0, a, i, p.y_left(i, static_cast<int>(c)));
                add(U22, c, 1.0, b, i, p.y_right(i, static_cast<int>(c)));
            }
        }
    }
    out.condition_count = static_cast<int>(bvp.conditions.size());
    LinearBVPSolution eta = solve_linear_bvp(bvp);
    out.roots = eta.roots;
    out.condition_number = eta.condition_number;
    out.boundary_residual = eta.boundary_residual;
    out.eta_residual = eta.ode_residual;

    auto image = [&](const PolyMatrix& map, size_t row, double sign) {
        ModalExpansion acc = ModalExpansion::zero(eta.components.front().groups());
        for (size_t j = 0; j < m; ++j) {
            acc = acc + sign * eta.components[j].apply(map(row, j).to_double());
        }
        return acc;
    };
    for (size_t c = 0; c < m; ++c) {
        out.u_closed.push_back(image(U12, c, -1.0));
    }
    for (size_t c = 0; c < g; ++c) {
        out.y_closed.push_back(image(U22, c, 1.0));
    }

    const std::vector<double> grid = uniform_grid(a, b, p.grid);
    double scale = 1e-300;
    for (const auto* set : {&out.u_closed, &out.y_closed}) {
        for (const auto& e : *set) {
            scale = std::max(scale, e.coefficient_scale());
        }
    }
    for (size_t row = 0; row < g; ++row) {
        ModalExpansion defect = ModalExpansion::zero(eta.components.front().groups());
        for (size_t c = 0; c < g; ++c) {
            defect = defect + out.y_closed[c].apply(p.P(row, c).to_double());
        }
        for (size_t c = 0; c < m; ++c) {
            defect = defect - out.u_closed[c].apply(p.N(row, c).to_double());
        }
        out.dynamics_coefficient_residual = std::max(out.dynamics_coefficient_residual, defect.coefficient_scale() / scale);
        for (double t : grid) {
            out.dynamics_residual = std::max(out.dynamics_residual, std::abs(defect.eval(t)));
        }
    }

    const auto op = p.type.op_poly().to_double();
    auto cost = [&](const std::vector<ModalExpansion>& signals, const SobolevNorm& norm) {
        if (norm.is_zero()) {
            return 0.0;
        }
        std::vector<ModalExpansion> errors;
        for (const auto& s : signals) {
            errors.push_back(s.apply(op));
        }
        return sobolev_cost(errors, norm, p.grid);
    };
    out.cost = cost(out.u_closed, p.qu) + cost(out.y_closed, p.qy);
    out.u = Trajectory::from_closed_form(grid, names("u", m), out.u_closed);
    out.y = Trajectory::from_closed_form(grid, names("y", g), out.y_closed);
    return out;
}

}  // namespace gluskabi
