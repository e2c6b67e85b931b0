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

#include <gluskabi/bspline.hpp>
#include <gluskabi/direct_minimize.hpp>
#include <gluskabi/error.hpp>
#include <gluskabi/finite_difference.hpp>
#include <gluskabi/nonlinear_bvp.hpp>

#include <Eigen/SparseLU>

#include <cmath>
#include <functional>
#include <sstream>

namespace gluskabi {

namespace {

using Sparse = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;

// Ritz discretization: w = sum_j c_j B_j with clamped B-splines, derivatives exact,
// integrals by Gauss quadrature. Nodal FD is deliberately avoided here: central
// odd-order stencils annihilate the sawtooth (-1)^j, which lets a nodal minimizer
// undercut the true minimum.
class Ritz {
   public:
    // Linear minimizers are smooth, so a modest element count already resolves them and
    // keeps high-order stiffness matrices well inside double precision.
    static constexpr int kElements = 128;

    Ritz(double a, double b, int points, int max_order, int elements = kElements)
        : basis_(a, b, elements, std::max(3, max_order + 1)), grid_(uniform_grid(a, b, points)) {
        basis_.quadrature(basis_.degree() + 2, quad_, weights_);
    }

    int size() const { return basis_.size(); }
    const Eigen::VectorXd& weights() const { return weights_; }
    const std::vector<double>& grid() const { return grid_; }

    // Basis derivatives of the given order at the quadrature points.
    const Sparse& E(int order) {
        while (static_cast<int>(mats_.size()) <= order) {
            mats_.push_back(basis_.matrix(quad_, static_cast<int>(mats_.size())));
        }
        return mats_[static_cast<size_t>(order)];
    }

    // poly(D) D^extra at the quadrature points.
    Sparse apply(const Polynomial& poly, int extra = 0) {
        Sparse out(static_cast<int>(quad_.size()), size());
        for (int k = 0; k <= poly.degree(); ++k) {
            const double c = poly.coeff(k).get_d();
            if (c != 0.0) {
                out += c * E(k + extra);
            }
        }
        return out;
    }

    Eigen::RowVectorXd end_row(bool right, int order) const {
        Sparse m = basis_.matrix({right ? basis_.b() : basis_.a()}, order);
        return Eigen::RowVectorXd(Eigen::MatrixXd(m));
    }

    Eigen::VectorXd sample(const Eigen::VectorXd& c) const { return basis_.matrix(grid_, 0) * c; }

    // Weighted least-squares fit of f at the quadrature points.
    Eigen::VectorXd fit(const std::function<double(double)>& f) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(quad_.size()));
        for (size_t i = 0; i < quad_.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = f(quad_[i]);
        }
        const Sparse& E0 = E(0);
        Sparse M = E0.transpose() * weights_.asDiagonal() * E0;
        Eigen::SparseLU<Sparse> lu(M);
        return lu.solve(E0.transpose() * weights_.cwiseProduct(v));
    }

   private:
    BSplineBasis basis_;
    std::vector<double> grid_;
    std::vector<double> quad_;
    Eigen::VectorXd weights_;
    std::vector<Sparse> mats_;
};

void add_block(Triplets& t, const Sparse& m, int r0, int c0, double scale = 1.0) {
    for (int c = 0; c < m.outerSize(); ++c) {
        for (Sparse::InnerIterator it(m, c); it; ++it) {
            t.emplace_back(r0 + static_cast<int>(it.row()), c0 + c, scale * it.value());
        }
    }
}

struct Pinned {
    Triplets rows;
    std::vector<double> values;
};

void pin_ends(const Ritz& ritz, int offset, const EndData& ends, Pinned& pins) {
    if (ends.left.size() != ends.right.size()) {
        throw error(errc::invalid_argument, "oracle needs the same number of conditions at both ends");
    }
    for (size_t i = 0; i < ends.left.size(); ++i) {
        for (int side = 0; side < 2; ++side) {
            Eigen::RowVectorXd row = ritz.end_row(side == 1, static_cast<int>(i));
            const int r = static_cast<int>(pins.values.size());
            for (Eigen::Index c = 0; c < row.size(); ++c) {
                if (row(c) != 0.0) {
                    pins.rows.emplace_back(r, offset + static_cast<int>(c), row(c));
                }
            }
            pins.values.push_back(side == 0 ? ends.left[i] : ends.right[i]);
        }
    }
}

Sparse pinned_matrix(const Pinned& pins, int cols) {
    Sparse C(static_cast<int>(pins.values.size()), cols);
    C.setFromTriplets(pins.rows.begin(), pins.rows.end());
    return C;
}

Eigen::VectorXd pinned_values(const Pinned& pins) {
    return Eigen::Map<const Eigen::VectorXd>(pins.values.data(), static_cast<Eigen::Index>(pins.values.size()));
}

double max_abs(const Sparse& m) {
    double out = 0.0;
    for (int k = 0; k < m.outerSize(); ++k) {
        for (Sparse::InnerIterator it(m, k); it; ++it) {
            out = std::max(out, std::abs(it.value()));
        }
    }
    return out;
}

// Solve [[H, C^T], [C, 0]] [x; lambda] = [g; d] with H scaled to unit size and the
// rows of C equilibrated.
Eigen::VectorXd solve_kkt(const Sparse& H, const Sparse& C, const Eigen::VectorXd& g, const Eigen::VectorXd& d) {
    const int n = static_cast<int>(H.rows());
    const int m = static_cast<int>(C.rows());
    double hscale = max_abs(H);
    hscale = hscale > 0.0 ? hscale : 1.0;
    Eigen::VectorXd mx = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < C.outerSize(); ++k) {
        for (Sparse::InnerIterator it(C, k); it; ++it) {
            mx(it.row()) = std::max(mx(it.row()), std::abs(it.value()));
        }
    }
    Eigen::VectorXd rs = mx.unaryExpr([](double v) { return v > 0.0 ? 1.0 / v : 1.0; });
    Triplets t;
    add_block(t, H, 0, 0, 1.0 / hscale);
    Sparse Cs = rs.asDiagonal() * C;
    add_block(t, Cs, n, 0);
    Sparse Ct = Cs.transpose();
    add_block(t, Ct, 0, n);
    Sparse K(n + m, n + m);
    K.setFromTriplets(t.begin(), t.end());
    Eigen::VectorXd rhs(n + m);
    rhs << g / hscale, rs.cwiseProduct(d);
    Eigen::SparseLU<Sparse> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success) {
        throw error(errc::singular, "oracle KKT system is singular");
    }
    Eigen::VectorXd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        throw error(errc::singular, "oracle KKT solve failed");
    }
    return x.head(n);
}

// sum_i rho_i A_i^T S A_i with A_i = D^i op(D); the A_i are kept for costing.
Sparse quadratic_form(Ritz& ritz, const Polynomial& op, const SobolevNorm& norm,
                      std::vector<std::pair<double, Sparse>>& terms) {
    Sparse H(ritz.size(), ritz.size());
    for (size_t i = 0; i < norm.weights().size(); ++i) {
        const double rho = norm.weights()[i].get_d();
        if (rho == 0.0) {
            continue;
        }
        Sparse A = ritz.apply(op, static_cast<int>(i));
        Sparse SA = ritz.weights().asDiagonal() * A;
        H += rho * Sparse(A.transpose() * SA);
        terms.emplace_back(rho, std::move(A));
    }
    return H;
}

double quadratic_cost(const std::vector<std::pair<double, Sparse>>& terms, const Eigen::VectorXd& s,
                      const Eigen::VectorXd& x) {
    double c = 0.0;
    for (const auto& [rho, A] : terms) {
        Eigen::VectorXd v = A * x;
        c += rho * s.dot(v.cwiseAbs2());
    }
    return c;
}

int end_depth(const EndData& e) { return static_cast<int>(e.left.size()); }

}  // namespace

OracleResult minimize_linear(const Polynomial& op, const SobolevNorm& norm, const EndData& ends, int points) {
    if (norm.is_zero()) {
        throw error(errc::invalid_argument, "oracle needs a nonzero norm");
    }
    if (points < 3) {
        throw error(errc::invalid_argument, "oracle grid needs at least three points");
    }
    const int order = op.degree() + std::max(norm.order(), 0);
    Ritz ritz(norm.a(), norm.b(), points, std::max(order, end_depth(ends)));
    std::vector<std::pair<double, Sparse>> terms;
    Sparse H = quadratic_form(ritz, op, norm, terms);
    Pinned pins;
    pin_ends(ritz, 0, ends, pins);
    Eigen::VectorXd c = solve_kkt(H, pinned_matrix(pins, ritz.size()), Eigen::VectorXd::Zero(ritz.size()), pinned_values(pins));
    OracleResult out;
    out.grid = ritz.grid();
    out.cost = quadratic_cost(terms, ritz.weights(), c);
    out.signals.push_back(ritz.sample(c));
    out.iterations = 1;
    return out;
}

OracleResult minimize_dynamical(const PolyMatrix& P, const PolyMatrix& N, const Polynomial& op, const SobolevNorm& qu,
                                const SobolevNorm& qy, const std::vector<EndData>& u_ends,
                                const std::vector<EndData>& y_ends, int points) {
    const int g = static_cast<int>(P.rows());
    const int m = static_cast<int>(N.cols());
    if (static_cast<int>(P.cols()) != g || static_cast<int>(N.rows()) != g) {
        throw error(errc::dimension_mismatch, "P must be g x g and N g x m");
    }
    if (static_cast<int>(u_ends.size()) != m || static_cast<int>(y_ends.size()) != g) {
        throw error(errc::dimension_mismatch, "end data needed for every input and output");
    }
    if (qu.is_zero() && qy.is_zero()) {
        throw error(errc::invalid_argument, "at least one of the input and output norms must be nonzero");
    }
    const double a = qy.is_zero() ? qu.a() : qy.a();
    const double b = qy.is_zero() ? qu.b() : qy.b();
    int order = op.degree() + std::max({qu.order(), qy.order(), 0});
    order = std::max({order, P.max_degree(), N.max_degree()});
    for (const auto& e : u_ends) {
        order = std::max(order, end_depth(e));
    }
    for (const auto& e : y_ends) {
        order = std::max(order, end_depth(e));
    }
    Ritz ritz(a, b, points, order);
    const int nb = ritz.size();
    const int total = (m + g) * nb;
    const Eigen::VectorXd& s = ritz.weights();

    std::vector<std::pair<double, Sparse>> uterms, yterms;
    Triplets ht;
    if (!qu.is_zero()) {
        Sparse Hu = quadratic_form(ritz, op, qu, uterms);
        for (int c = 0; c < m; ++c) {
            add_block(ht, Hu, c * nb, c * nb);
        }
    }
    if (!qy.is_zero()) {
        Sparse Hy = quadratic_form(ritz, op, qy, yterms);
        for (int c = 0; c < g; ++c) {
            add_block(ht, Hy, (m + c) * nb, (m + c) * nb);
        }
    }
    Sparse H(total, total);
    H.setFromTriplets(ht.begin(), ht.end());

    // The dynamics enter as a stiff penalty gamma int |P(D) y - N(D) u|^2.
    Triplets rt;
    const int nq = static_cast<int>(s.size());
    for (int r = 0; r < g; ++r) {
        for (int c = 0; c < g; ++c) {
            add_block(rt, ritz.apply(P(static_cast<size_t>(r), static_cast<size_t>(c))), r * nq, (m + c) * nb);
        }
        for (int c = 0; c < m; ++c) {
            add_block(rt, ritz.apply(N(static_cast<size_t>(r), static_cast<size_t>(c))), r * nq, c * nb, -1.0);
        }
    }
    Sparse R(g * nq, total);
    R.setFromTriplets(rt.begin(), rt.end());
    Eigen::VectorXd sg(g * nq);
    for (int r = 0; r < g; ++r) {
        sg.segment(r * nq, nq) = s;
    }
    Sparse RSR = R.transpose() * sg.asDiagonal() * R;
    const double hs = std::max(max_abs(H), 1e-300);
    const double gamma = 1e9 * hs / std::max(max_abs(RSR), 1e-300);
    Sparse K = H + gamma * RSR;

    Pinned pins;
    for (int c = 0; c < m; ++c) {
        pin_ends(ritz, c * nb, u_ends[static_cast<size_t>(c)], pins);
    }
    for (int c = 0; c < g; ++c) {
        pin_ends(ritz, (m + c) * nb, y_ends[static_cast<size_t>(c)], pins);
    }
    Eigen::VectorXd x = solve_kkt(K, pinned_matrix(pins, total), Eigen::VectorXd::Zero(total), pinned_values(pins));

    OracleResult out;
    out.grid = ritz.grid();
    for (int c = 0; c < m + g; ++c) {
        Eigen::VectorXd coeffs = x.segment(c * nb, nb);
        out.cost += quadratic_cost(c < m ? uterms : yterms, s, coeffs);
        out.signals.push_back(ritz.sample(coeffs));
    }
    out.iterations = 1;
    return out;
}

namespace {

struct ExpFamilyCost {
    Sparse E0, E1, E2;
    Eigen::VectorXd s;

    Eigen::VectorXd error(const Eigen::VectorXd& c) const {
        Eigen::VectorXd d1 = E1 * c;
        return (E0 * c).cwiseProduct(E2 * c) - d1.cwiseAbs2();
    }
    double cost(const Eigen::VectorXd& c) const { return s.dot(error(c).cwiseAbs2()); }

    // Gradient and exact Hessian of sum_q s_q e_q^2.
    void derivatives(const Eigen::VectorXd& c, Eigen::VectorXd& grad, Sparse& hess) const {
        Eigen::VectorXd d0 = E0 * c;
        Eigen::VectorXd d1 = E1 * c;
        Eigen::VectorXd d2 = E2 * c;
        Eigen::VectorXd e = d0.cwiseProduct(d2) - d1.cwiseAbs2();
        Sparse J = d2.asDiagonal() * E0;
        J += d0.asDiagonal() * E2;
        J -= 2.0 * Sparse(d1.asDiagonal() * E1);
        Eigen::VectorXd se = s.cwiseProduct(e);
        grad = 2.0 * (J.transpose() * se);
        Sparse SJ = s.asDiagonal() * J;
        Sparse X = E0.transpose() * se.asDiagonal() * E2;
        Sparse Y = E1.transpose() * se.asDiagonal() * E1;
        hess = 2.0 * (Sparse(J.transpose() * SJ) + X + Sparse(X.transpose()) - 2.0 * Y);
    }
};

OracleResult descend(const ExpFamilyCost& f, const Sparse& C, const Eigen::VectorXd& d, Eigen::VectorXd c) {
    const int n = static_cast<int>(c.size());
    OracleResult out;
    Sparse I(n, n);
    I.setIdentity();
    // Land on the constraint set first.
    c += solve_kkt(I, C, Eigen::VectorXd::Zero(n), d - C * c);
    double cost = f.cost(c);
    double mu = 0.0;
    double mu_floor = 0.0;
    out.converged = false;
    for (int it = 0; it < 300; ++it) {
        Eigen::VectorXd grad;
        Sparse hess;
        f.derivatives(c, grad, hess);
        if (it == 0) {
            mu_floor = 1e-14 * max_abs(hess);
            mu = 1e-8 * max_abs(hess);
        }
        bool accepted = false;
        double drop = 0.0;
        Eigen::VectorXd step;
        for (int tries = 0; tries < 40 && !accepted; ++tries) {
            try {
                step = solve_kkt(hess + mu * I, C, -grad, Eigen::VectorXd::Zero(C.rows()));
            } catch (const gluskabi::error&) {
                mu *= 10.0;
                continue;
            }
            const double tc = f.cost(c + step);
            if (std::isfinite(tc) && tc <= cost) {
                drop = cost - tc;
                c += step;
                cost = tc;
                mu = std::max(mu / 10.0, mu_floor);
                accepted = true;
            } else {
                mu *= 10.0;
            }
        }
        ++out.iterations;
        if (!accepted) {
            // No descent direction left at working precision.
            out.converged = true;
            break;
        }
        if (step.cwiseAbs().maxCoeff() <= 1e-11 * std::max(1.0, c.cwiseAbs().maxCoeff()) ||
            drop <= 1e-15 * std::max(cost, 1e-300)) {
            out.converged = true;
            break;
        }
    }
    out.cost = cost;
    out.signals.push_back(c);
    return out;
}

}  // namespace

OracleResult minimize_exponential_family(const EndData& ends, double a, double b, int points) {
    if (ends.left.size() != 2 || ends.right.size() != 2) {
        throw error(errc::invalid_argument, "the exponential-family oracle pins w and w' at both ends");
    }
    if (!(a < b)) {
        throw error(errc::invalid_argument, "oracle interval needs a < b");
    }
    Ritz ritz(a, b, points, 2, points - 1);
    ExpFamilyCost f{ritz.E(0), ritz.E(1), ritz.E(2), ritz.weights()};
    Pinned pins;
    pin_ends(ritz, 0, ends, pins);
    Sparse C = pinned_matrix(pins, ritz.size());
    Eigen::VectorXd d = pinned_values(pins);

    std::vector<Eigen::VectorXd> starts;
    HermiteInterpolant poly(a, b, ends.left, ends.right);
    starts.push_back(ritz.fit([&](double t) { return poly.eval(t); }));
    const double wa = ends.left[0];
    const double wb = ends.right[0];
    if (wa * wb > 0.0) {
        // Hermite data for log|w|, whose exponential never changes sign.
        const double sign = wa > 0.0 ? 1.0 : -1.0;
        HermiteInterpolant v(a, b, {std::log(std::abs(wa)), ends.left[1] / wa}, {std::log(std::abs(wb)), ends.right[1] / wb});
        starts.push_back(ritz.fit([&](double t) { return sign * std::exp(v.eval(t)); }));
    }
    OracleResult best;
    bool have = false;
    int total = 0;
    for (const auto& start : starts) {
        OracleResult r = descend(f, C, d, start);
        total += r.iterations;
        if (!have || r.cost < best.cost) {
            best = std::move(r);
            have = true;
        }
    }
    best.iterations = total;
    best.grid = ritz.grid();
    best.signals[0] = ritz.sample(best.signals[0]);
    return best;
}

}  // namespace gluskabi
