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
#include <gluskabi/nonlinear_bvp.hpp>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <cmath>
#include <optional>
#include <sstream>

namespace gluskabi {

HermiteInterpolant::HermiteInterpolant(double a, double b, const std::vector<double>& left,
                                       const std::vector<double>& right)
    : a_(a), len_(b - a) {
    if (!(a < b) || left.size() != right.size() || left.empty()) {
        throw error(errc::invalid_argument, "Hermite interpolation needs a < b and equally deep end data");
    }
    const int p = static_cast<int>(left.size());
    const int n = 2 * p;
    // Rows: d^i/ds^i of s^j at s = 0 and s = 1; data rescaled by len^i.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < p; ++i) {
        const double f = std::pow(len_, i);
        rhs(i) = left[static_cast<size_t>(i)] * f;
        rhs(p + i) = right[static_cast<size_t>(i)] * f;
        for (int j = i; j < n; ++j) {
            double fall = 1.0;
            for (int k = 0; k < i; ++k) {
                fall *= j - k;
            }
            if (j == i) {
                A(i, j) = fall;
            }
            A(p + i, j) = fall;
        }
    }
    Eigen::VectorXd c = A.fullPivLu().solve(rhs);
    c_.assign(c.data(), c.data() + c.size());
}

double HermiteInterpolant::eval(double t, int derivative) const {
    const double s = (t - a_) / len_;
    double acc = 0.0;
    for (int j = static_cast<int>(c_.size()) - 1; j >= derivative; --j) {
        double fall = 1.0;
        for (int k = 0; k < derivative; ++k) {
            fall *= j - k;
        }
        acc = acc * s + c_[static_cast<size_t>(j)] * fall;
    }
    return acc / std::pow(len_, derivative);
}

namespace {

// Unknown layout: Y = [y_0; y_1; ...; y_{m-1}], each block n nodes, m = order.
// Row layout: block k < m - 1 holds D1 y_k - y_{k+1}; block m - 1 holds the boundary
// rows (first p and last p nodes) and r at the interior nodes.
struct Collocation {
    int order;
    int p;
    int n;
    Eigen::SparseMatrix<double> D1;

    Collocation(int order_, int n_, double h) : order(order_), p(order_ / 2), n(n_), D1(fd_matrix(n_, h, 1)) {}

    int size() const { return order * n; }

    // Column k holds w^(k), k = 0..order; the last from differentiating y_{order-1}.
    Eigen::MatrixXd derivatives(const Eigen::VectorXd& Y) const {
        Eigen::MatrixXd d(n, order + 1);
        for (int k = 0; k < order; ++k) {
            d.col(k) = Y.segment(k * n, n);
        }
        d.col(order) = D1 * Y.segment((order - 1) * n, n);
        return d;
    }
};

struct Evaluation {
    Eigen::VectorXd F;      // raw residual rows
    Eigen::VectorXd sigma;  // row scales
    double residual = 0.0;  // max interior |r| / scale
    double boundary = 0.0;  // max |BC mismatch|
    double chain = 0.0;     // max |D1 y_k - y_{k+1}| / sigma
};

Evaluation evaluate(const Collocation& col, const JetResidual& r, const Eigen::VectorXd& Y,
                    const std::vector<double>& left, const std::vector<double>& right) {
    const int n = col.n;
    const int last = (col.order - 1) * n;
    Evaluation e;
    e.F.resize(col.size());
    e.sigma.resize(col.size());
    for (int k = 0; k + 1 < col.order; ++k) {
        Eigen::VectorXd next = Y.segment((k + 1) * n, n);
        e.F.segment(k * n, n) = col.D1 * Y.segment(k * n, n) - next;
        const double s = std::max(1.0, next.cwiseAbs().maxCoeff());
        e.sigma.segment(k * n, n).setConstant(s);
        e.chain = std::max(e.chain, e.F.segment(k * n, n).cwiseAbs().maxCoeff() / s);
    }
    Eigen::MatrixXd d = col.derivatives(Y);
    for (int i = 0; i < col.p; ++i) {
        const size_t si = static_cast<size_t>(i);
        e.F(last + i) = d(0, i) - left[si];
        e.F(last + n - col.p + i) = d(n - 1, i) - right[si];
        e.sigma(last + i) = std::max(1.0, std::abs(left[si]));
        e.sigma(last + n - col.p + i) = std::max(1.0, std::abs(right[si]));
        e.boundary = std::max({e.boundary, std::abs(e.F(last + i)), std::abs(e.F(last + n - col.p + i))});
    }
    for (int j = col.p; j < n - col.p; ++j) {
        Eigen::VectorXd jet = d.row(j).transpose();
        e.F(last + j) = r.value(jet);
        e.sigma(last + j) = r.scale ? std::max(r.scale(jet), 1e-300) : 1.0;
        e.residual = std::max(e.residual, std::abs(e.F(last + j)) / e.sigma(last + j));
    }
    return e;
}

Eigen::SparseMatrix<double> jacobian(const Collocation& col, const JetResidual& r, const Eigen::VectorXd& Y) {
    const int n = col.n;
    const int m = col.order;
    const int last = (m - 1) * n;
    Eigen::MatrixXd d = col.derivatives(Y);
    std::vector<Eigen::Triplet<double>> trips;
    for (int c = 0; c < col.D1.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(col.D1, c); it; ++it) {
            for (int k = 0; k + 1 < m; ++k) {
                trips.emplace_back(k * n + static_cast<int>(it.row()), k * n + c, it.value());
            }
        }
    }
    for (int k = 0; k + 1 < m; ++k) {
        for (int j = 0; j < n; ++j) {
            trips.emplace_back(k * n + j, (k + 1) * n + j, -1.0);
        }
    }
    for (int i = 0; i < col.p; ++i) {
        trips.emplace_back(last + i, i * n, 1.0);
        trips.emplace_back(last + n - col.p + i, i * n + n - 1, 1.0);
    }
    Eigen::MatrixXd g(n, m + 1);
    for (int j = col.p; j < n - col.p; ++j) {
        g.row(j) = r.gradient(d.row(j).transpose()).transpose();
        for (int k = 0; k < m; ++k) {
            trips.emplace_back(last + j, k * n + j, g(j, k));
        }
    }
    for (int c = 0; c < col.D1.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(col.D1, c); it; ++it) {
            const int row = static_cast<int>(it.row());
            if (row >= col.p && row < n - col.p) {
                trips.emplace_back(last + row, last + c, g(row, m) * it.value());
            }
        }
    }
    Eigen::SparseMatrix<double> J(col.size(), col.size());
    J.setFromTriplets(trips.begin(), trips.end());
    return J;
}

struct NewtonResult {
    Eigen::VectorXd Y;
    Evaluation eval;
    int iterations = 0;
    bool converged = false;
};

bool done(const Evaluation& e, const std::vector<double>& left, const std::vector<double>& right, double tol) {
    double bc_scale = 1.0;
    for (double v : left) {
        bc_scale = std::max(bc_scale, std::abs(v));
    }
    for (double v : right) {
        bc_scale = std::max(bc_scale, std::abs(v));
    }
    return e.residual <= tol && e.boundary <= tol * bc_scale && e.chain <= tol;
}

NewtonResult newton(const Collocation& col, const NonlinearBVP& pb, Eigen::VectorXd Y, const std::vector<double>& left,
                    const std::vector<double>& right) {
    NewtonResult out;
    Evaluation e = evaluate(col, pb.residual, Y, left, right);
    for (int it = 0; it < pb.max_iterations; ++it) {
        if (!e.F.allFinite()) {
            break;
        }
        if (done(e, left, right, pb.tolerance)) {
            out.converged = true;
            break;
        }
        Eigen::SparseMatrix<double> J = jacobian(col, pb.residual, Y);
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success) {
            break;
        }
        Eigen::VectorXd step = lu.solve(-e.F);
        if (lu.info() != Eigen::Success || !step.allFinite()) {
            break;
        }
        // Armijo on the row-scaled merit with the scales frozen at the current iterate.
        const Eigen::VectorXd sigma = e.sigma;
        const double phi0 = e.F.cwiseQuotient(sigma).squaredNorm();
        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            Eigen::VectorXd trial = Y + alpha * step;
            Evaluation et = evaluate(col, pb.residual, trial, left, right);
            const double phi = et.F.cwiseQuotient(sigma).squaredNorm();
            if (std::isfinite(phi) && phi <= (1.0 - 2e-4 * alpha) * phi0) {
                Y = std::move(trial);
                e = std::move(et);
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        ++out.iterations;
        if (!accepted) {
            break;
        }
    }
    if (!out.converged) {
        out.converged = done(e, left, right, pb.tolerance);
    }
    out.Y = std::move(Y);
    out.eval = std::move(e);
    return out;
}

}  // namespace

NonlinearBVPSolution solve_nonlinear_bvp(const NonlinearBVP& pb) {
    const JetResidual& r = pb.residual;
    if (r.order < 2 || r.order % 2 != 0 || !r.value || !r.gradient) {
        throw error(errc::invalid_argument, "nonlinear BVP needs an even-order residual with value and gradient");
    }
    const int p = r.order / 2;
    if (static_cast<int>(pb.left.size()) != p || static_cast<int>(pb.right.size()) != p) {
        std::ostringstream os;
        os << "an order-" << r.order << " equation takes " << p << " conditions at each end";
        throw error(errc::invalid_argument, os.str());
    }
    if (!(pb.a < pb.b)) {
        throw error(errc::invalid_argument, "BVP interval needs a < b");
    }
    if (pb.nodes < r.order + 4 + 2 * p) {
        throw error(errc::invalid_argument, "collocation grid too coarse for the equation order");
    }
    const std::vector<double> grid = uniform_grid(pb.a, pb.b, pb.nodes);
    const double h = (pb.b - pb.a) / (pb.nodes - 1);
    Collocation col(r.order, pb.nodes, h);

    auto sample = [&](const std::function<double(double, int)>& f) {
        Eigen::VectorXd Y(col.size());
        for (int k = 0; k < r.order; ++k) {
            for (int i = 0; i < pb.nodes; ++i) {
                Y(k * pb.nodes + i) = f(grid[static_cast<size_t>(i)], k);
            }
        }
        return Y;
    };

    Eigen::VectorXd Y0;
    if (pb.init) {
        Y0 = sample(pb.init);
    } else {
        HermiteInterpolant herm(pb.a, pb.b, pb.left, pb.right);
        Y0 = sample([&](double t, int d) { return herm.eval(t, d); });
    }

    NewtonResult res = newton(col, pb, Y0, pb.left, pb.right);
    int total = res.iterations;
    bool continued = false;
    if (!res.converged && pb.easy_solution && !pb.easy_right.empty() && pb.continuation_steps > 0) {
        continued = true;
        NewtonResult step{sample(pb.easy_solution), {}, 0, true};
        for (int s = 1; s <= pb.continuation_steps && step.converged; ++s) {
            const double theta = static_cast<double>(s) / pb.continuation_steps;
            std::vector<double> right(static_cast<size_t>(p));
            for (int i = 0; i < p; ++i) {
                right[static_cast<size_t>(i)] = (1 - theta) * pb.easy_right[static_cast<size_t>(i)] + theta * pb.right[static_cast<size_t>(i)];
            }
            step = newton(col, pb, step.Y, pb.left, right);
            total += step.iterations;
        }
        if (step.converged) {
            res = std::move(step);
        }
    }
    if (!res.converged) {
        std::ostringstream os;
        os << "nonlinear BVP did not converge after " << total << " Newton iterations"
           << (continued ? " and continuation" : "") << "; last scaled residual " << res.eval.residual
           << ", boundary mismatch " << res.eval.boundary << ", derivative chain " << res.eval.chain;
        throw error(errc::not_converged, os.str());
    }

    NonlinearBVPSolution sol;
    Eigen::MatrixXd d = col.derivatives(res.Y);
    std::vector<Eigen::VectorXd> derivs;
    for (int k = 0; k <= r.order; ++k) {
        derivs.push_back(d.col(k));
    }
    sol.w = Trajectory::from_samples(grid, {"w"}, {derivs});
    sol.iterations = total;
    sol.residual = res.eval.residual;
    sol.boundary_residual = res.eval.boundary;
    sol.used_continuation = continued;
    return sol;
}

}  // namespace gluskabi
