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

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <sstream>

namespace gluskabi {

namespace {

using cd = std::complex<double>;

double falling(int n, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        out *= n - i;
    }
    return out;
}

std::vector<cd> taylor_at(const Polynomial& p, cd x0) {
    std::vector<cd> c;
    for (double v : p.to_double()) {
        c.emplace_back(v);
    }
    const size_t n = c.size();
    for (size_t k = 0; k + 1 < n; ++k) {
        for (size_t i = n - 1; i > k; --i) {
            c[i - 1] += x0 * c[i];
        }
    }
    return c;
}

// Columns span the coefficient vectors (indexed c * mult + j) of solutions of
// ode(D) x = 0 that live on this mode group.
Eigen::MatrixXcd group_null_basis(const PolyMatrix& ode, const ModeGroup& group) {
    const int comps = static_cast<int>(ode.cols());
    const int mult = group.multiplicity;
    const int n = comps * mult;
    if (comps == 1) {
        return Eigen::MatrixXcd::Identity(n, n);
    }
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 0; r < comps; ++r) {
        for (int c = 0; c < comps; ++c) {
            auto taylor = taylor_at(ode(static_cast<size_t>(r), static_cast<size_t>(c)), group.root);
            for (int p = 0; p < mult; ++p) {
                for (int j = p; j < mult; ++j) {
                    const size_t m = static_cast<size_t>(j - p);
                    if (m < taylor.size()) {
                        M(r * mult + p, c * mult + j) = taylor[m] * falling(j, j - p);
                    }
                }
            }
        }
    }
    if (group.is_real()) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M.real(), Eigen::ComputeFullV);
        return svd.matrixV().rightCols(mult).cast<cd>();
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(mult);
}

}  // namespace

BoundaryCondition derivative_condition(double t, int order, double value) {
    std::vector<double> op(static_cast<size_t>(order) + 1, 0.0);
    op.back() = 1.0;
    return {t, {op}, value};
}

LinearBVPSolution solve_linear_bvp(const LinearBVP& problem) {
    const PolyMatrix& ode = problem.ode;
    if (!ode.is_square()) {
        throw error(errc::dimension_mismatch, "ODE operator must be square");
    }
    if (!(problem.a < problem.b)) {
        throw error(errc::invalid_argument, "BVP interval needs a < b");
    }
    Polynomial det = ode.det();
    if (det.is_zero()) {
        throw error(errc::singular, "ODE operator has identically zero determinant");
    }
    const int comps = static_cast<int>(ode.cols());
    for (const auto& bc : problem.conditions) {
        if (static_cast<int>(bc.ops.size()) != comps) {
            throw error(errc::dimension_mismatch, "boundary functional needs one operator per component");
        }
    }

    LinearBVPSolution sol;
    sol.roots = char_roots(det);
    sol.dimension = det.degree();
    std::vector<ModeGroup> groups = mode_groups(sol.roots, problem.a, problem.b);

    std::vector<Eigen::MatrixXcd> nulls;
    int unknowns = 0;
    for (const auto& g : groups) {
        nulls.push_back(group_null_basis(ode, g));
        unknowns += static_cast<int>(nulls.back().cols()) * (g.is_real() ? 1 : 2);
    }

    const int rows = static_cast<int>(problem.conditions.size());
    if (unknowns > 0 && rows < unknowns) {
        std::ostringstream os;
        os << "boundary system under-determined: " << rows << " conditions for a " << unknowns
           << "-dimensional solution space";
        throw error(errc::singular, os.str());
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, unknowns);
    Eigen::VectorXd rhs(rows);
    for (int r = 0; r < rows; ++r) {
        const auto& bc = problem.conditions[static_cast<size_t>(r)];
        int col = 0;
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            const ModeGroup& g = groups[gi];
            const int mult = g.multiplicity;
            // Functional applied to each basis function s^j e^{root s} of each component.
            std::vector<cd> phi(static_cast<size_t>(comps * mult), 0.0);
            for (int c = 0; c < comps; ++c) {
                const auto& op = bc.ops[static_cast<size_t>(c)];
                for (int j = 0; j < mult; ++j) {
                    cd acc = 0.0;
                    for (size_t d = 0; d < op.size(); ++d) {
                        if (op[d] != 0.0) {
                            acc += op[d] * mode_derivative(g, j, bc.t, static_cast<int>(d));
                        }
                    }
                    phi[static_cast<size_t>(c * mult + j)] = acc;
                }
            }
            const Eigen::MatrixXcd& V = nulls[gi];
            for (Eigen::Index k = 0; k < V.cols(); ++k) {
                cd w = 0.0;
                for (Eigen::Index i = 0; i < V.rows(); ++i) {
                    w += V(i, k) * phi[static_cast<size_t>(i)];
                }
                if (g.is_real()) {
                    A(r, col++) = w.real();
                } else {
                    A(r, col++) = w.real();
                    A(r, col++) = -w.imag();
                }
            }
        }
        rhs(r) = bc.value;
        const double scale = A.row(r).cwiseAbs().maxCoeff();
        if (scale > 0.0) {
            A.row(r) /= scale;
            rhs(r) /= scale;
        }
    }

    Eigen::VectorXd x = Eigen::VectorXd::Zero(unknowns);
    if (unknowns > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& s = svd.singularValues();
        const double smax = s(0);
        int rank = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            if (s(i) > problem.rank_tolerance * smax) {
                ++rank;
            }
        }
        sol.rank = rank;
        sol.condition_number = s(s.size() - 1) > 0.0 ? smax / s(s.size() - 1) : INFINITY;
        if (rank < unknowns) {
            std::ostringstream os;
            os << "boundary system is rank deficient (rank " << rank << " of " << unknowns
               << "): the boundary data do not determine a unique solution";
            throw error(errc::singular, os.str());
        }
        svd.setThreshold(problem.rank_tolerance);
        x = svd.solve(rhs);
        // One step of iterative refinement recovers digits lost to the basis scaling.
        x += svd.solve(rhs - A * x);
        sol.boundary_residual = (A * x - rhs).cwiseAbs().maxCoeff();
        const double allowed = problem.tolerance * std::max(1.0, rhs.cwiseAbs().maxCoeff());
        if (sol.boundary_residual > allowed) {
            std::ostringstream os;
            os << "boundary conditions are inconsistent: least-squares residual " << sol.boundary_residual
               << " exceeds " << allowed;
            throw error(errc::inconsistent, os.str());
        }
    }

    // Assemble each component's expansion from the null-space coordinates.
    for (int c = 0; c < comps; ++c) {
        std::vector<std::vector<cd>> coeffs;
        int col = 0;
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            const ModeGroup& g = groups[gi];
            const int mult = g.multiplicity;
            const Eigen::MatrixXcd& V = nulls[gi];
            std::vector<cd> cg(static_cast<size_t>(mult), 0.0);
            for (Eigen::Index k = 0; k < V.cols(); ++k) {
                cd z = g.is_real() ? cd(x(col), 0.0) : cd(x(col), x(col + 1));
                col += g.is_real() ? 1 : 2;
                for (int j = 0; j < mult; ++j) {
                    cg[static_cast<size_t>(j)] += z * V(c * mult + j, k);
                }
            }
            coeffs.push_back(std::move(cg));
        }
        sol.components.emplace_back(groups, std::move(coeffs));
    }

    // Residual of the differential equation on a check grid.
    double scale = 1e-300;
    for (const auto& e : sol.components) {
        scale = std::max(scale, e.coefficient_scale());
    }
    for (int r = 0; r < comps; ++r) {
        ModalExpansion acc = ModalExpansion::zero(groups);
        for (int c = 0; c < comps; ++c) {
            acc = acc + sol.components[static_cast<size_t>(c)].apply(ode(static_cast<size_t>(r), static_cast<size_t>(c)).to_double());
        }
        for (double t : uniform_grid(problem.a, problem.b, 101)) {
            sol.ode_residual = std::max(sol.ode_residual, std::abs(acc.eval(t)) / scale);
        }
    }
    return sol;
}

Trajectory sample(const LinearBVPSolution& solution, const std::vector<double>& grid, std::vector<std::string> names) {
    return Trajectory::from_closed_form(grid, std::move(names), solution.components);
}

}  // namespace gluskabi
