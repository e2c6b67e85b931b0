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
#include <gluskabi/error.hpp>

#include <cmath>

namespace gluskabi {

BSplineBasis::BSplineBasis(double a, double b, int elements, int degree)
    : a_(a), b_(b), elements_(elements), degree_(degree) {
    if (!(a < b) || elements < 1 || degree < 1) {
        throw error(errc::invalid_argument, "B-spline basis needs a < b, elements >= 1, degree >= 1");
    }
    for (int i = 0; i < degree; ++i) {
        knots_.push_back(a);
    }
    for (int i = 0; i <= elements; ++i) {
        knots_.push_back(i == elements ? b : a + (b - a) * i / elements);
    }
    for (int i = 0; i < degree; ++i) {
        knots_.push_back(b);
    }
}

int BSplineBasis::span(double t) const {
    if (t >= b_) {
        return elements_ + degree_ - 1;
    }
    int e = static_cast<int>(std::floor((t - a_) / (b_ - a_) * elements_));
    e = std::max(0, std::min(e, elements_ - 1));
    int s = e + degree_;
    // Guard against rounding at element boundaries.
    while (s > degree_ && t < knots_[static_cast<size_t>(s)]) {
        --s;
    }
    while (s < elements_ + degree_ - 1 && t >= knots_[static_cast<size_t>(s) + 1]) {
        ++s;
    }
    return s;
}

// Basis functions and derivatives by the standard triangular recurrence.
Eigen::MatrixXd BSplineBasis::eval(double t, int order, int& first) const {
    const int p = degree_;
    const int s = span(t);
    first = s - p;
    const auto& U = knots_;
    std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1));
    std::vector<double> left(p + 1), right(p + 1);
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = t - U[static_cast<size_t>(s + 1 - j)];
        right[j] = U[static_cast<size_t>(s + j)] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(order + 1, p + 1);
    for (int j = 0; j <= p; ++j) {
        ders(0, j) = ndu[j][p];
    }
    std::vector<std::vector<double>> A(2, std::vector<double>(p + 1));
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        A[0][0] = 1.0;
        for (int k = 1; k <= std::min(order, p); ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                A[s2][0] = A[s1][0] / ndu[pk + 1][rk];
                d = A[s2][0] * ndu[rk][pk];
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = r - 1 <= pk ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                A[s2][j] = (A[s1][j] - A[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += A[s2][j] * ndu[rk + j][pk];
            }
            if (r <= pk) {
                A[s2][k] = -A[s1][k - 1] / ndu[pk + 1][r];
                d += A[s2][k] * ndu[r][pk];
            }
            ders(k, r) = d;
            std::swap(s1, s2);
        }
    }
    double f = p;
    for (int k = 1; k <= std::min(order, p); ++k) {
        ders.row(k) *= f;
        f *= p - k;
    }
    return ders;
}

Eigen::SparseMatrix<double> BSplineBasis::matrix(const std::vector<double>& points, int order) const {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(points.size() * static_cast<size_t>(degree_ + 1));
    for (size_t i = 0; i < points.size(); ++i) {
        int first = 0;
        Eigen::MatrixXd d = eval(points[i], order, first);
        for (int j = 0; j <= degree_; ++j) {
            if (d(order, j) != 0.0) {
                t.emplace_back(static_cast<int>(i), first + j, d(order, j));
            }
        }
    }
    Eigen::SparseMatrix<double> m(static_cast<int>(points.size()), size());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

void BSplineBasis::quadrature(int per_element, std::vector<double>& points, Eigen::VectorXd& weights) const {
    // Gauss-Legendre nodes on [-1, 1] by Newton on P_n.
    std::vector<double> x(static_cast<size_t>(per_element)), w(static_cast<size_t>(per_element));
    const int n = per_element;
    for (int i = 0; i < n; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            const double dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                double q0 = 1.0, q1 = 0.0;
                for (int k = 1; k <= n; ++k) {
                    const double q2 = q1;
                    q1 = q0;
                    q0 = ((2.0 * k - 1.0) * z * q1 - (k - 1.0) * q2) / k;
                }
                const double dq = n * (z * q0 - q1) / (z * z - 1.0);
                x[static_cast<size_t>(i)] = z;
                w[static_cast<size_t>(i)] = 2.0 / ((1.0 - z * z) * dq * dq);
                break;
            }
        }
    }
    points.clear();
    weights.resize(static_cast<Eigen::Index>(elements_) * n);
    const double h = (b_ - a_) / elements_;
    for (int e = 0; e < elements_; ++e) {
        const double lo = a_ + h * e;
        for (int i = 0; i < n; ++i) {
            points.push_back(lo + 0.5 * h * (x[static_cast<size_t>(i)] + 1.0));
            weights(e * n + i) = 0.5 * h * w[static_cast<size_t>(i)];
        }
    }
}

}  // namespace gluskabi
