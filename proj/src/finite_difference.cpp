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

#include <algorithm>
#include <cmath>

namespace gluskabi {

std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int max_order) {
    const int n = static_cast<int>(x.size());
    if (n == 0 || max_order < 0 || max_order >= n) {
        throw error(errc::invalid_argument, "stencil too small for the requested derivative order");
    }
    std::vector<std::vector<double>> c(static_cast<size_t>(max_order) + 1, std::vector<double>(static_cast<size_t>(n), 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[static_cast<size_t>(i)] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

Eigen::SparseMatrix<double> fd_matrix(int n, double h, int order) {
    if (order < 0) {
        throw error(errc::invalid_argument, "negative derivative order");
    }
    Eigen::SparseMatrix<double> m(n, n);
    if (order == 0) {
        m.setIdentity();
        return m;
    }
    const int width = order + 4;
    if (n < width) {
        throw error(errc::invalid_argument, "grid too coarse for the finite-difference stencil");
    }
    // Stencil weights depend only on the offset of the row within its window.
    std::vector<std::vector<double>> cache(static_cast<size_t>(width));
    std::vector<double> local(static_cast<size_t>(width));
    for (int k = 0; k < width; ++k) {
        local[static_cast<size_t>(k)] = k;
    }
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(n) * static_cast<size_t>(width));
    const double scale = std::pow(h, -order);
    for (int i = 0; i < n; ++i) {
        const int start = std::clamp(i - width / 2, 0, n - width);
        const int offset = i - start;
        auto& w = cache[static_cast<size_t>(offset)];
        if (w.empty()) {
            w = fornberg_weights(offset, local, order)[static_cast<size_t>(order)];
        }
        for (int k = 0; k < width; ++k) {
            trips.emplace_back(i, start + k, w[static_cast<size_t>(k)] * scale);
        }
    }
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

Eigen::VectorXd simpson_weights(int n, double h) {
    if (n < 2) {
        throw error(errc::invalid_argument, "quadrature needs at least two points");
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    if (n == 2) {
        w << 0.5 * h, 0.5 * h;
        return w;
    }
    int simpson_end = n - 1;
    if ((n - 1) % 2 == 1) {
        // Odd panel count: Simpson on the first n-4 panels, 3/8 rule on the last three.
        simpson_end = n - 4;
        const double k = 3.0 * h / 8.0;
        w(n - 4) += k;
        w(n - 3) += 3 * k;
        w(n - 2) += 3 * k;
        w(n - 1) += k;
    }
    for (int i = 0; i + 2 <= simpson_end; i += 2) {
        w(i) += h / 3.0;
        w(i + 1) += 4.0 * h / 3.0;
        w(i + 2) += h / 3.0;
    }
    return w;
}

std::vector<double> uniform_grid(double a, double b, int n) {
    if (n < 2 || !(a < b)) {
        throw error(errc::invalid_argument, "uniform grid needs a < b and at least two points");
    }
    std::vector<double> g(static_cast<size_t>(n));
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        g[static_cast<size_t>(i)] = a + i * h;
    }
    g.back() = b;
    return g;
}

}  // namespace gluskabi
