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
#include <gluskabi/modal.hpp>

#include <algorithm>
#include <cmath>

namespace gluskabi {

std::vector<ModeGroup> mode_groups(const std::vector<Root>& roots, double a, double b) {
    std::vector<ModeGroup> groups;
    for (const auto& r : roots) {
        if (r.value.imag() < 0.0) {
            continue;
        }
        groups.push_back({r.value, r.multiplicity, r.value.real() > 0.0 ? b : a});
    }
    return groups;
}

namespace {

double falling_factorial(int n, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        out *= n - i;
    }
    return out;
}

double binomial(int n, int k) { return falling_factorial(n, k) / falling_factorial(k, k); }

// Taylor coefficients of a(x) about x0: a(x0 + h) = sum_m out[m] h^m.
std::vector<std::complex<double>> taylor_shift(const std::vector<double>& a, std::complex<double> x0) {
    std::vector<std::complex<double>> c(a.begin(), a.end());
    const size_t n = c.size();
    for (size_t k = 0; k + 1 < n; ++k) {
        for (size_t i = n - 1; i > k; --i) {
            c[i - 1] += x0 * c[i];
        }
    }
    return c;
}

}  // namespace

std::complex<double> mode_derivative(const ModeGroup& group, int power, double t, int d) {
    const double s = t - group.anchor;
    const std::complex<double> lambda = group.root;
    std::complex<double> acc = 0.0;
    for (int m = 0; m <= std::min(d, power); ++m) {
        double coef = binomial(d, m) * falling_factorial(power, m);
        acc += coef * std::pow(s, power - m) * std::pow(lambda, d - m);
    }
    return acc * std::exp(lambda * s);
}

ModalExpansion::ModalExpansion(std::vector<ModeGroup> groups, std::vector<std::vector<std::complex<double>>> coeffs)
    : groups_(std::move(groups)), coeffs_(std::move(coeffs)) {
    if (groups_.size() != coeffs_.size()) {
        throw error(errc::dimension_mismatch, "modal coefficient groups do not match the basis");
    }
    for (size_t g = 0; g < groups_.size(); ++g) {
        if (static_cast<int>(coeffs_[g].size()) != groups_[g].multiplicity) {
            throw error(errc::dimension_mismatch, "modal coefficient count does not match multiplicity");
        }
        if (groups_[g].is_real()) {
            for (auto& c : coeffs_[g]) {
                c.imag(0.0);
            }
        }
    }
}

ModalExpansion ModalExpansion::zero(std::vector<ModeGroup> groups) {
    std::vector<std::vector<std::complex<double>>> coeffs;
    for (const auto& g : groups) {
        coeffs.emplace_back(static_cast<size_t>(g.multiplicity), 0.0);
    }
    return ModalExpansion(std::move(groups), std::move(coeffs));
}

ModalExpansion ModalExpansion::from_real_coefficients(std::vector<ModeGroup> groups, const std::vector<double>& x) {
    ModalExpansion e = zero(std::move(groups));
    size_t k = 0;
    for (size_t g = 0; g < e.groups_.size(); ++g) {
        for (int j = 0; j < e.groups_[g].multiplicity; ++j) {
            if (k >= x.size()) {
                throw error(errc::dimension_mismatch, "too few real coefficients for the basis");
            }
            if (e.groups_[g].is_real()) {
                e.coeffs_[g][static_cast<size_t>(j)] = x[k++];
            } else {
                // x Re f - y Im f = Re((x + i y) f)
                double re = x[k++];
                if (k >= x.size()) {
                    throw error(errc::dimension_mismatch, "too few real coefficients for the basis");
                }
                double im = x[k++];
                e.coeffs_[g][static_cast<size_t>(j)] = {re, im};
            }
        }
    }
    if (k != x.size()) {
        throw error(errc::dimension_mismatch, "too many real coefficients for the basis");
    }
    return e;
}

int ModalExpansion::real_dimension() const {
    int n = 0;
    for (const auto& g : groups_) {
        n += g.real_dimension();
    }
    return n;
}

double ModalExpansion::eval(double t, int derivative) const {
    double acc = 0.0;
    for (size_t g = 0; g < groups_.size(); ++g) {
        for (int j = 0; j < groups_[g].multiplicity; ++j) {
            const auto& c = coeffs_[g][static_cast<size_t>(j)];
            if (c == 0.0) {
                continue;
            }
            acc += (c * mode_derivative(groups_[g], j, t, derivative)).real();
        }
    }
    return acc;
}

ModalExpansion ModalExpansion::apply(const std::vector<double>& op) const {
    ModalExpansion out = zero(groups_);
    for (size_t g = 0; g < groups_.size(); ++g) {
        auto taylor = taylor_shift(op, groups_[g].root);
        const int mult = groups_[g].multiplicity;
        for (int j = 0; j < mult; ++j) {
            const auto& c = coeffs_[g][static_cast<size_t>(j)];
            if (c == 0.0) {
                continue;
            }
            for (int p = 0; p <= j; ++p) {
                const size_t m = static_cast<size_t>(j - p);
                if (m >= taylor.size()) {
                    continue;
                }
                out.coeffs_[g][static_cast<size_t>(p)] += c * taylor[m] * falling_factorial(j, j - p);
            }
        }
        if (groups_[g].is_real()) {
            for (auto& c : out.coeffs_[g]) {
                c.imag(0.0);
            }
        }
    }
    return out;
}

double ModalExpansion::coefficient_scale() const {
    double s = 0.0;
    for (const auto& g : coeffs_) {
        for (const auto& c : g) {
            s = std::max(s, std::abs(c));
        }
    }
    return s;
}

namespace {

bool same_basis(const std::vector<ModeGroup>& x, const std::vector<ModeGroup>& y) {
    if (x.size() != y.size()) {
        return false;
    }
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].root != y[i].root || x[i].multiplicity != y[i].multiplicity || x[i].anchor != y[i].anchor) {
            return false;
        }
    }
    return true;
}

}  // namespace

ModalExpansion operator+(const ModalExpansion& lhs, const ModalExpansion& rhs) {
    if (same_basis(lhs.groups_, rhs.groups_)) {
        ModalExpansion out = lhs;
        for (size_t g = 0; g < out.coeffs_.size(); ++g) {
            for (size_t j = 0; j < out.coeffs_[g].size(); ++j) {
                out.coeffs_[g][j] += rhs.coeffs_[g][j];
            }
        }
        return out;
    }
    auto groups = lhs.groups_;
    auto coeffs = lhs.coeffs_;
    groups.insert(groups.end(), rhs.groups_.begin(), rhs.groups_.end());
    coeffs.insert(coeffs.end(), rhs.coeffs_.begin(), rhs.coeffs_.end());
    return ModalExpansion(std::move(groups), std::move(coeffs));
}

ModalExpansion operator*(double k, const ModalExpansion& rhs) {
    ModalExpansion out = rhs;
    for (auto& g : out.coeffs_) {
        for (auto& c : g) {
            c *= k;
        }
    }
    return out;
}

ModalExpansion operator-(const ModalExpansion& lhs, const ModalExpansion& rhs) { return lhs + (-1.0) * rhs; }

}  // namespace gluskabi
