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
#include <gluskabi/roots.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>

namespace gluskabi {

std::vector<Polynomial> square_free_decomposition(const Polynomial& p) {
    if (p.is_zero()) {
        throw error(errc::invalid_argument, "square-free decomposition of zero");
    }
    std::vector<Polynomial> factors;
    if (p.degree() == 0) {
        return factors;
    }
    // Yun's algorithm.
    Polynomial f = p.monic();
    Polynomial df = f.derivative();
    Polynomial a = gcd(f, df);
    Polynomial b = exact_div(f, a);
    Polynomial c = exact_div(df, a);
    Polynomial d = c - b.derivative();
    while (b.degree() > 0) {
        Polynomial ai = gcd(b, d);
        factors.push_back(ai);
        b = exact_div(b, ai);
        c = exact_div(d, ai);
        d = c - b.derivative();
    }
    return factors;
}

namespace {

// Integer-coefficient multiple of p (denominators cleared, content left alone).
std::vector<mpz_class> integer_coeffs(const Polynomial& p) {
    mpz_class lcm = 1;
    for (const auto& c : p.coeffs()) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<mpz_class> out;
    for (const auto& c : p.coeffs()) {
        Rational scaled = c * lcm;
        out.push_back(scaled.get_num());
    }
    return out;
}

std::vector<long> divisors(long n) {
    n = std::labs(n);
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) {
                out.push_back(n / d);
            }
        }
    }
    return out;
}

// Pulls rational roots out of a square-free factor; returns what remains.
Polynomial extract_rational_roots(Polynomial f, std::vector<Rational>& found, long limit) {
    while (f.degree() > 0 && f.coeff(0) == 0) {
        found.emplace_back(0);
        f = exact_div(f, Polynomial::xi());
    }
    if (f.degree() <= 0) {
        return f;
    }
    auto ic = integer_coeffs(f);
    const mpz_class& lo = ic.front();
    const mpz_class& hi = ic.back();
    if (abs(lo) > limit || abs(hi) > limit) {
        return f;
    }
    std::set<Rational> candidates;
    for (long num : divisors(lo.get_si())) {
        for (long den : divisors(hi.get_si())) {
            Rational r(num, den);
            r.canonicalize();
            candidates.insert(r);
            candidates.insert(-r);
        }
    }
    for (const auto& r : candidates) {
        if (f.degree() > 0 && f.eval(r) == 0) {
            found.push_back(r);
            f = exact_div(f, Polynomial(std::vector<Rational>{-r, 1}));
        }
    }
    return f;
}

std::vector<std::complex<double>> companion_roots(const Polynomial& f) {
    const int n = f.degree();
    std::vector<std::complex<double>> out;
    if (n <= 0) {
        return out;
    }
    if (n == 1) {
        Rational r = -f.coeff(0) / f.coeff(1);
        out.emplace_back(r.get_d(), 0.0);
        return out;
    }
    Polynomial m = f.monic();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -m.coeff(i).get_d();
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    for (int i = 0; i < n; ++i) {
        out.push_back(solver.eigenvalues()(i));
    }
    // Newton polish against the square-free factor.
    Polynomial dm = m.derivative();
    for (auto& z : out) {
        for (int it = 0; it < 3; ++it) {
            std::complex<double> fz = m.eval(z);
            std::complex<double> dz = dm.eval(z);
            if (std::abs(dz) == 0.0) {
                break;
            }
            std::complex<double> step = fz / dz;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                break;
            }
            z -= step;
        }
    }
    return out;
}

}  // namespace

std::vector<Root> char_roots(const Polynomial& p, const RootOptions& options) {
    if (p.is_zero()) {
        throw error(errc::invalid_argument, "characteristic roots of the zero polynomial");
    }
    std::vector<Root> roots;
    auto factors = square_free_decomposition(p);
    for (size_t i = 0; i < factors.size(); ++i) {
        const int mult = static_cast<int>(i) + 1;
        if (factors[i].degree() <= 0) {
            continue;
        }
        std::vector<Rational> rational;
        Polynomial rest = extract_rational_roots(factors[i], rational, options.rational_search_limit);
        for (const auto& r : rational) {
            roots.push_back({{r.get_d(), 0.0}, mult, true});
        }
        for (auto z : companion_roots(rest)) {
            double mag = std::max(1.0, std::abs(z));
            if (std::abs(z.imag()) <= 1e-12 * mag) {
                z.imag(0.0);
            }
            roots.push_back({z, mult, false});
        }
    }
    // Enforce exact conjugate symmetry: rebuild lower-half roots from the upper half.
    std::vector<Root> upper;
    for (const auto& r : roots) {
        if (r.value.imag() >= 0.0) {
            upper.push_back(r);
        }
    }
    std::vector<Root> merged;
    for (const auto& r : upper) {
        bool absorbed = false;
        for (auto& m : merged) {
            double scale = std::max(1.0, std::abs(m.value));
            if (std::abs(m.value - r.value) <= options.cluster_tolerance * scale) {
                m.multiplicity += r.multiplicity;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) {
            merged.push_back(r);
        }
    }
    roots.clear();
    for (const auto& r : merged) {
        roots.push_back(r);
        if (r.value.imag() > 0.0) {
            roots.push_back({std::conj(r.value), r.multiplicity, r.exact});
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
        if (x.value.real() != y.value.real()) {
            return x.value.real() < y.value.real();
        }
        return x.value.imag() < y.value.imag();
    });
    return roots;
}

}  // namespace gluskabi
