// Copyright 2026 The cbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cbell/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cbell/errors.hpp"

namespace cbell::specfun {

double laguerre(int n, double x) { return assoc_laguerre(n, 0, x); }

double assoc_laguerre(int n, int a, double x) {
    if (n < 0 || a < 0) {
        throw InvalidArgument("assoc_laguerre: order and index must be nonnegative");
    }
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

void laguerre_table(double x, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() == 1) return;
    out[1] = 1.0 - x;
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        const double kk = static_cast<double>(k);
        out[k + 1] = ((2.0 * kk + 1.0 - x) * out[k] - kk * out[k - 1]) / (kk + 1.0);
    }
}

namespace detail {

BesselPair bessel_series(double x) {
    // Terms peak near k ~ x/2; long double keeps the cancellation below 1e-15.
    const long double h = 0.5L * x;
    const long double h2 = h * h;
    long double t0 = 1.0L;
    long double t1 = h;
    long double s0 = t0;
    long double s1 = t1;
    for (int k = 1; k < 200; ++k) {
        t0 *= -h2 / (static_cast<long double>(k) * k);
        t1 *= -h2 / (static_cast<long double>(k) * (k + 1));
        s0 += t0;
        s1 += t1;
        if (std::fabs(t0) < 1e-21L && std::fabs(t1) < 1e-21L && k > h) break;
    }
    return {static_cast<double>(s0), static_cast<double>(s1)};
}

BesselPair bessel_miller(double x) {
    int start = static_cast<int>(x) + 40;
    if (start % 2 != 0) ++start;
    const long double two_over_x = 2.0L / x;
    long double above = 0.0L;
    long double cur = 1e-30L;
    long double norm = 0.0L;
    long double j1 = 0.0L;
    for (int k = start; k > 0; --k) {
        const long double below = k * two_over_x * cur - above;
        above = cur;
        cur = below;
        // cur now holds the unnormalised J_{k-1}.
        if (k - 1 == 1) j1 = cur;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * cur;
        if (std::fabs(cur) > 1e300L) {
            cur *= 1e-300L;
            above *= 1e-300L;
            norm *= 1e-300L;
            j1 *= 1e-300L;
        }
    }
    norm += cur;
    return {static_cast<double>(cur / norm), static_cast<double>(j1 / norm)};
}

BesselPair bessel_asymptotic(double x) {
    // Hankel expansion, truncated at the smallest term.
    auto pq = [x](double nu, double& p, double& q) {
        const double mu = 4.0 * nu * nu;
        const double ex = 8.0 * x;
        p = 1.0;
        q = 0.0;
        double term = 1.0;
        double last = 1.0;
        for (int k = 1; k < 100; ++k) {
            const double odd = 2.0 * k - 1.0;
            term *= (mu - odd * odd) / (k * ex);
            const double mag = std::fabs(term);
            if (mag > last || mag < 1e-18) break;
            last = mag;
            // k odd feeds Q, k even feeds P, alternating signs in pairs.
            const int r = k % 4;
            if (r == 1) q += term;
            else if (r == 2) p -= term;
            else if (r == 3) q -= term;
            else p += term;
        }
    };
    double p0, q0, p1, q1;
    pq(0.0, p0, q0);
    pq(1.0, p1, q1);
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    // cos(x - pi/4) = (c + s)/sqrt2, sin(x - pi/4) = (s - c)/sqrt2,
    // cos(x - 3pi/4) = (s - c)/sqrt2, sin(x - 3pi/4) = -(c + s)/sqrt2.
    const double r2 = std::numbers::sqrt2 / 2.0;
    const double j0 = amp * r2 * (p0 * (c + s) - q0 * (s - c));
    const double j1 = amp * r2 * (p1 * (s - c) + q1 * (c + s));
    return {j0, j1};
}

}  // namespace detail

BesselPair bessel_j01(double x) {
    if (!(x >= 0.0) || x > 1e4) {
        throw InvalidArgument("bessel_j: argument must lie in [0, 1e4], got " + format_number(x));
    }
    if (x < detail::kSeriesLimit) return detail::bessel_series(x);
    if (x < detail::kAsymptoticLimit) return detail::bessel_miller(x);
    return detail::bessel_asymptotic(x);
}

double bessel_j0(double x) { return bessel_j01(x).j0; }
double bessel_j1(double x) { return bessel_j01(x).j1; }

double bessel_j(int order, double x) {
    if (order == 0) return bessel_j0(x);
    if (order == 1) return bessel_j1(x);
    throw InvalidArgument("bessel_j: only orders 0 and 1 are supported");
}

double laguerre_sum(double x, double y, int n_terms) {
    if (n_terms < 1) throw InvalidArgument("laguerre_sum: n_terms must be >= 1");
    double sum = 0.0;
    double weight = 1.0;
    double prev = 1.0;
    double cur = 1.0;
    for (int n = 0; n < n_terms; ++n) {
        double lag;
        if (n == 0) {
            lag = 1.0;
        } else if (n == 1) {
            cur = 1.0 - x;
            lag = cur;
        } else {
            const double next = ((2.0 * (n - 1) + 1.0 - x) * cur - (n - 1) * prev) / n;
            prev = cur;
            cur = next;
            lag = cur;
        }
        if (n > 0) weight *= y / n;
        sum += weight * lag;
    }
    return sum;
}

}  // namespace cbell::specfun
