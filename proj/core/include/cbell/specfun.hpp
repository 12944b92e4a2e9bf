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

#ifndef CBELL_SPECFUN_HPP
#define CBELL_SPECFUN_HPP

#include <span>

namespace cbell::specfun {

/// Laguerre polynomial L_n(x) by the upward three-term recurrence.
double laguerre(int n, double x);

/// Associated Laguerre polynomial L_n^{(a)}(x), upward recurrence in n.
double assoc_laguerre(int n, int a, double x);

/// Fills out[k] = L_k(x) for k = 0 .. out.size()-1 in one recurrence pass.
void laguerre_table(double x, std::span<double> out);

/// Bessel function of the first kind, order 0 or 1, for 0 <= x <= 1e4.
///
/// Three regimes: a power series (accumulated in long double) for x < 12,
/// Miller's backward recurrence for 12 <= x < 30 and the Hankel asymptotic
/// expansion beyond. Throws InvalidArgument for negative x or other orders.
double bessel_j(int order, double x);

double bessel_j0(double x);
double bessel_j1(double x);

struct BesselPair {
    double j0;
    double j1;
};

/// J0 and J1 at the same argument; cheaper than two separate calls.
BesselPair bessel_j01(double x);

/// Partial sum sum_{n < n_terms} y^n / n! L_n(x). Converges to J0(2 sqrt(xy)) e^y.
double laguerre_sum(double x, double y, int n_terms);

namespace detail {
// Exposed for seam-continuity tests.
inline constexpr double kSeriesLimit = 12.0;
inline constexpr double kAsymptoticLimit = 30.0;
BesselPair bessel_series(double x);
BesselPair bessel_miller(double x);
BesselPair bessel_asymptotic(double x);
}  // namespace detail

}  // namespace cbell::specfun

#endif  // CBELL_SPECFUN_HPP
