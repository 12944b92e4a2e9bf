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

#ifndef CBELL_QUAD_HPP
#define CBELL_QUAD_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace cbell::quad {

/// Cutoffs, tolerances and sampling controls shared by every quadrature
/// and Monte Carlo evaluation in the library.
struct IntegrationSpec {
    double r_max = 6.0;    ///< cutoff for radial phase-space variables
    double abs_tol = 1e-9; ///< adaptive quadrature target
    double rel_tol = 1e-3; ///< relative budget for truncation tails (n-sums)
    std::int64_t mc_samples = 2'000'000;
    std::uint64_t seed = 42;
    double sigma_step = 0.05;
    double sigma_max = 2.7;
    std::vector<double> split_points; ///< known discontinuities for integrate_1d
    int mc_strata = 16;               ///< equal-width strata along the first MC axis
    std::int64_t max_evaluations = 1'000'000;

    /// Throws InvalidArgument unless r_max > 0, tolerances > 0,
    /// mc_samples >= 1e4, sigma grid positive and strata >= 1.
    void validate() const;
};

enum class Method { adaptive, monte_carlo };
std::string_view to_string(Method m);

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    Method method = Method::adaptive;
};

using Fn1 = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (10/21) quadrature on [a, b]. Any of
/// spec.split_points lying inside (a, b) become fixed subinterval edges.
/// Throws ConvergenceError when the error estimate is still above
/// spec.abs_tol after spec.max_evaluations integrand calls.
QuadResult integrate_1d(const Fn1& f, double a, double b, const IntegrationSpec& spec);

/// Same as above with explicit breakpoints and tolerance (spec.split_points
/// ignored). Used by the nested integrators.
QuadResult integrate_1d(const Fn1& f, double a, double b, double abs_tol, std::span<const double> breaks,
                        std::int64_t max_evaluations);

/// Domain of a rotation-invariant double phase-space integral
///   2 pi * int_0^outer_max r dr int_0^inner_max r' dr' int_0^{2 pi} dtheta f(r, r', theta)
/// where theta is the angle between the two complex points. The integrand
/// must depend on theta only through cos(theta).
struct RadialPairDomain {
    double outer_max = 0.0;
    double inner_max = 0.0;
    std::vector<double> outer_splits;
    /// Optional kinks of the inner radial integrand at fixed outer radius.
    std::function<std::vector<double>(double r)> inner_splits;
    /// Optional angular support [0, limit(r, r')] within [0, pi] (for
    /// indicator factors such as |alpha - alpha'| < R). Return <= 0 for empty.
    std::function<double(double r, double rp)> angle_limit;
};

using Fn3 = std::function<double(double r, double rp, double theta)>;

QuadResult integrate_radial_pair(const Fn3& f, const RadialPairDomain& domain, const IntegrationSpec& spec);

/// Integrand on a box; receives one point with dims coordinates.
using FnN = std::function<double(std::span<const double>)>;

/// Stratified Monte Carlo over a box. Samples are split into equal-width
/// strata along the first axis and into fixed-size chunks; each chunk draws
/// from its own mt19937_64 stream keyed by (seed, stream_key, stratum,
/// chunk), so the estimate is independent of the thread count.
QuadResult mc_integrate(const FnN& f, int dims, std::span<const std::pair<double, double>> bounds,
                        const IntegrationSpec& spec, std::uint64_t stream_key = 0);

}  // namespace cbell::quad

#endif  // CBELL_QUAD_HPP
