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

#include "cbell/quad.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <string>
#include <thread>

#include "cbell/errors.hpp"

namespace cbell::quad {
namespace {

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452720, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    double abs_value;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const Fn1& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = fc * kWgk[10];
    double resabs = std::abs(resk);
    double resg = 0.0;
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(result)) {
        throw ConvergenceError("integrate_1d: integrand is not finite on [" + format_number(a) + ", " +
                                   format_number(b) + "]",
                               result, std::numeric_limits<double>::infinity());
    }
    return {a, b, result, err, resabs};
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t key, std::uint64_t stratum, std::uint64_t chunk) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ key);
    h = splitmix64(h ^ stratum);
    return splitmix64(h ^ chunk);
}

// Welford accumulator; merging equal means is exact, so constant
// integrands reproduce their value bit-for-bit.
struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    void merge(const Moments& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(n + o.n);
        const double delta = o.mean - mean;
        mean += delta * (static_cast<double>(o.n) / total);
        m2 += o.m2 + delta * delta * (static_cast<double>(n) * static_cast<double>(o.n) / total);
        n += o.n;
    }
};

constexpr std::int64_t kChunk = 1 << 14;

}  // namespace

void IntegrationSpec::validate() const {
    if (!(r_max > 0.0)) throw InvalidArgument("IntegrationSpec: r_max must be positive");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidArgument("IntegrationSpec: tolerances must be positive");
    if (mc_samples < 10'000) throw InvalidArgument("IntegrationSpec: mc_samples must be >= 10000");
    if (!(sigma_step > 0.0) || !(sigma_max > 0.0)) {
        throw InvalidArgument("IntegrationSpec: sigma grid step and range must be positive");
    }
    if (mc_strata < 1) throw InvalidArgument("IntegrationSpec: mc_strata must be >= 1");
    if (max_evaluations < 21) throw InvalidArgument("IntegrationSpec: evaluation budget too small");
}

std::string_view to_string(Method m) { return m == Method::adaptive ? "adaptive" : "mc"; }

QuadResult integrate_1d(const Fn1& f, double a, double b, const IntegrationSpec& spec) {
    return integrate_1d(f, a, b, spec.abs_tol, spec.split_points, spec.max_evaluations);
}

QuadResult integrate_1d(const Fn1& f, double a, double b, double abs_tol, std::span<const double> breaks,
                        std::int64_t max_evaluations) {
    if (!(a < b)) throw InvalidArgument("integrate_1d: require a < b");
    std::vector<double> edges{a};
    for (double x : breaks) {
        if (x > a && x < b) edges.push_back(x);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Segment> heap;
    std::int64_t evals = 0;
    double total_err = 0.0;
    double total_abs = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment s = gauss_kronrod(f, edges[i], edges[i + 1]);
        evals += 21;
        total_err += s.error;
        total_abs += s.abs_value;
        heap.push(s);
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    auto target = [&] { return std::max(abs_tol, 100.0 * eps * total_abs); };

    std::vector<Segment> frozen;  // too narrow to split further
    double frozen_err = 0.0;
    while (total_err > target() && !heap.empty()) {
        if (evals + 42 > max_evaluations || frozen_err > target()) break;
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-14 * (std::abs(a) + std::abs(b) + 1.0)) {
            frozen.push_back(worst);
            frozen_err += worst.error;
            continue;
        }
        Segment left = gauss_kronrod(f, worst.a, mid);
        Segment right = gauss_kronrod(f, mid, worst.b);
        evals += 42;
        total_err += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
    }

    QuadResult out;
    out.method = Method::adaptive;
    out.evaluations = evals;
    double err = 0.0;
    double value = 0.0;
    std::vector<Segment> all(std::move(frozen));
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    for (const Segment& s : all) {
        value += s.value;
        err += s.error;
    }
    out.value = value;
    out.error_estimate = err;
    if (err > target()) {
        throw ConvergenceError("integrate_1d: error estimate " + format_number(err) + " above tolerance " +
                                   format_number(abs_tol) + " after " + std::to_string(evals) + " evaluations",
                               value, err);
    }
    return out;
}

QuadResult integrate_radial_pair(const Fn3& f, const RadialPairDomain& domain, const IntegrationSpec& spec) {
    if (!(domain.outer_max > 0.0) || !(domain.inner_max > 0.0)) {
        throw InvalidArgument("integrate_radial_pair: radial ranges must be positive");
    }
    constexpr double pi = std::numbers::pi;
    const double outer_area = 0.5 * domain.outer_max * domain.outer_max;
    const double inner_area = 0.5 * domain.inner_max * domain.inner_max;
    // Split the error budget so nested errors add up to about abs_tol.
    const double outer_tol = 0.5 * spec.abs_tol;
    const double middle_tol = 0.25 * spec.abs_tol / (2.0 * pi * outer_area);
    const double inner_tol = 0.5 * middle_tol / inner_area;
    std::int64_t evals = 0;
    const std::vector<double> no_breaks;

    auto middle = [&](double r) {
        auto angular = [&](double rp) {
            double limit = pi;
            if (domain.angle_limit) limit = std::min(pi, domain.angle_limit(r, rp));
            if (!(limit > 0.0)) return 0.0;
            auto g = [&](double theta) { return f(r, rp, theta); };
            const QuadResult q = integrate_1d(g, 0.0, limit, inner_tol, no_breaks, spec.max_evaluations);
            evals += q.evaluations;
            return rp * 2.0 * q.value;
        };
        std::vector<double> breaks;
        if (domain.inner_splits) breaks = domain.inner_splits(r);
        const QuadResult q = integrate_1d(angular, 0.0, domain.inner_max, middle_tol, breaks, spec.max_evaluations);
        return r * q.value;
    };
    const QuadResult outer =
        integrate_1d(middle, 0.0, domain.outer_max, outer_tol / (2.0 * pi), domain.outer_splits, spec.max_evaluations);
    QuadResult out;
    out.value = 2.0 * pi * outer.value;
    out.error_estimate = 2.0 * pi * outer.error_estimate + spec.abs_tol * 0.5;
    out.evaluations = evals;
    out.method = Method::adaptive;
    return out;
}

QuadResult mc_integrate(const FnN& f, int dims, std::span<const std::pair<double, double>> bounds,
                        const IntegrationSpec& spec, std::uint64_t stream_key) {
    if (dims < 1 || dims > 8) throw InvalidArgument("mc_integrate: dims must be in [1, 8]");
    if (static_cast<int>(bounds.size()) != dims) throw InvalidArgument("mc_integrate: bounds size != dims");
    if (spec.mc_samples < 1) throw InvalidArgument("mc_integrate: mc_samples must be positive");
    double volume = 1.0;
    for (const auto& [lo, hi] : bounds) {
        if (!(hi > lo)) throw InvalidArgument("mc_integrate: empty interval in bounds");
        volume *= hi - lo;
    }
    const int strata = static_cast<int>(std::min<std::int64_t>(spec.mc_strata, spec.mc_samples / 2));
    const std::int64_t per_stratum = spec.mc_samples / strata;
    const std::int64_t chunks_per_stratum = (per_stratum + kChunk - 1) / kChunk;
    const std::int64_t n_tasks = strata * chunks_per_stratum;
    std::vector<Moments> results(static_cast<std::size_t>(n_tasks));

    auto run_task = [&](std::int64_t task) {
        const std::int64_t stratum = task / chunks_per_stratum;
        const std::int64_t chunk = task % chunks_per_stratum;
        const std::int64_t begin = chunk * kChunk;
        const std::int64_t count = std::min(kChunk, per_stratum - begin);
        std::mt19937_64 gen(stream_seed(spec.seed, stream_key, static_cast<std::uint64_t>(stratum),
                                        static_cast<std::uint64_t>(chunk)));
        std::array<double, 8> x{};
        Moments m;
        const double lo0 = bounds[0].first;
        const double width0 = (bounds[0].second - lo0) / strata;
        for (std::int64_t i = 0; i < count; ++i) {
            for (int d = 0; d < dims; ++d) {
                const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
                if (d == 0) {
                    x[0] = lo0 + width0 * (static_cast<double>(stratum) + u);
                } else {
                    const auto [lo, hi] = bounds[static_cast<std::size_t>(d)];
                    x[static_cast<std::size_t>(d)] = lo + (hi - lo) * u;
                }
            }
            m.add(f(std::span<const double>(x.data(), static_cast<std::size_t>(dims))));
        }
        results[static_cast<std::size_t>(task)] = m;
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto n_workers = static_cast<unsigned>(std::min<std::int64_t>(hw, n_tasks));
    if (n_workers <= 1) {
        for (std::int64_t t = 0; t < n_tasks; ++t) run_task(t);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (std::int64_t t = next++; t < n_tasks; t = next++) run_task(t);
            });
        }
    }

    // Fixed reduction order: chunks within a stratum, then strata.
    Moments of_means;
    double variance = 0.0;
    for (int s = 0; s < strata; ++s) {
        Moments stratum;
        for (std::int64_t c = 0; c < chunks_per_stratum; ++c) {
            stratum.merge(results[static_cast<std::size_t>(s * chunks_per_stratum + c)]);
        }
        of_means.add(stratum.mean);
        const double sample_var = stratum.n > 1 ? stratum.m2 / static_cast<double>(stratum.n - 1) : 0.0;
        variance += sample_var / static_cast<double>(stratum.n);
    }
    QuadResult out;
    out.method = Method::monte_carlo;
    out.value = volume * of_means.mean;
    out.error_estimate = volume * std::sqrt(variance) / strata;
    out.evaluations = per_stratum * strata;
    return out;
}

}  // namespace cbell::quad
