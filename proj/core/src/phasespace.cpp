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

#include "cbell/phasespace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cbell/errors.hpp"
#include "cbell/specfun.hpp"

namespace cbell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper end of the angular window in which |r e^{0} - rho e^{i theta}| < radius.
double disk_angle_limit(double r, double rho, double radius) {
    if (r * rho == 0.0) return (r * r + rho * rho < radius * radius) ? kPi : 0.0;
    const double c = (r * r + rho * rho - radius * radius) / (2.0 * r * rho);
    if (c >= 1.0) return 0.0;
    if (c <= -1.0) return kPi;
    return std::acos(c);
}

double distance(double r, double rho, double theta) {
    return std::sqrt(std::max(0.0, r * r + rho * rho - 2.0 * r * rho * std::cos(theta)));
}

double sp_kernel(double d, double a) {
    return (4.0 / (kPi * kPi)) * (1.0 - 4.0 * d * d) * std::exp(-2.0 * d * d) * specfun::bessel_j0(4.0 * d * a);
}

// int_ax^bx dx int_ay^by dy f(x, y) with the error budget split between levels.
quad::QuadResult nested_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
                           double by, std::span<const double> x_breaks, std::span<const double> y_breaks,
                           const quad::IntegrationSpec& spec) {
    const double inner_tol = 0.5 * spec.abs_tol / (bx - ax);
    std::int64_t evals = 0;
    auto outer = [&](double x) {
        const quad::QuadResult q = quad::integrate_1d([&](double y) { return f(x, y); }, ay, by, inner_tol, y_breaks,
                                                      spec.max_evaluations);
        evals += q.evaluations;
        return q.value;
    };
    quad::QuadResult r = quad::integrate_1d(outer, ax, bx, 0.5 * spec.abs_tol, x_breaks, spec.max_evaluations);
    r.error_estimate += 0.5 * spec.abs_tol;
    r.evaluations = evals;
    return r;
}

const StepForm& require_step(const RadialSymbol& symbol, SymbolCoordinate coordinate, const char* what) {
    if (symbol.coordinate() != coordinate) {
        throw InvalidArgument(std::string(what) + ": symbol has the wrong coordinate");
    }
    if (!symbol.step_form()) throw InvalidArgument(std::string(what) + ": symbol must be a step symbol");
    return *symbol.step_form();
}

void require_number_state_one(const DensityMatrix& rho) {
    if (rho.modes() != 1 || rho.dim() < 2 || std::abs(rho.matrix()(1, 1).real() - 1.0) > 1e-10) {
        throw InvalidArgument("sp_hv_bound: the closed-form kernel applies to |1><1| only");
    }
}

void require_singlet(const DensityMatrix& rho) {
    if (rho.modes() != 2) throw InvalidArgument("bipartite: two-mode state required");
    const double fidelity = (rho.matrix() - bell_state(rho.dim()).matrix()).cwiseAbs().maxCoeff();
    if (fidelity > 1e-12) throw InvalidArgument("bipartite: state is not the singlet");
}

std::vector<double> diagonal_of(const DensityMatrix& rho) {
    std::vector<double> p(static_cast<std::size_t>(rho.dim()));
    for (int k = 0; k < rho.dim(); ++k) p[static_cast<std::size_t>(k)] = rho.matrix()(k, k).real();
    return p;
}

// gbar_n(a) = sum_k p_k |<k|D(a)|n>|^2 for n < out.size().
void occupations(std::span<const double> p, double a, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const PhasePoint alpha(a, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0.0) continue;
        for (std::size_t n = 0; n < out.size(); ++n) {
            out[n] += p[k] * std::norm(displacement_element(static_cast<int>(k), static_cast<int>(n), alpha));
        }
    }
}

// pi W(a) angle-averaged: sum_k p_k (-1)^k e^{-2 a^2} L_k(4 a^2).
double scaled_wigner(std::span<const double> p, double a) {
    const double x = 4.0 * a * a;
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0.0) continue;
        s += ((k % 2 == 0) ? p[k] : -p[k]) * specfun::laguerre(static_cast<int>(k), x);
    }
    return s * std::exp(-0.5 * x);
}

// Bi-partite MC point: returns the integrand of f(|sigma|) divided by |sigma|.
struct BipartiteSample {
    double radius;  // disk of the symbol
    double scale;   // disk area relative to pi / 2
    const RadialSymbol* symbol;
    bool indicator_only = false;  // delta uniform on the disk, no symbol factor

    double operator()(double s, std::span<const double> x) const {
        const double r = radius * std::sqrt(x[0]);
        const double phi = 2.0 * kPi * x[1];
        const double wx = r * std::cos(phi), wy = r * std::sin(phi);
        // Box-Muller pairs, each component N(0, 1/4).
        const double m1 = 0.5 * std::sqrt(-2.0 * std::log1p(-x[2]));
        const double m2 = 0.5 * std::sqrt(-2.0 * std::log1p(-x[4]));
        const double g1x = m1 * std::cos(2.0 * kPi * x[3]), g1y = m1 * std::sin(2.0 * kPi * x[3]);
        const double g2x = m2 * std::cos(2.0 * kPi * x[5]), g2y = m2 * std::sin(2.0 * kPi * x[5]);
        const double dx = indicator_only ? wx : wx - g1x + g2x;
        const double dy = indicator_only ? wy : wy - g1y + g2y;
        const double a1x = 0.5 * (s + dx), a1y = 0.5 * dy;
        const double a2x = 0.5 * (s - dx), a2y = -0.5 * dy;
        const double a1 = std::hypot(a1x, a1y), a2 = std::hypot(a2x, a2y);
        const double cos12 = (a1 * a2 > 0.0) ? (a1x * a2x + a1y * a2y) / (a1 * a2) : 0.0;
        const specfun::BesselPair b1 = specfun::bessel_j01(4.0 * a1 * m1);
        const specfun::BesselPair b2 = specfun::bessel_j01(4.0 * a2 * m2);
        const double k = (1.0 - 2.0 * m1 * m1 - 2.0 * m2 * m2) * b1.j0 * b2.j0 - 4.0 * m1 * m2 * cos12 * b1.j1 * b2.j1;
        return indicator_only ? scale * k : scale * k * (*symbol)(std::hypot(dx, dy));
    }
};

BipartiteSample make_sampler(const BipartiteCase& c) {
    const StepForm& step = require_step(c.symbol, SymbolCoordinate::relative, "bipartite");
    return BipartiteSample{step.radius, 2.0 * step.radius * step.radius, &c.symbol};
}

}  // namespace

SingleParticleCase SingleParticleCase::standard(int truncation) {
    return SingleParticleCase{RadialSymbol::single_particle(), DensityMatrix::number_state(1, truncation), {}};
}

BipartiteCase BipartiteCase::standard(int truncation) {
    return BipartiteCase{RadialSymbol::bipartite(), bell_state(truncation), {}};
}

DensityMatrix bell_state(int dim) {
    if (dim < 2) throw InvalidArgument("bell_state: need at least two levels per mode");
    Vector psi = Vector::Zero(dim * dim);
    psi(1) = 0.5 * std::numbers::sqrt2;     // |0, 1>
    psi(dim) = -0.5 * std::numbers::sqrt2;  // |1, 0>
    return DensityMatrix::pure(psi, dim, 2);
}

quad::QuadResult kernel_integral(double r_alpha, double r_alpha_prime, const quad::IntegrationSpec& spec) {
    spec.validate();
    if (!(r_alpha > 0.0) || !(r_alpha_prime > 0.0)) throw InvalidArgument("kernel_integral: radii must be positive");
    const double r_max = spec.r_max;
    const std::vector<double> none;
    if (std::isinf(r_alpha_prime)) {
        // alpha' free: anchor on alpha, the kernel has no angular dependence.
        const double outer = std::min(r_alpha, r_max);
        quad::IntegrationSpec scaled = spec;
        scaled.abs_tol = spec.abs_tol / (4.0 * kPi * kPi);
        quad::QuadResult q = nested_2d([](double a, double d) { return a * d * sp_kernel(d, a); }, 0.0, outer, 0.0,
                                       r_max, none, none, scaled);
        q.value *= 4.0 * kPi * kPi;
        q.error_estimate *= 4.0 * kPi * kPi;
        return q;
    }
    quad::RadialPairDomain domain;
    domain.outer_max = std::min(r_alpha_prime, r_max);
    if (std::isinf(r_alpha)) {
        domain.inner_max = r_max;
    } else {
        domain.inner_max = std::min(r_max, r_alpha + r_alpha_prime);
        domain.inner_splits = [r_alpha](double rp) {
            return std::vector<double>{std::abs(r_alpha - rp), r_alpha + rp};
        };
        domain.angle_limit = [r_alpha](double rp, double rho) { return disk_angle_limit(rp, rho, r_alpha); };
    }
    auto f = [](double rp, double rho, double theta) { return sp_kernel(rho, distance(rp, rho, theta)); };
    return quad::integrate_radial_pair(f, domain, spec);
}

SingleParticleBound sp_hv_bound(const SingleParticleCase& c) {
    require_number_state_one(c.state);
    const StepForm& step = require_step(c.symbol, SymbolCoordinate::single, "sp_hv_bound");
    const double c0 = step.outside;
    const double c1 = step.jump();
    const double radius = step.radius;

    SingleParticleBound b;
    b.i_inf_inf = kernel_integral(kInf, kInf, c.spec);
    if (c1 != 0.0) {
        b.i_r_inf = kernel_integral(radius, kInf, c.spec);
        b.i_inf_r = kernel_integral(kInf, radius, c.spec);
        b.i_r_r = kernel_integral(radius, radius, c.spec);
    }
    b.hv_bound = c0 * c0 * b.i_inf_inf.value + c0 * c1 * (b.i_r_inf.value + b.i_inf_r.value) +
                 c1 * c1 * b.i_r_r.value;
    b.error_estimate = c0 * c0 * b.i_inf_inf.error_estimate +
                       std::abs(c0 * c1) * (b.i_r_inf.error_estimate + b.i_inf_r.error_estimate) +
                       c1 * c1 * b.i_r_r.error_estimate;

    b.qm_mean = quantize_radial(c.symbol, 2, c.spec).eigenvalues[1];
    auto w_times_a = [&](double r) { return 4.0 * kPi * r * wigner(c.state, PhasePoint(r, 0.0)) * c.symbol(r); };
    b.qm_mean_quadrature = quad::integrate_1d(w_times_a, 0.0, c.spec.r_max, c.spec.abs_tol, c.symbol.jumps(),
                                              c.spec.max_evaluations)
                               .value;
    b.margin = b.qm_mean * b.qm_mean - b.hv_bound;
    b.violation = b.margin > 0.0;
    return b;
}

GenericBound sp_hv_bound_generic(const DensityMatrix& rho, const RadialSymbol& symbol, int n_max,
                                 const quad::IntegrationSpec& spec) {
    spec.validate();
    if (rho.modes() != 1) throw InvalidArgument("sp_hv_bound_generic: single-mode state required");
    if (n_max < 1 || n_max > rho.dim() / 2) {
        throw InvalidArgument("sp_hv_bound_generic: n_max must be in [1, truncation / 2]");
    }
    const StepForm& step = require_step(symbol, SymbolCoordinate::single, "sp_hv_bound_generic");
    // The integrand is linear in rho and every other factor is rotation
    // invariant, so the angular average keeps only the diagonal of rho.
    const std::vector<double> p = diagonal_of(rho);
    const auto n_levels = static_cast<std::size_t>(n_max);

    auto missing = [&](double a) {
        std::vector<double> g(n_levels);
        occupations(p, a, g);
        double s = 0.0;
        for (double x : g) s += x;
        return std::max(0.0, 1.0 - s);
    };
    // Pick the radial cutoff that balances the occupation lost to the n-cut
    // inside it against the Wigner weight beyond it.
    const double grid_step = 0.05;
    const int n_grid = static_cast<int>(std::floor(spec.r_max / grid_step));
    std::vector<double> outside(static_cast<std::size_t>(n_grid) + 1, 0.0);
    const std::vector<double> none;
    for (int i = n_grid - 1; i >= 0; --i) {
        auto w = [&](double a) { return 4.0 * a * std::abs(scaled_wigner(p, a)); };
        const double seg =
            quad::integrate_1d(w, i * grid_step, (i + 1) * grid_step, 1e-14, none, spec.max_evaluations).value;
        outside[static_cast<std::size_t>(i)] = outside[static_cast<std::size_t>(i) + 1] + seg;
    }
    double best_tail = kInf;
    double cutoff = grid_step;
    double inside = 0.0;
    double previous = 0.0;
    for (int i = 1; i <= n_grid; ++i) {
        const double a = i * grid_step;
        const double current = 4.0 * a * missing(a);
        inside += 0.5 * grid_step * (previous + current);
        previous = current;
        const double tail = inside + outside[static_cast<std::size_t>(i)];
        if (tail < best_tail) {
            best_tail = tail;
            cutoff = a;
        }
    }
    GenericBound out;
    out.n_max = n_max;
    out.radial_cutoff = cutoff;
    out.tail_estimate = best_tail;
    if (best_tail > spec.rel_tol) {
        throw ConvergenceError("sp_hv_bound_generic: truncation tail " + format_number(best_tail) +
                                   " exceeds rel_tol at n_max = " + std::to_string(n_max),
                               0.0, best_tail);
    }

    const double c0 = step.outside;
    const double c1 = step.jump();
    const double radius = step.radius;

    // alpha' over the whole plane: int d^2 d e^{-2 d^2} L_n(4 d^2) = (pi / 2) (-1)^n.
    auto plane_sum = [&](double a) {
        std::vector<double> g(n_levels);
        occupations(p, a, g);
        double s = 0.0;
        for (std::size_t n = 0; n < n_levels; ++n) s += (n % 2 == 0) ? g[n] : -g[n];
        return 4.0 * a * s;  // 2 pi a * (2 / pi) * sum
    };
    auto plane_integral = [&](double upper) {
        std::vector<double> breaks;
        if (radius < upper) breaks.push_back(radius);
        return quad::integrate_1d(plane_sum, 0.0, upper, 0.25 * spec.abs_tol, breaks, spec.max_evaluations);
    };
    // alpha' in the disk, alpha within `limit`.
    auto disk_integral = [&](double limit) {
        quad::RadialPairDomain domain;
        domain.outer_max = radius;
        domain.inner_max = radius + limit;
        domain.inner_splits = [limit](double rp) { return std::vector<double>{std::abs(limit - rp), limit + rp}; };
        domain.angle_limit = [limit](double rp, double rho) { return disk_angle_limit(rp, rho, limit); };
        auto f = [&](double rp, double rho, double theta) {
            std::array<double, 256> g{};
            std::array<double, 256> lag{};
            const std::span<double> gs(g.data(), n_levels);
            const std::span<double> ls(lag.data(), n_levels);
            occupations(p, distance(rp, rho, theta), gs);
            specfun::laguerre_table(4.0 * rho * rho, ls);
            double s = 0.0;
            for (std::size_t n = 0; n < n_levels; ++n) s += g[n] * lag[n];
            return (4.0 / (kPi * kPi)) * s * std::exp(-2.0 * rho * rho);
        };
        quad::IntegrationSpec inner = spec;
        inner.abs_tol = 0.25 * spec.abs_tol;
        return quad::integrate_radial_pair(f, domain, inner);
    };
    if (n_max > 256) throw InvalidArgument("sp_hv_bound_generic: n_max above 256");

    const quad::QuadResult t00 = plane_integral(cutoff);
    out.value = c0 * c0 * t00.value;
    out.quadrature_error = c0 * c0 * t00.error_estimate;
    if (c1 != 0.0) {
        const quad::QuadResult t10 = plane_integral(std::min(radius, cutoff));
        const quad::QuadResult t01 = disk_integral(cutoff);
        const quad::QuadResult t11 = disk_integral(radius);
        out.value += c0 * c1 * (t10.value + t01.value) + c1 * c1 * t11.value;
        out.quadrature_error += std::abs(c0 * c1) * (t10.error_estimate + t01.error_estimate) +
                                c1 * c1 * t11.error_estimate;
    }
    return out;
}

quad::QuadResult coarse_parity_bound(const DensityMatrix& rho, const RadialSymbol& symbol,
                                     const quad::IntegrationSpec& spec) {
    spec.validate();
    if (rho.modes() != 1) throw InvalidArgument("coarse_parity_bound: single-mode state required");
    if (symbol.coordinate() != SymbolCoordinate::single) {
        throw InvalidArgument("coarse_parity_bound: single-mode symbol required");
    }
    const std::vector<double> p = diagonal_of(rho);
    const int levels = rho.dim();
    const SpectralExpansion lambda = quantize_radial(symbol, levels, spec);

    // Tr(P_s rho~ P_s B~) = sum_k p_k <phi|B|phi>, phi = D P_s D^dag |k>
    // = (|k> + s (-1)^k D(2 alpha) |k>) / 2.
    auto integrand = [&](double a) {
        const PhasePoint twice(2.0 * a, 0.0);
        double total = 0.0;
        for (int k = 0; k < levels; ++k) {
            const double pk = p[static_cast<std::size_t>(k)];
            if (pk == 0.0) continue;
            const double parity_k = (k % 2 == 0) ? 1.0 : -1.0;
            for (double s : {1.0, -1.0}) {
                double expect = 0.0;
                for (int n = 0; n < levels; ++n) {
                    Complex phi = s * parity_k * displacement_element(n, k, twice);
                    if (n == k) phi += 1.0;
                    expect += lambda.eigenvalues[static_cast<std::size_t>(n)] * std::norm(0.5 * phi);
                }
                total += s * pk * expect;
            }
        }
        return (2.0 / kPi) * 2.0 * kPi * a * symbol(a) * total;
    };
    return quad::integrate_1d(integrand, 0.0, spec.r_max, spec.abs_tol, symbol.jumps(), spec.max_evaluations);
}

SigmaCurve sigma_curve(const BipartiteCase& c) {
    c.spec.validate();
    require_singlet(c.state);
    const BipartiteSample sample = make_sampler(c);
    const double step = c.spec.sigma_step;
    const auto intervals = static_cast<int>(std::floor(c.spec.sigma_max / step + 1e-9));
    if (intervals < 5) throw InvalidArgument("sigma_curve: need at least five grid intervals");

    SigmaCurve curve;
    const std::array<std::pair<double, double>, 6> box{{{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}};
    for (int i = 0; i <= intervals; ++i) {
        const double s = i * step;
        auto f = [&](std::span<const double> x) { return s * sample(s, x); };
        const quad::QuadResult q = quad::mc_integrate(f, 6, box, c.spec, static_cast<std::uint64_t>(i) + 1);
        curve.sigma.push_back(s);
        curve.f.push_back(q.value);
        curve.error.push_back(q.error_estimate);
        curve.samples_per_point = q.evaluations;
    }
    curve.peak = *std::max_element(curve.f.begin(), curve.f.end());

    // Composite Simpson when the interval count is even, trapezoid otherwise.
    const int n = intervals;
    double sum = 0.0, var = 0.0;
    for (int i = 0; i <= n; ++i) {
        double w;
        if (n % 2 == 0) {
            w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            w *= step / 3.0;
        } else {
            w = (i == 0 || i == n) ? 0.5 * step : step;
        }
        sum += w * curve.f[static_cast<std::size_t>(i)];
        var += w * w * curve.error[static_cast<std::size_t>(i)] * curve.error[static_cast<std::size_t>(i)];
    }
    curve.integral = sum;
    curve.integral_error = std::sqrt(var);

    // Exponential fit of |f| over the last five points.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    bool usable = true;
    for (int i = n - 4; i <= n; ++i) {
        const double y = std::abs(curve.f[static_cast<std::size_t>(i)]);
        if (!(y > 0.0) || !std::isfinite(y)) {
            usable = false;
            break;
        }
        const double x = curve.sigma[static_cast<std::size_t>(i)];
        sx += x;
        sy += std::log(y);
        sxx += x * x;
        sxy += x * std::log(y);
    }
    const double last = std::abs(curve.f.back());
    if (usable) {
        const double slope = (5.0 * sxy - sx * sy) / (5.0 * sxx - sx * sx);
        curve.tail_decaying = slope < 0.0;
        curve.tail_estimate = curve.tail_decaying ? last / -slope : last;
    } else {
        curve.tail_estimate = last;
    }

    if (!(curve.peak > 0.0)) throw ConvergenceError("sigma_curve: curve has no positive maximum", curve.peak, 0.0);
    for (std::size_t i = 0; i < curve.error.size(); ++i) {
        if (!std::isfinite(curve.f[i]) || curve.error[i] > 0.15 * curve.peak) {
            throw ConvergenceError("sigma_curve: MC error at sigma = " + format_number(curve.sigma[i]) +
                                       " exceeds 15% of the peak",
                                   curve.f[i], curve.error[i]);
        }
    }
    return curve;
}

quad::QuadResult bp_direct_integral(const BipartiteCase& c, std::int64_t samples) {
    c.spec.validate();
    require_singlet(c.state);
    const BipartiteSample sample = make_sampler(c);
    quad::IntegrationSpec spec = c.spec;
    spec.mc_samples = samples;
    const double top = c.spec.sigma_max;
    auto f = [&](std::span<const double> x) {
        const double s = top * x[0];
        return top * s * sample(s, x.subspan(1));
    };
    const std::array<std::pair<double, double>, 7> box{{{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}};
    return quad::mc_integrate(f, 7, box, spec, 0x5eed0000ULL);
}

quad::QuadResult bp_theta_one_direct(const BipartiteCase& c, std::int64_t samples) {
    c.spec.validate();
    require_singlet(c.state);
    BipartiteSample sample = make_sampler(c);
    sample.indicator_only = true;
    quad::IntegrationSpec spec = c.spec;
    spec.mc_samples = samples;
    const double top = c.spec.r_max;
    auto f = [&](std::span<const double> x) {
        const double s = top * x[0];
        return top * s * sample(s, x.subspan(1));
    };
    const std::array<std::pair<double, double>, 7> box{{{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}};
    return quad::mc_integrate(f, 7, box, spec, 0x5eed0001ULL);
}

quad::QuadResult bp_qm_mean(const BipartiteCase& c) {
    c.spec.validate();
    require_singlet(c.state);
    if (c.symbol.coordinate() != SymbolCoordinate::relative) {
        throw InvalidArgument("bp_qm_mean: symbol must be in |alpha1 - alpha2|");
    }
    // With sigma = alpha1 + alpha2 and delta = alpha1 - alpha2,
    // W = e^{-|sigma|^2 - |delta|^2} (2 |delta|^2 - 1) / pi^2 and
    // dq1 dp1 dq2 dp2 = d^2 sigma d^2 delta.
    auto f = [&](double sigma, double delta) {
        const double w = std::exp(-sigma * sigma - delta * delta) * (2.0 * delta * delta - 1.0) / (kPi * kPi);
        return 4.0 * kPi * kPi * sigma * delta * w * c.symbol(delta);
    };
    const std::vector<double> none;
    return nested_2d(f, 0.0, c.spec.r_max, 0.0, c.spec.r_max, none, c.symbol.jumps(), c.spec);
}

BipartiteBound bp_hv_bound(const BipartiteCase& c) {
    c.spec.validate();
    require_singlet(c.state);
    const StepForm& step = require_step(c.symbol, SymbolCoordinate::relative, "bp_hv_bound");
    const double c0 = step.outside;
    const double c1 = step.jump();
    const double radius = step.radius;
    const double r_max = c.spec.r_max;
    const std::vector<double> none;

    BipartiteBound b;
    b.i_11 = nested_2d(
        [](double a1, double a2) {
            return 16.0 * a1 * a2 * std::exp(-2.0 * (a1 * a1 + a2 * a2)) * (2.0 * a1 * a1 + 2.0 * a2 * a2 - 1.0);
        },
        0.0, r_max, 0.0, r_max, none, none, c.spec);
    b.i_theta_1 = nested_2d(
        [](double sigma, double delta) {
            return 4.0 * sigma * std::exp(-sigma * sigma) * delta * std::exp(-delta * delta) *
                   (2.0 * delta * delta - 1.0);
        },
        0.0, r_max, 0.0, std::min(radius, r_max), none, none, c.spec);
    if (c1 != 0.0) {
        b.curve = sigma_curve(c);
        b.i_b_theta.value = b.curve.integral;
        b.i_b_theta.error_estimate = b.curve.integral_error;
        b.i_b_theta.evaluations = b.curve.samples_per_point * static_cast<std::int64_t>(b.curve.sigma.size());
        b.i_b_theta.method = quad::Method::monte_carlo;
        if (b.curve.integral_error > 0.15 * std::abs(b.curve.integral)) {
            throw ConvergenceError("bp_hv_bound: MC error on I_Btheta exceeds 15%", b.curve.integral,
                                   b.curve.integral_error);
        }
    }
    b.hv_bound = c0 * c0 * b.i_11.value + c0 * c1 * b.i_theta_1.value + c1 * b.i_b_theta.value;
    b.error_estimate = c0 * c0 * b.i_11.error_estimate + std::abs(c0 * c1) * b.i_theta_1.error_estimate +
                       std::abs(c1) * (b.i_b_theta.error_estimate + b.curve.tail_estimate);
    b.qm_mean = bp_qm_mean(c).value;
    b.margin = b.qm_mean * b.qm_mean - b.hv_bound;
    b.violation = b.margin > 0.0;
    return b;
}

}  // namespace cbell
