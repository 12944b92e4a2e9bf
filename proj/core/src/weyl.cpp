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

#include "cbell/weyl.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cbell/errors.hpp"
#include "cbell/specfun.hpp"

namespace cbell {
namespace {

constexpr double kResidueTol = 1e-9;

// Entry (row, col) of pi * Q(alpha) = D(2 alpha) Pi.
Complex scaled_quantizer_element(int row, int col, PhasePoint twice) {
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    return sign * displacement_element(row, col, twice);
}

}  // namespace

RadialSymbol::RadialSymbol(std::function<double(double)> eval, std::string description, std::vector<double> jumps,
                           SymbolCoordinate coordinate)
    : eval_(std::move(eval)), description_(std::move(description)), jumps_(std::move(jumps)),
      coordinate_(coordinate) {
    if (!eval_) throw InvalidArgument("RadialSymbol: empty function");
    for (double j : jumps_) {
        if (!(j > 0.0) || !std::isfinite(j)) throw InvalidArgument("RadialSymbol: jump radii must be positive");
    }
    std::sort(jumps_.begin(), jumps_.end());
}

RadialSymbol RadialSymbol::step(double inside, double outside, double radius, SymbolCoordinate coordinate) {
    if (!(radius > 0.0)) throw InvalidArgument("RadialSymbol::step: radius must be positive");
    RadialSymbol s([=](double r) { return r < radius ? inside : outside; },
                   "step(inside=" + format_number(inside) + ", outside=" + format_number(outside) +
                       ", radius=" + format_number(radius) + ")",
                   {radius}, coordinate);
    s.step_ = StepForm{outside, inside, radius};
    return s;
}

RadialSymbol RadialSymbol::constant(double value, SymbolCoordinate coordinate) {
    RadialSymbol s([=](double) { return value; }, "constant(" + format_number(value) + ")", {}, coordinate);
    // Zero jump at an arbitrary radius keeps the step-form integrators usable.
    s.step_ = StepForm{value, value, 1.0};
    return s;
}

RadialSymbol RadialSymbol::single_particle() {
    RadialSymbol s = step(-1.0, 1.0, 0.5);
    s.description_ = "1 - 2 theta(1 - 4 |alpha|^2)";
    return s;
}

RadialSymbol RadialSymbol::bipartite() {
    RadialSymbol s = step(-1.0, 1.0, std::sqrt(0.5), SymbolCoordinate::relative);
    s.description_ = "1 - 2 theta(1 - 2 |alpha1 - alpha2|^2)";
    return s;
}

RadialSymbol RadialSymbol::rescaled(double s, SymbolCoordinate coordinate) const {
    if (!(s > 0.0)) throw InvalidArgument("RadialSymbol::rescaled: scale must be positive");
    std::vector<double> jumps;
    for (double j : jumps_) jumps.push_back(j / s);
    RadialSymbol out([f = eval_, s](double r) { return f(s * r); }, description_ + " at " + format_number(s) + " r",
                     jumps, coordinate);
    if (step_) out.step_ = StepForm{step_->outside, step_->inside, step_->radius / s};
    return out;
}

RadialSymbol RadialSymbol::negated() const {
    RadialSymbol out([f = eval_](double r) { return -f(r); }, "-(" + description_ + ")", jumps_, coordinate_);
    if (step_) out.step_ = StepForm{-step_->outside, -step_->inside, step_->radius};
    return out;
}

double symbol_of(const FockOperator& op, PhasePoint alpha) {
    if (op.modes() != 1) throw InvalidArgument("symbol_of: single-mode operator required");
    const PhasePoint twice = 2.0 * alpha;
    const Matrix& a = op.matrix();
    Complex sum(0.0, 0.0);
    for (int i = 0; i < op.dim(); ++i) {
        for (int j = 0; j < op.dim(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            sum += aij * scaled_quantizer_element(j, i, twice);
        }
    }
    sum *= 2.0;
    if (std::abs(sum.imag()) > kResidueTol) {
        throw NonHermitianError("symbol_of: imaginary residue " + format_number(sum.imag()));
    }
    return sum.real();
}

double wigner(const DensityMatrix& rho, PhasePoint alpha) {
    return symbol_of(rho.op(), alpha) / (2.0 * std::numbers::pi);
}

std::vector<double> wigner(const DensityMatrix& rho, std::span<const PhasePoint> grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (const PhasePoint& a : grid) out.push_back(wigner(rho, a));
    return out;
}

double wigner_two_mode(const DensityMatrix& rho, PhasePoint alpha1, PhasePoint alpha2) {
    if (rho.modes() != 2) throw InvalidArgument("wigner_two_mode: two-mode state required");
    const int d = rho.dim();
    const Matrix q1 = quantizer(alpha1, d).matrix();
    const Matrix q2 = quantizer(alpha2, d).matrix();
    const Matrix& r = rho.matrix();
    Complex sum(0.0, 0.0);
    for (int i1 = 0; i1 < d; ++i1) {
        for (int i2 = 0; i2 < d; ++i2) {
            for (int j1 = 0; j1 < d; ++j1) {
                for (int j2 = 0; j2 < d; ++j2) {
                    const Complex rij = r(i1 * d + i2, j1 * d + j2);
                    if (rij == Complex(0.0, 0.0)) continue;
                    sum += rij * q1(j1, i1) * q2(j2, i2);
                }
            }
        }
    }
    if (std::abs(sum.imag()) > kResidueTol) {
        throw NonHermitianError("wigner_two_mode: imaginary residue " + format_number(sum.imag()));
    }
    return sum.real();
}

SpectralExpansion quantize_radial(const RadialSymbol& symbol, int n_levels, const quad::IntegrationSpec& spec) {
    if (n_levels < 1) throw InvalidArgument("quantize_radial: n_levels must be >= 1");
    if (symbol.coordinate() != SymbolCoordinate::single) {
        throw InvalidArgument("quantize_radial: single-mode symbol required");
    }
    spec.validate();
    const double s_max = spec.r_max * spec.r_max;
    const double tail = symbol(spec.r_max);
    std::vector<double> breaks;
    double support = s_max;
    for (double j : symbol.jumps()) breaks.push_back(j * j);
    // Step symbols differ from their asymptote only inside the jump radius.
    if (symbol.step_form()) support = std::min(s_max, symbol.step_form()->radius * symbol.step_form()->radius);

    SpectralExpansion out;
    out.eigenvalues.reserve(static_cast<std::size_t>(n_levels));
    out.error_estimates.reserve(static_cast<std::size_t>(n_levels));
    for (int n = 0; n < n_levels; ++n) {
        const double sign = (n % 2 == 0) ? 2.0 : -2.0;
        auto integrand = [&](double s) {
            const double a = symbol(std::sqrt(s)) - tail;
            if (a == 0.0) return 0.0;
            return a * sign * specfun::laguerre(n, 4.0 * s) * std::exp(-2.0 * s);
        };
        const quad::QuadResult q =
            quad::integrate_1d(integrand, 0.0, support, spec.abs_tol, breaks, spec.max_evaluations);
        out.eigenvalues.push_back(tail + q.value);
        out.error_estimates.push_back(q.error_estimate);
    }
    return out;
}

double bell_eigenvalue_generating(int n) {
    if (n < 0 || n > 20) throw InvalidArgument("bell_eigenvalue_generating: n must be in [0, 20]");
    constexpr int kNodes = 256;
    constexpr double kRadius = 0.4;
    auto g = [](Complex t) { return 2.0 * (1.0 - std::exp(0.5 * (t + 1.0) / (t - 1.0))) / (t + 1.0); };
    Complex sum(0.0, 0.0);
    for (int k = 0; k < kNodes; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / kNodes;
        const Complex t = std::polar(kRadius, phi);
        sum += g(t) * std::polar(1.0, -n * phi);
    }
    const double coefficient = sum.real() / (kNodes * std::pow(kRadius, n));
    return 1.0 - ((n % 2 == 0) ? 1.0 : -1.0) * coefficient;
}

FockOperator operator_from_spectrum(const SpectralExpansion& spectrum, int dim) {
    if (dim < 1 || spectrum.size() < dim) {
        throw InvalidArgument("operator_from_spectrum: need at least dim eigenvalues");
    }
    return FockOperator::diagonal(std::span<const double>(spectrum.eigenvalues.data(), static_cast<std::size_t>(dim)));
}

FockOperator relative_coordinate_operator(const RadialSymbol& symbol, int dim, const quad::IntegrationSpec& spec) {
    if (symbol.coordinate() != SymbolCoordinate::relative) {
        throw InvalidArgument("relative_coordinate_operator: symbol must be in |alpha1 - alpha2|");
    }
    if (dim < 1) throw InvalidArgument("relative_coordinate_operator: dim must be >= 1");
    // |alpha1 - alpha2| = sqrt(2) |beta| for the phase-space variable beta of b.
    const SpectralExpansion lambda =
        quantize_radial(symbol.rescaled(std::numbers::sqrt2, SymbolCoordinate::single), dim, spec);
    Matrix out = Matrix::Zero(dim * dim, dim * dim);
    for (int total = 0; total < dim; ++total) {
        const int m = total + 1;
        Eigen::MatrixXd nb = Eigen::MatrixXd::Zero(m, m);
        for (int j = 0; j < m; ++j) {
            nb(j, j) = 0.5 * total;
            if (j + 1 < m) {
                const double hop = -0.5 * std::sqrt(static_cast<double>(j + 1) * static_cast<double>(total - j));
                nb(j + 1, j) = hop;
                nb(j, j + 1) = hop;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(nb);
        Eigen::VectorXd values(m);
        for (int k = 0; k < m; ++k) {
            const double ev = es.eigenvalues()(k);
            const long level = std::lround(ev);
            if (std::abs(ev - static_cast<double>(level)) > 1e-8 || level < 0 || level > total) {
                throw Error("relative_coordinate_operator: non-integer relative occupation " + format_number(ev));
            }
            values(k) = lambda.eigenvalues[static_cast<std::size_t>(level)];
        }
        const Eigen::MatrixXd block = es.eigenvectors() * values.asDiagonal() * es.eigenvectors().transpose();
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                out(a * dim + (total - a), b * dim + (total - b)) = block(a, b);
            }
        }
    }
    return FockOperator(std::move(out), dim, 2);
}

double discarded_weight(const SpectralExpansion& spectrum, const DensityMatrix& rho, int n_keep) {
    if (rho.modes() != 1) throw InvalidArgument("discarded_weight: single-mode state required");
    if (n_keep < 0) throw InvalidArgument("discarded_weight: n_keep must be >= 0");
    const int top = std::min(spectrum.size(), rho.dim());
    double w = 0.0;
    for (int n = n_keep; n < top; ++n) {
        w += std::abs(spectrum.eigenvalues[static_cast<std::size_t>(n)]) * rho.matrix()(n, n).real();
    }
    return w;
}

}  // namespace cbell
