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

#ifndef CBELL_WEYL_HPP
#define CBELL_WEYL_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbell/fock.hpp"
#include "cbell/quad.hpp"

namespace cbell {

/// Which radius a symbol is a function of: |alpha| for one mode, or
/// |alpha1 - alpha2| for a two-mode symbol.
enum class SymbolCoordinate { single, relative };

/// Piecewise-constant symbol: `inside` for r < radius, `outside` beyond.
struct StepForm {
    double outside;
    double inside;
    double radius;

    double jump() const { return inside - outside; }
};

/// Real Weyl symbol depending on one radius. Jump radii must be listed so
/// the integrators can split there.
class RadialSymbol {
   public:
    RadialSymbol(std::function<double(double)> eval, std::string description, std::vector<double> jumps = {},
                 SymbolCoordinate coordinate = SymbolCoordinate::single);

    static RadialSymbol step(double inside, double outside, double radius,
                             SymbolCoordinate coordinate = SymbolCoordinate::single);
    static RadialSymbol constant(double value, SymbolCoordinate coordinate = SymbolCoordinate::single);
    /// 1 - 2 theta(1 - 4 |alpha|^2): the sign of the |1> Wigner function.
    static RadialSymbol single_particle();
    /// 1 - 2 theta(1 - 2 |alpha1 - alpha2|^2).
    static RadialSymbol bipartite();

    double operator()(double r) const { return eval_(r); }
    const std::string& description() const { return description_; }
    const std::vector<double>& jumps() const { return jumps_; }
    const std::optional<StepForm>& step_form() const { return step_; }
    SymbolCoordinate coordinate() const { return coordinate_; }

    /// Same symbol as a function of s * r.
    RadialSymbol rescaled(double s, SymbolCoordinate coordinate) const;
    RadialSymbol negated() const;

   private:
    std::function<double(double)> eval_;
    std::string description_;
    std::vector<double> jumps_;
    std::optional<StepForm> step_;
    SymbolCoordinate coordinate_;
};

/// Eigenvalues of a radial operator on the number states, sum_n lambda_n P_n.
struct SpectralExpansion {
    std::vector<double> eigenvalues;
    std::vector<double> error_estimates;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// 2 pi Tr(op Q(alpha)). Throws NonHermitianError on an imaginary residue
/// above 1e-9. Zero entries of op are skipped, so sparse states are cheap.
double symbol_of(const FockOperator& op, PhasePoint alpha);

/// W(alpha) = Tr(rho Q(alpha)), normalized so that the integral over dq dp is one.
std::vector<double> wigner(const DensityMatrix& rho, std::span<const PhasePoint> grid);
double wigner(const DensityMatrix& rho, PhasePoint alpha);

/// Tr(rho Q(alpha1) (x) Q(alpha2)) for a two-mode state.
double wigner_two_mode(const DensityMatrix& rho, PhasePoint alpha1, PhasePoint alpha2);

/// lambda_n = int_0^inf ds A(sqrt s) 2 (-1)^n L_n(4 s) e^{-2 s}, n < n_levels.
/// A is treated as constant beyond spec.r_max, which makes symbols with a
/// nonzero asymptote (the identity, step symbols) exact at every level.
/// Throws ConvergenceError when a level misses spec.abs_tol.
SpectralExpansion quantize_radial(const RadialSymbol& symbol, int n_levels, const quad::IntegrationSpec& spec);

/// Eigenvalue n of the single-particle Bell operator from the Taylor
/// coefficients of G(t) = 2 (1 - exp((t + 1) / (2 (t - 1)))) / (t + 1),
/// extracted on a circle of radius 0.4 with 256 nodes. Requires 0 <= n <= 20.
double bell_eigenvalue_generating(int n);

/// sum_n lambda_n |n><n| on the first dim levels.
FockOperator operator_from_spectrum(const SpectralExpansion& spectrum, int dim);

/// Two-mode operator of a symbol in |alpha1 - alpha2|. It is a function of
/// b^dagger b with b = (a1 - a2) / sqrt 2, built block by block in total
/// number N. Blocks with N >= dim are cut by the truncation and set to zero.
FockOperator relative_coordinate_operator(const RadialSymbol& symbol, int dim, const quad::IntegrationSpec& spec);

/// sum_{n >= n_keep} |lambda_n| <n|rho|n>: weight of rho that a spectrum cut
/// at n_keep levels cannot see.
double discarded_weight(const SpectralExpansion& spectrum, const DensityMatrix& rho, int n_keep);

}  // namespace cbell

#endif  // CBELL_WEYL_HPP
