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

#ifndef CBELL_PHASESPACE_HPP
#define CBELL_PHASESPACE_HPP

#include <vector>

#include "cbell/fock.hpp"
#include "cbell/quad.hpp"
#include "cbell/weyl.hpp"

namespace cbell {

struct SingleParticleCase {
    RadialSymbol symbol;
    DensityMatrix state;
    quad::IntegrationSpec spec;

    /// |1><1| at the given truncation with the sign-of-Wigner step symbol.
    static SingleParticleCase standard(int truncation = 64);
};

struct BipartiteCase {
    RadialSymbol symbol;
    DensityMatrix state;
    quad::IntegrationSpec spec;

    /// (|0,1> - |1,0>) / sqrt 2 with the relative-coordinate step symbol.
    static BipartiteCase standard(int truncation = 32);
};

/// Singlet (|0,1> - |1,0>) / sqrt 2 on dim levels per mode.
DensityMatrix bell_state(int dim);

/// Double phase-space integral of the single-particle kernel
///   (4 / pi^2) (1 - 4 |d|^2) e^{-2 |d|^2} J0(4 |d| |alpha|),  d = alpha' - alpha,
/// with |alpha| < R and |alpha'| < R' (infinite radius = whole plane).
quad::QuadResult kernel_integral(double r_alpha, double r_alpha_prime, const quad::IntegrationSpec& spec);

struct SingleParticleBound {
    quad::QuadResult i_inf_inf;  ///< I(inf, inf)
    quad::QuadResult i_r_inf;    ///< I(R, inf): alpha restricted to the disk
    quad::QuadResult i_inf_r;    ///< I(inf, R): alpha' restricted to the disk
    quad::QuadResult i_r_r;
    double hv_bound = 0.0;
    double error_estimate = 0.0;
    double qm_mean = 0.0;             ///< eigenvalue lambda_1 of the symbol
    double qm_mean_quadrature = 0.0;  ///< 2 int d^2 alpha W A, as a check
    double margin = 0.0;
    bool violation = false;
};

/// HV bound for rho = |1><1| from the closed-form kernel. The symbol must
/// have a step form; the bound is c0^2 I(inf,inf) + c0 c1 (I(R,inf) + I(inf,R))
/// + c1^2 I(R,R) with c0 the outside value and c1 the jump.
SingleParticleBound sp_hv_bound(const SingleParticleCase& c);

struct GenericBound {
    double value = 0.0;
    double quadrature_error = 0.0;
    double tail_estimate = 0.0;  ///< n-truncation and radial-cutoff estimate
    double radial_cutoff = 0.0;  ///< |alpha| beyond which the n-sum is not trusted
    int n_max = 0;
};

/// Same bound for any single-mode state through the number-state sum
///   (4 / pi^2) int d^2a d^2a' B(a) B(a') sum_{n < n_max} <n|D^dag rho D|n>
///   e^{-2|a'-a|^2} L_n(4 |a'-a|^2).
/// Throws ConvergenceError when the tail estimate exceeds spec.rel_tol.
GenericBound sp_hv_bound_generic(const DensityMatrix& rho, const RadialSymbol& symbol, int n_max,
                                 const quad::IntegrationSpec& spec);

/// HV bound for the two-outcome family {D P_even D^dag, D P_odd D^dag},
/// weights +-B(alpha)/pi.
quad::QuadResult coarse_parity_bound(const DensityMatrix& rho, const RadialSymbol& symbol,
                                     const quad::IntegrationSpec& spec);

struct SigmaCurve {
    std::vector<double> sigma;
    std::vector<double> f;
    std::vector<double> error;
    double integral = 0.0;        ///< int_0^sigma_max f
    double integral_error = 0.0;  ///< MC part only
    double tail_estimate = 0.0;   ///< exponential extrapolation of |f| past sigma_max
    bool tail_decaying = false;   ///< fit over the last five points has negative slope
    double peak = 0.0;
    std::int64_t samples_per_point = 0;
};

/// f(|sigma|) on the spec's sigma grid: a six-dimensional stratified MC per
/// point over the Gaussian relative variables and the disk of the symbol.
SigmaCurve sigma_curve(const BipartiteCase& c);

/// The same double integral sampled directly in seven dimensions with
/// |sigma| uniform on [0, sigma_max]. Independent check of the curve.
quad::QuadResult bp_direct_integral(const BipartiteCase& c, std::int64_t samples);

/// I_theta1 from the MC kernel with the disk indicator on the relative
/// coordinate and no symbol factor, |sigma| uniform on [0, r_max]. Checks the
/// sampler's normalization against the quadrature value.
quad::QuadResult bp_theta_one_direct(const BipartiteCase& c, std::int64_t samples);

struct BipartiteBound {
    quad::QuadResult i_11;
    quad::QuadResult i_theta_1;
    quad::QuadResult i_b_theta;
    SigmaCurve curve;
    double hv_bound = 0.0;
    double error_estimate = 0.0;
    double qm_mean = 0.0;
    double margin = 0.0;
    bool violation = false;
};

/// c0^2 I_11 + c0 c1 I_theta1 + c1 I_Btheta for the singlet. Throws
/// ConvergenceError when the MC error on I_Btheta exceeds 15 % of its value.
BipartiteBound bp_hv_bound(const BipartiteCase& c);

/// Tr(rho B) for the singlet from a quadrature of its Wigner function.
quad::QuadResult bp_qm_mean(const BipartiteCase& c);

}  // namespace cbell

#endif  // CBELL_PHASESPACE_HPP
