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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cbell/errors.hpp"
#include "cbell/phasespace.hpp"
#include "cbell/quad.hpp"
#include "cbell/weyl.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace cbell;

namespace {

const double kLambda1 = 4.0 / std::sqrt(std::numbers::e) - 1.0;
const double kLambda0 = 2.0 / std::sqrt(std::numbers::e) - 1.0;

double w_fock1(double r) { return std::exp(-2 * r * r) * (4 * r * r - 1) / std::numbers::pi; }

double w_bell(Complex a1, Complex a2) {
    double pi2 = std::numbers::pi * std::numbers::pi;
    return std::exp(-2 * std::norm(a1) - 2 * std::norm(a2)) * (2 * std::norm(a1 - a2) - 1) / pi2;
}

// 2 * int d^2 alpha W, the dq dp normalization, for a radial W.
double radial_norm(const std::function<double(double)>& w, double r_max) {
    quad::QuadResult q = quad::integrate_1d([&](double r) { return 2 * 2 * std::numbers::pi * r * w(r); }, 0.0,
                                            r_max, 1e-12, {}, 1'000'000);
    return q.value;
}

}  // namespace

TEST(radial_symbol, factories) {
    RadialSymbol sp = RadialSymbol::single_particle();
    EXPECT_EQ(sp(0.0), -1.0);
    EXPECT_EQ(sp(0.49), -1.0);
    EXPECT_EQ(sp(0.51), 1.0);
    ASSERT_TRUE(sp.step_form().has_value());
    EXPECT_EQ(sp.step_form()->radius, 0.5);
    EXPECT_EQ(sp.step_form()->jump(), -2.0);
    ASSERT_EQ(sp.jumps().size(), 1u);
    EXPECT_EQ(sp.jumps()[0], 0.5);

    RadialSymbol bp = RadialSymbol::bipartite();
    EXPECT_EQ(bp.coordinate(), SymbolCoordinate::relative);
    EXPECT_NEAR(bp.step_form()->radius, std::sqrt(0.5), 1e-16);
    EXPECT_EQ(bp(0.70), -1.0);
    EXPECT_EQ(bp(0.71), 1.0);

    RadialSymbol neg = sp.negated();
    EXPECT_EQ(neg(0.1), 1.0);
    EXPECT_EQ(neg(1.0), -1.0);
    EXPECT_EQ(neg.step_form()->jump(), 2.0);

    RadialSymbol c = RadialSymbol::constant(1.0);
    EXPECT_EQ(c(3.0), 1.0);
    EXPECT_EQ(c.step_form()->jump(), 0.0);

    RadialSymbol r = bp.rescaled(std::sqrt(2.0), SymbolCoordinate::single);
    EXPECT_EQ(r.coordinate(), SymbolCoordinate::single);
    EXPECT_EQ(r(0.49), -1.0);
    EXPECT_EQ(r(0.51), 1.0);

    EXPECT_THROW(RadialSymbol::step(1.0, 0.0, -1.0), InvalidArgument);
    EXPECT_THROW(RadialSymbol({}, "empty"), InvalidArgument);
}

TEST(symbol_of, number_states) {
    constexpr int dim = 64;
    FockOperator p1 = number_projector(1, dim);
    FockOperator p0 = number_projector(0, dim);
    // Same normalization that makes the ground state 2 exp(-2|alpha|^2).
    EXPECT_NEAR(symbol_of(p1, PhasePoint()), -2.0, 1e-14);
    EXPECT_NEAR(symbol_of(p0, PhasePoint(0.5, 0.0)), 2 * std::exp(-0.5), 1e-14);
    for (Complex a : {Complex(0.3, -0.1), Complex(-0.6, 0.8), Complex(1.2, 0.0)}) {
        double r2 = std::norm(a);
        EXPECT_NEAR(symbol_of(p1, PhasePoint(a)), 2 * std::exp(-2 * r2) * (4 * r2 - 1), 1e-13);
        EXPECT_NEAR(symbol_of(p0, PhasePoint(a)), 2 * std::exp(-2 * r2), 1e-13);
    }
}

TEST(symbol_of, identity_limit) {
    // The truncated identity is a projector whose symbol does not converge,
    // so approach I through sum_n t^n P_n, with symbol
    // 2 exp(-x/2) exp(t x / (1 + t)) / (1 + t), x = 4 |alpha|^2.
    constexpr int dim = 1000;
    for (double t : {0.5, 0.9, 0.97}) {
        std::vector<double> diag(dim);
        for (int n = 0; n < dim; ++n) diag[n] = std::pow(t, n);
        FockOperator op = FockOperator::diagonal(diag);
        for (double r : {0.0, 0.4, 1.0}) {
            double x = 4 * r * r;
            double expect = 2 * std::exp(-x / 2) * std::exp(t * x / (1 + t)) / (1 + t);
            EXPECT_NEAR(symbol_of(op, PhasePoint(r, 0.0)), expect, 1e-10) << t << " " << r;
        }
    }
    std::vector<double> diag(dim);
    for (int n = 0; n < dim; ++n) diag[n] = std::pow(0.97, n);
    EXPECT_NEAR(symbol_of(FockOperator::diagonal(diag), PhasePoint(0.3, 0.1)), 1.0, 0.02);
}

TEST(symbol_of, rejects_non_hermitian) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 1) = 1.0;
    EXPECT_THROW(symbol_of(FockOperator(m, 4), PhasePoint(0.2, 0.3)), NonHermitianError);
    EXPECT_THROW(symbol_of(FockOperator::identity(3, 2), PhasePoint()), InvalidArgument);
}

TEST(wigner, fock1_sign_and_values) {
    DensityMatrix rho = DensityMatrix::number_state(1, 64);
    std::vector<PhasePoint> grid;
    constexpr int points = 41;
    for (int i = 0; i < points; ++i) {
        for (int j = 0; j < points; ++j) {
            grid.emplace_back(-2.0 + 4.0 * i / (points - 1), -2.0 + 4.0 * j / (points - 1));
        }
    }
    std::vector<double> w = wigner(rho, grid);
    ASSERT_EQ(w.size(), grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double r = grid[k].modulus();
        EXPECT_EQ(w[k] < 0, r < 0.5) << grid[k].value();
        EXPECT_NEAR(w[k], w_fock1(r), 1e-14);
        EXPECT_EQ(w[k], wigner(rho, grid[k]));
    }
}

TEST(wigner, normalization) {
    EXPECT_NEAR(radial_norm(w_fock1, 6.0), 1.0, 1e-8);
    DensityMatrix r0 = DensityMatrix::number_state(0, 64);
    DensityMatrix r1 = DensityMatrix::number_state(1, 64);
    auto w0 = [&](double r) { return wigner(r0, PhasePoint(r, 0.0)); };
    auto w1 = [&](double r) { return wigner(r1, PhasePoint(r, 0.0)); };
    EXPECT_NEAR(radial_norm(w0, 6.0), 1.0, 1e-8);
    EXPECT_NEAR(radial_norm(w1, 6.0), 1.0, 1e-8);

    // Bell state over both modes; 4 d^2a1 d^2a2 is the dq1 dp1 dq2 dp2 measure.
    quad::RadialPairDomain dom;
    dom.outer_max = 6.0;
    dom.inner_max = 6.0;
    quad::IntegrationSpec spec;
    spec.abs_tol = 1e-10;
    auto f = [](double r, double rp, double th) { return 4 * w_bell(Complex(r, 0.0), std::polar(rp, th)); };
    EXPECT_NEAR(quad::integrate_radial_pair(f, dom, spec).value, 1.0, 1e-8);
}

TEST(wigner, bell_state) {
    DensityMatrix bell = bell_state(8);
    EXPECT_NEAR(bell.purity(), 1.0, 1e-12);
    EXPECT_NEAR(wigner_two_mode(bell, PhasePoint(), PhasePoint()), -1.0 / (std::numbers::pi * std::numbers::pi),
                1e-8);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int k = 0; k < 20; ++k) {
        Complex a1(u(rng), u(rng));
        Complex a2(u(rng), u(rng));
        EXPECT_NEAR(wigner_two_mode(bell, PhasePoint(a1), PhasePoint(a2)), w_bell(a1, a2), 1e-13);
    }
    EXPECT_THROW(wigner_two_mode(DensityMatrix::number_state(0, 3), PhasePoint(), PhasePoint()),
                 InvalidArgument);
}

TEST(quantize_radial, constant_symbol) {
    SpectralExpansion s = quantize_radial(RadialSymbol::constant(1.0), 12, quad::IntegrationSpec{});
    ASSERT_EQ(s.size(), 12);
    for (double l : s.eigenvalues) EXPECT_NEAR(l, 1.0, 1e-12);
    RadialSymbol smooth([](double) { return 1.0; }, "one");
    SpectralExpansion q = quantize_radial(smooth, 12, quad::IntegrationSpec{});
    for (double l : q.eigenvalues) EXPECT_NEAR(l, 1.0, 1e-12);
}

TEST(quantize_radial, step_symbol) {
    SpectralExpansion s = quantize_radial(RadialSymbol::single_particle(), 4, quad::IntegrationSpec{});
    EXPECT_NEAR(s.eigenvalues[1], kLambda1, 1e-12);
    EXPECT_NEAR(s.eigenvalues[0], kLambda0, 1e-12);
    for (double e : s.error_estimates) EXPECT_LT(e, 1e-9);
    SpectralExpansion n = quantize_radial(RadialSymbol::single_particle().negated(), 2, quad::IntegrationSpec{});
    EXPECT_NEAR(n.eigenvalues[1], -kLambda1, 1e-12);
}

TEST(quantize_radial, gaussian_symbol) {
    // Laplace transform of L_n gives 2 / 3^(n+1).
    RadialSymbol g([](double r) { return std::exp(-r * r); }, "gaussian");
    SpectralExpansion s = quantize_radial(g, 20, quad::IntegrationSpec{});
    for (int n = 0; n < 20; ++n) {
        EXPECT_NEAR(s.eigenvalues[n], 2.0 / std::pow(3.0, n + 1), 1e-10) << n;
    }
}

TEST(quantize_radial, round_trip) {
    RadialSymbol g([](double r) { return std::exp(-r * r); }, "gaussian");
    constexpr int dim = 64;
    SpectralExpansion s = quantize_radial(g, dim, quad::IntegrationSpec{});
    FockOperator op = operator_from_spectrum(s, dim);
    for (double r = 0.0; r <= 2.0; r += 0.1) {
        for (double phi : {0.0, 1.3}) {
            EXPECT_NEAR(symbol_of(op, PhasePoint(std::polar(r, phi))), std::exp(-r * r), 1e-6) << r;
        }
    }
}

TEST(quantize_radial, rejects_bad_input) {
    EXPECT_THROW(quantize_radial(RadialSymbol::single_particle(), 0, quad::IntegrationSpec{}), InvalidArgument);
    EXPECT_THROW(quantize_radial(RadialSymbol::bipartite(), 3, quad::IntegrationSpec{}), InvalidArgument);
}

TEST(operator_from_spectrum, diagonal_structure) {
    constexpr int dim = 16;
    SpectralExpansion s = quantize_radial(RadialSymbol::single_particle(), dim, quad::IntegrationSpec{});
    FockOperator op = operator_from_spectrum(s, dim);
    FockOperator pi = parity(dim);
    std::vector<double> ns(dim);
    for (int n = 0; n < dim; ++n) ns[n] = n;
    FockOperator number = FockOperator::diagonal(ns);
    EXPECT_EQ((op * pi).max_abs_diff(pi * op), 0.0);
    EXPECT_EQ((op * number).max_abs_diff(number * op), 0.0);
    for (int n = 0; n < dim; ++n) EXPECT_EQ(op(n, n).real(), s.eigenvalues[n]);
    EXPECT_THROW(operator_from_spectrum(s, dim + 1), InvalidArgument);
}

TEST(bell_eigenvalue_generating, values) {
    EXPECT_NEAR(bell_eigenvalue_generating(1), kLambda1, 1e-12);
    EXPECT_NEAR(bell_eigenvalue_generating(0), kLambda0, 1e-12);
    SpectralExpansion s = quantize_radial(RadialSymbol::single_particle(), 11, quad::IntegrationSpec{});
    for (int n = 0; n <= 10; ++n) {
        EXPECT_NEAR(bell_eigenvalue_generating(n), s.eigenvalues[n], 1e-8) << n;
    }
    EXPECT_THROW(bell_eigenvalue_generating(21), InvalidArgument);
    EXPECT_THROW(bell_eigenvalue_generating(-1), InvalidArgument);
}

TEST(relative_coordinate_operator, bell_expectation) {
    constexpr int dim = 16;
    FockOperator b = relative_coordinate_operator(RadialSymbol::bipartite(), dim, quad::IntegrationSpec{});
    EXPECT_EQ(b.modes(), 2);
    EXPECT_TRUE(b.is_hermitian());
    DensityMatrix bell = bell_state(dim);
    EXPECT_NEAR(real_trace(bell.op(), b), kLambda1, 1e-10);
    FockOperator id = relative_coordinate_operator(RadialSymbol::constant(1.0, SymbolCoordinate::relative), dim,
                                                   quad::IntegrationSpec{});
    EXPECT_NEAR(real_trace(bell.op(), id), 1.0, 1e-10);
    FockOperator neg =
        relative_coordinate_operator(RadialSymbol::bipartite().negated(), dim, quad::IntegrationSpec{});
    EXPECT_NEAR(real_trace(bell.op(), neg), -kLambda1, 1e-10);
    // |0,0> is the relative ground state.
    EXPECT_NEAR(b(0, 0).real(), kLambda0, 1e-10);
    EXPECT_THROW(relative_coordinate_operator(RadialSymbol::single_particle(), dim, quad::IntegrationSpec{}),
                 InvalidArgument);
}

TEST(relative_coordinate_operator, symbol_check) {
    // The two-mode symbol of the operator is the step in |a1 - a2|, checked
    // on a product state far from the jump via the trace of rho B against W.
    constexpr int dim = 12;
    FockOperator b = relative_coordinate_operator(RadialSymbol::bipartite(), dim, quad::IntegrationSpec{});
    Vector psi = Vector::Zero(dim * dim);
    psi(0 * dim + 0) = 1.0;
    DensityMatrix vac = DensityMatrix::pure(psi, dim, 2);
    // Relative coordinate of the vacuum is a ground state with jump at r = 1/2.
    EXPECT_NEAR(real_trace(vac.op(), b), 2 / std::sqrt(std::numbers::e) - 1, 1e-10);
}

TEST(discarded_weight, number_state) {
    SpectralExpansion s = quantize_radial(RadialSymbol::single_particle(), 8, quad::IntegrationSpec{});
    DensityMatrix rho = DensityMatrix::number_state(1, 8);
    EXPECT_EQ(discarded_weight(s, rho, 2), 0.0);
    EXPECT_NEAR(discarded_weight(s, rho, 1), kLambda1, 1e-15);
    EXPECT_THROW(discarded_weight(s, rho, -1), InvalidArgument);
}
