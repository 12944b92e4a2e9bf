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
#include "cbell/fock.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace cbell;

namespace {

constexpr int kDim = 64;
constexpr int kProtected = kDim / 2;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Hermite functions psi_0..psi_{n-1} at x (hbar = 1, unit mass and frequency).
std::vector<double> hermite_functions(int n, double x) {
    std::vector<double> psi(n);
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2);
    if (n > 1) psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int k = 1; k + 1 < n; ++k) {
        psi[k + 1] = std::sqrt(2.0 / (k + 1)) * x * psi[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * psi[k - 1];
    }
    return psi;
}

std::vector<Complex> sample_alphas() {
    return {{0.0, 0.0}, {0.3, 0.2}, {-1.1, 0.4}, {0.0, -1.7}, {1.2, 1.5}, {-1.9, -0.3}};
}

}  // namespace

TEST(phase_point, coordinates) {
    PhasePoint a = PhasePoint::from_qp(1.0, -2.0);
    EXPECT_NEAR(a.value().real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(a.value().imag(), -2.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(a.q(), 1.0, 1e-15);
    EXPECT_NEAR(a.p(), -2.0, 1e-15);
    EXPECT_NEAR((a - a).modulus(), 0.0, 0.0);
}

TEST(fock_operator, rejects_bad_shapes) {
    EXPECT_THROW(FockOperator(Matrix::Zero(3, 3), 4), InvalidArgument);
    EXPECT_THROW(FockOperator(Matrix::Zero(4, 4), 2, 3), InvalidArgument);
    EXPECT_THROW(FockOperator::identity(3) + FockOperator::identity(4), InvalidArgument);
    EXPECT_THROW(FockOperator::identity(3) * FockOperator::identity(3, 2), InvalidArgument);
}

TEST(density_matrix, validation) {
    Matrix m = Matrix::Identity(3, 3);
    EXPECT_THROW(DensityMatrix(FockOperator(m, 3)), InvalidArgument);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix(FockOperator(neg, 2)), InvalidArgument);
    Matrix nh = Matrix::Zero(2, 2);
    nh(0, 0) = 1.0;
    nh(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix(FockOperator(nh, 2)), InvalidArgument);
    DensityMatrix r = DensityMatrix::renormalized(FockOperator(m, 3));
    EXPECT_NEAR(r.purity(), 1.0 / 3, 1e-15);
    EXPECT_NEAR(DensityMatrix::number_state(2, 5).purity(), 1.0, 1e-15);
}

TEST(number_projector, basics) {
    FockOperator p0 = number_projector(0, 4);
    Matrix expect = Matrix::Zero(4, 4);
    expect(0, 0) = 1.0;
    EXPECT_EQ(max_abs(p0.matrix() - expect), 0.0);
    for (int n = 0; n < 6; ++n) {
        FockOperator pn = number_projector(n, 6);
        EXPECT_EQ(pn.trace(), Complex(1.0, 0.0));
        EXPECT_TRUE(pn.is_projector());
        for (int m = 0; m < 6; ++m) {
            if (m != n) {
                EXPECT_EQ(max_abs((pn * number_projector(m, 6)).matrix()), 0.0);
            }
        }
    }
    EXPECT_THROW(number_projector(4, 4), InvalidArgument);
    EXPECT_THROW(number_projector(-1, 4), InvalidArgument);
}

TEST(parity, basics) {
    FockOperator pi3 = parity(3);
    EXPECT_EQ(pi3(0, 0), Complex(1.0));
    EXPECT_EQ(pi3(1, 1), Complex(-1.0));
    EXPECT_EQ(pi3(2, 2), Complex(1.0));
    FockOperator pi = parity(10);
    EXPECT_EQ(pi.max_abs_diff(FockOperator::identity(10) * FockOperator::identity(10)), 2.0);
    EXPECT_EQ((pi * pi).max_abs_diff(FockOperator::identity(10)), 0.0);
    for (int n = 0; n < 10; ++n) {
        FockOperator pn = number_projector(n, 10);
        EXPECT_EQ((pi * pn * pi).max_abs_diff(pn), 0.0);
        EXPECT_EQ((pi * pn).max_abs_diff((n % 2 == 0 ? 1.0 : -1.0) * pn), 0.0);
    }
}

TEST(displacement, identity_at_origin) {
    for (int n = 0; n < 40; ++n) {
        EXPECT_EQ(displacement_element(n, n, PhasePoint()), Complex(1.0));
    }
    EXPECT_LT(displacement(PhasePoint(), 16).max_abs_diff(FockOperator::identity(16)), 1e-15);
}

TEST(displacement, closed_form_entries) {
    Complex a(0.4, -0.3);
    double m2 = std::norm(a);
    Complex d11 = displacement_element(1, 1, PhasePoint(a));
    EXPECT_NEAR(std::abs(d11 - std::exp(-m2 / 2) * (1 - m2)), 0.0, 1e-15);
    Complex d30 = displacement_element(3, 0, PhasePoint(0.5, 0.0));
    EXPECT_NEAR(d30.real(), std::exp(-0.125) * 0.125 / std::sqrt(6.0), 1e-15);
    EXPECT_NEAR(d30.imag(), 0.0, 1e-15);
}

TEST(displacement, matches_matrix_exponential) {
    // The exponential of the truncated generator is accurate away from the
    // truncation edge, so compare the leading block only.
    constexpr int n = 80;
    for (Complex a : sample_alphas()) {
        Matrix oracle = oracle::displacement_expm(a, n);
        Matrix closed = displacement(PhasePoint(a), n).matrix();
        EXPECT_LT(max_abs(oracle.topLeftCorner(30, 30) - closed.topLeftCorner(30, 30)), 1e-10) << a;
    }
    Matrix oracle40 = oracle::displacement_expm(Complex(0.5, 0.0), 40);
    EXPECT_LT(std::abs(oracle40(3, 0) - displacement_element(3, 0, PhasePoint(0.5, 0.0))), 1e-10);
    Complex b(0.7, -0.2);
    Matrix oracle_b = oracle::displacement_expm(b, 40);
    EXPECT_LT(std::abs(oracle_b(1, 1) - std::exp(-std::norm(b) / 2) * (1 - std::norm(b))), 1e-10);
}

namespace {

// Products of truncated displaced operators are exact only on a leading
// block whose size shrinks with |alpha|. Sizes below are for dim 64.
struct Protected {
    double radius;
    int unitary_cols;
    int involution_block;
};

constexpr Protected kProtectedBlocks[] = {{0.5, kProtected, kProtected}, {1.0, kProtected, 24}, {2.0, 20, 7}};

std::vector<Complex> on_circle(double r) {
    std::vector<Complex> out;
    for (int k = 0; k < 5; ++k) {
        out.push_back(std::polar(r, 0.3 + 1.1 * k));
    }
    return out;
}

}  // namespace

TEST(displacement, unitary_on_protected_subspace) {
    for (const Protected& pr : kProtectedBlocks) {
        for (Complex a : on_circle(pr.radius)) {
            Matrix d = displacement(PhasePoint(a), kDim).matrix();
            Matrix dd = d.adjoint() * d - Matrix::Identity(kDim, kDim);
            EXPECT_LT(max_abs(dd.leftCols(pr.unitary_cols)), 1e-8) << a;
            int k = pr.unitary_cols;
            Matrix inv = (displacement(PhasePoint(a), kDim) * displacement(PhasePoint(-a), kDim)).matrix();
            EXPECT_LT(max_abs(inv.topLeftCorner(k, k) - Matrix::Identity(k, k)), 1e-8) << a;
        }
    }
}

TEST(displacement, composition_law) {
    std::vector<Complex> alphas = sample_alphas();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        Complex a = alphas[i] * 0.5;
        Complex b = alphas[(i + 2) % alphas.size()] * 0.5;
        Matrix lhs = (displacement(PhasePoint(a), kDim) * displacement(PhasePoint(b), kDim)).matrix();
        Complex phase = std::exp((a * std::conj(b) - std::conj(a) * b) / 2.0);
        Matrix rhs = phase * displacement(PhasePoint(a + b), kDim).matrix();
        EXPECT_LT(max_abs(lhs.topLeftCorner(kProtected, kProtected) - rhs.topLeftCorner(kProtected, kProtected)),
                  1e-7)
            << a << " " << b;
    }
}

TEST(displacement, parity_commutation) {
    FockOperator pi = parity(kDim);
    for (Complex a : sample_alphas()) {
        FockOperator lhs = pi * displacement(PhasePoint(a), kDim);
        FockOperator rhs = displacement(PhasePoint(-a), kDim) * pi;
        EXPECT_LT(lhs.max_abs_diff(rhs), 1e-14);
    }
}

TEST(quantizer, origin_is_scaled_parity) {
    EXPECT_LT(quantizer(PhasePoint(), 20).max_abs_diff((1.0 / std::numbers::pi) * parity(20)), 1e-16);
}

TEST(quantizer, displaced_parity_is_involution) {
    for (const Protected& pr : kProtectedBlocks) {
        int k = pr.involution_block;
        for (Complex a : on_circle(pr.radius)) {
            FockOperator u = std::numbers::pi * quantizer(PhasePoint(a), kDim);
            EXPECT_TRUE(u.is_hermitian());
            Matrix sq = (u * u).matrix();
            EXPECT_LT(max_abs(sq.topLeftCorner(k, k) - Matrix::Identity(k, k)), 1e-8) << a;
        }
    }
}

TEST(quantizer, position_kernel) {
    // <m| D Pi D^dagger |n> = int dx psi_m(x) e^{2ip(x - q)} psi_n(2q - x).
    PhasePoint alpha(0.3, 0.2);
    double q = alpha.q();
    double p = alpha.p();
    constexpr int levels = 8;
    constexpr int steps = 6000;
    const double lo = -14.0;
    const double hi = 14.0;
    const double h = (hi - lo) / steps;
    Matrix kernel = Matrix::Zero(levels, levels);
    for (int i = 0; i <= steps; ++i) {
        double x = lo + h * i;
        std::vector<double> pm = hermite_functions(levels, x);
        std::vector<double> pn = hermite_functions(levels, 2 * q - x);
        Complex phase = std::polar(1.0, 2 * p * (x - q));
        double w = (i == 0 || i == steps) ? h / 2 : h;
        for (int m = 0; m < levels; ++m) {
            for (int n = 0; n < levels; ++n) {
                kernel(m, n) += w * pm[m] * pn[n] * phase;
            }
        }
    }
    kernel /= std::numbers::pi;
    Matrix q_fock = quantizer(alpha, kDim).matrix().topLeftCorner(levels, levels);
    EXPECT_LT(max_abs(kernel - q_fock), 1e-6);
}

TEST(luders_collapse, eigenstate) {
    DensityMatrix rho = DensityMatrix::number_state(1, 6);
    Collapse c = luders_collapse(rho, number_projector(1, 6));
    EXPECT_NEAR(c.probability, 1.0, 1e-15);
    EXPECT_LT(c.state.op().max_abs_diff(rho.op()), 1e-15);
}

TEST(luders_collapse, null_outcome) {
    DensityMatrix rho = DensityMatrix::number_state(1, 6);
    try {
        luders_collapse(rho, number_projector(0, 6));
        FAIL() << "expected NullOutcomeError";
    } catch (const NullOutcomeError& e) {
        EXPECT_EQ(e.probability(), 0.0);
    }
}

TEST(luders_collapse, classical_mixture) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    DensityMatrix rho{FockOperator(m, 4)};
    Collapse c = luders_collapse(rho, number_projector(0, 4));
    EXPECT_NEAR(c.probability, 0.5, 1e-15);
    EXPECT_LT(c.state.op().max_abs_diff(number_projector(0, 4)), 1e-15);
}

TEST(luders_collapse, valid_state_and_conditional_rule) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        constexpr int n = 6;
        DensityMatrix rho = oracle::random_density(n, rng);
        Matrix u = oracle::random_unitary(n, rng);
        std::vector<FockOperator> rank1 = oracle::rank_one_family(u, n);
        // P and Q share an eigenbasis, so they commute.
        FockOperator p = rank1[0] + rank1[1] + rank1[2];
        FockOperator q = rank1[1] + rank1[3];
        Collapse c = luders_collapse(rho, p);
        EXPECT_NEAR(c.state.op().trace().real(), 1.0, 1e-10);
        Eigen::SelfAdjointEigenSolver<Matrix> es(c.state.matrix());
        EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
        double lhs = real_trace(c.state.op(), q) * c.probability;
        double rhs = real_trace(rho.op(), p * q);
        EXPECT_NEAR(lhs, rhs, 1e-10);
    }
}

TEST(tensor, kronecker_properties) {
    std::mt19937_64 rng(8);
    constexpr int n = 4;
    FockOperator id = tensor(FockOperator::identity(n), FockOperator::identity(n));
    EXPECT_EQ(id.max_abs_diff(FockOperator::identity(n, 2)), 0.0);
    EXPECT_EQ(id.modes(), 2);
    FockOperator a(oracle::random_complex(n, rng), n);
    FockOperator b(oracle::random_complex(n, rng), n);
    FockOperator c(oracle::random_complex(n, rng), n);
    FockOperator d(oracle::random_complex(n, rng), n);
    EXPECT_LT(std::abs(tensor(a, b).trace() - a.trace() * b.trace()), 1e-12);
    EXPECT_LT((tensor(a, b) * tensor(c, d)).max_abs_diff(tensor(a * c, b * d)), 1e-12);
    // n2 runs fastest.
    FockOperator ab = tensor(a, b);
    EXPECT_EQ(ab(1 * n + 2, 3 * n + 0), a(1, 3) * b(2, 0));
    EXPECT_THROW(tensor(a, FockOperator::identity(3)), InvalidArgument);
    EXPECT_THROW(tensor(ab, a), InvalidArgument);
}

TEST(real_trace, rejects_non_hermitian_product) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = Complex(0.0, 1.0);
    EXPECT_THROW(real_trace(FockOperator(m, 2), FockOperator::identity(2)), NonHermitianError);
}
