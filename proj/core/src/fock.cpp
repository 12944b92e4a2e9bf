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

#include "cbell/fock.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cbell/errors.hpp"
#include "cbell/specfun.hpp"

namespace cbell {
namespace {

Eigen::Index total_size(int dim, int modes) {
    Eigen::Index n = 1;
    for (int m = 0; m < modes; ++m) n *= dim;
    return n;
}

}  // namespace

PhasePoint PhasePoint::from_qp(double q, double p) {
    return PhasePoint(Complex(q, p) / std::numbers::sqrt2);
}

double PhasePoint::q() const { return std::numbers::sqrt2 * alpha_.real(); }
double PhasePoint::p() const { return std::numbers::sqrt2 * alpha_.imag(); }

FockOperator::FockOperator(Matrix entries, int dim, int modes)
    : entries_(std::move(entries)), dim_(dim), modes_(modes) {
    if (dim < 1) throw InvalidArgument("FockOperator: dim must be >= 1");
    if (modes != 1 && modes != 2) throw InvalidArgument("FockOperator: modes must be 1 or 2");
    const Eigen::Index n = total_size(dim, modes);
    if (entries_.rows() != n || entries_.cols() != n) {
        throw InvalidArgument("FockOperator: matrix is " + std::to_string(entries_.rows()) + "x" +
                              std::to_string(entries_.cols()) + ", expected " + std::to_string(n));
    }
}

FockOperator FockOperator::identity(int dim, int modes) {
    const Eigen::Index n = total_size(dim, modes);
    return FockOperator(Matrix::Identity(n, n), dim, modes);
}

FockOperator FockOperator::zero(int dim, int modes) {
    const Eigen::Index n = total_size(dim, modes);
    return FockOperator(Matrix::Zero(n, n), dim, modes);
}

FockOperator FockOperator::diagonal(std::span<const double> values) {
    const auto n = static_cast<Eigen::Index>(values.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
    return FockOperator(std::move(m), static_cast<int>(n), 1);
}

bool FockOperator::is_hermitian(double tol) const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool FockOperator::is_projector(double tol) const {
    return (entries_ * entries_ - entries_).cwiseAbs().maxCoeff() < tol;
}

FockOperator FockOperator::adjoint() const { return FockOperator(entries_.adjoint(), dim_, modes_); }

double FockOperator::max_abs_diff(const FockOperator& other) const {
    require_compatible(other, "max_abs_diff");
    return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

Matrix FockOperator::leading_block(int k) const {
    if (modes_ != 1 || k < 0 || k > dim_) throw InvalidArgument("leading_block: bad block size");
    return entries_.topLeftCorner(k, k);
}

FockOperator& FockOperator::operator+=(const FockOperator& rhs) {
    require_compatible(rhs, "operator+");
    entries_ += rhs.entries_;
    return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& rhs) {
    require_compatible(rhs, "operator-");
    entries_ -= rhs.entries_;
    return *this;
}

FockOperator& FockOperator::operator*=(Complex s) {
    entries_ *= s;
    return *this;
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    a.require_compatible(b, "operator*");
    return FockOperator(a.entries_ * b.entries_, a.dim_, a.modes_);
}

void FockOperator::require_compatible(const FockOperator& other, const char* what) const {
    if (dim_ != other.dim_ || modes_ != other.modes_) {
        throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(dim_) + "^" +
                              std::to_string(modes_) + " vs " + std::to_string(other.dim_) + "^" +
                              std::to_string(other.modes_) + ")");
    }
}

DensityMatrix::DensityMatrix(FockOperator op) : op_(std::move(op)) {
    if (!op_.is_hermitian(1e-10)) throw InvalidArgument("DensityMatrix: operator is not Hermitian");
    const double tr = op_.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) {
        throw InvalidArgument("DensityMatrix: trace " + format_number(tr) + " differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op_.matrix(), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw InvalidArgument("DensityMatrix: operator has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::renormalized(const FockOperator& op) {
    const double tr = op.trace().real();
    if (!(tr > kProbabilityFloor)) throw InvalidArgument("DensityMatrix: trace is not positive");
    return DensityMatrix((1.0 / tr) * op);
}

DensityMatrix DensityMatrix::pure(const Vector& psi, int dim, int modes) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw InvalidArgument("DensityMatrix::pure: zero vector");
    const Vector v = psi / norm;
    return DensityMatrix(FockOperator(v * v.adjoint(), dim, modes));
}

DensityMatrix DensityMatrix::number_state(int n, int dim) { return DensityMatrix(number_projector(n, dim)); }

double DensityMatrix::purity() const { return (op_.matrix() * op_.matrix()).trace().real(); }

FockOperator number_projector(int n, int dim) {
    if (n < 0 || n >= dim) {
        throw InvalidArgument("number_projector: level " + std::to_string(n) + " outside [0, " +
                              std::to_string(dim) + ")");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(n, n) = 1.0;
    return FockOperator(std::move(m), dim);
}

FockOperator parity(int dim) {
    if (dim < 1) throw InvalidArgument("parity: dim must be >= 1");
    Matrix m = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return FockOperator(std::move(m), dim);
}

Complex displacement_element(int row, int col, PhasePoint alpha) {
    if (row < 0 || col < 0) throw InvalidArgument("displacement_element: negative index");
    const int n = std::min(row, col);
    const int a = std::abs(row - col);
    // <n+a|D(alpha)|n> directly; <n|D(alpha)|n+a> = <n+a|D(-alpha)|n>^*.
    const Complex z = (row >= col) ? alpha.value() : -std::conj(alpha.value());
    const double r2 = std::norm(z);
    const double lag = specfun::assoc_laguerre(n, a, r2);
    if (a == 0) return Complex(std::exp(-0.5 * r2) * lag, 0.0);
    if (r2 == 0.0) return Complex(0.0, 0.0);
    const double log_mag = -0.5 * r2 + 0.5 * a * std::log(r2) +
                           0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + a + 1.0));
    return std::exp(log_mag) * lag * std::polar(1.0, a * std::arg(z));
}

FockOperator displacement(PhasePoint alpha, int dim) {
    if (dim < 1) throw InvalidArgument("displacement: dim must be >= 1");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) m(i, j) = displacement_element(i, j, alpha);
    }
    return FockOperator(std::move(m), dim);
}

FockOperator quantizer(PhasePoint alpha, int dim) {
    if (dim < 1) throw InvalidArgument("quantizer: dim must be >= 1");
    // D(a) Pi D(a)^dagger = D(a) D(a) Pi = D(2a) Pi since Pi D(-a) = D(a) Pi.
    const PhasePoint twice = 2.0 * alpha;
    Matrix m(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < dim; ++i) m(i, j) = sign * displacement_element(i, j, twice);
    }
    m /= std::numbers::pi;
    return FockOperator(std::move(m), dim);
}

Collapse luders_collapse(const DensityMatrix& rho, const FockOperator& projector) {
    const double p = real_trace(rho.op(), projector);
    if (!(p > kProbabilityFloor)) {
        throw NullOutcomeError("luders_collapse: outcome probability " + format_number(p) +
                                   " is below the floor",
                               p);
    }
    FockOperator post = projector * rho.op() * projector;
    post *= Complex(1.0 / p, 0.0);
    // Hermitise to clean rounding before validation.
    Matrix m = 0.5 * (post.matrix() + post.matrix().adjoint());
    return Collapse{DensityMatrix(FockOperator(std::move(m), post.dim(), post.modes())), p};
}

FockOperator tensor(const FockOperator& a, const FockOperator& b) {
    if (a.modes() != 1 || b.modes() != 1) throw InvalidArgument("tensor: both factors must be single-mode");
    if (a.dim() != b.dim()) throw InvalidArgument("tensor: dimension mismatch");
    const int d = a.dim();
    Matrix m(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m.block(i * d, j * d, d, d) = a(i, j) * b.matrix();
    }
    return FockOperator(std::move(m), d, 2);
}

double real_trace(const FockOperator& a, const FockOperator& b, double tol) {
    if (a.dim() != b.dim() || a.modes() != b.modes()) throw InvalidArgument("real_trace: dimension mismatch");
    // Tr(AB) = sum_ij A_ij B_ji without forming the product.
    const Complex t = a.matrix().cwiseProduct(b.matrix().transpose()).sum();
    if (std::abs(t.imag()) > tol) {
        throw NonHermitianError("trace has imaginary residue " + format_number(t.imag()));
    }
    return t.real();
}

}  // namespace cbell
