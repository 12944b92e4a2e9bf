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

#ifndef CBELL_FOCK_HPP
#define CBELL_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>

namespace cbell {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Outcomes with Tr(rho P) at or below this are treated as impossible.
inline constexpr double kProbabilityFloor = 1e-12;

/// Complex phase-space coordinate, hbar = 1 and unit length scale, so
/// alpha = (q + i p) / sqrt(2).
class PhasePoint {
   public:
    constexpr PhasePoint() = default;
    constexpr explicit PhasePoint(Complex alpha) : alpha_(alpha) {}
    constexpr PhasePoint(double re, double im) : alpha_(re, im) {}

    static PhasePoint from_qp(double q, double p);

    constexpr Complex value() const { return alpha_; }
    double modulus() const { return std::abs(alpha_); }
    double q() const;
    double p() const;

    PhasePoint operator-() const { return PhasePoint(-alpha_); }
    friend PhasePoint operator+(PhasePoint a, PhasePoint b) { return PhasePoint(a.alpha_ + b.alpha_); }
    friend PhasePoint operator-(PhasePoint a, PhasePoint b) { return PhasePoint(a.alpha_ - b.alpha_); }
    friend PhasePoint operator*(double s, PhasePoint a) { return PhasePoint(s * a.alpha_); }

   private:
    Complex alpha_{0.0, 0.0};
};

/// Dense operator on a truncated oscillator basis |0> .. |dim-1>, for one
/// mode or two. Two-mode operators live on the Kronecker basis |n1, n2>
/// with flat index n1 * dim + n2 (n2 runs fastest).
class FockOperator {
   public:
    FockOperator(Matrix entries, int dim, int modes = 1);

    static FockOperator identity(int dim, int modes = 1);
    static FockOperator zero(int dim, int modes = 1);
    static FockOperator diagonal(std::span<const double> values);

    int dim() const { return dim_; }
    int modes() const { return modes_; }
    Eigen::Index size() const { return entries_.rows(); }
    const Matrix& matrix() const { return entries_; }
    Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    /// True when max |A - A^dagger| < 1e-12.
    bool is_hermitian(double tol = 1e-12) const;
    /// True when max |P^2 - P| < tol.
    bool is_projector(double tol = 1e-10) const;

    FockOperator adjoint() const;
    Complex trace() const { return entries_.trace(); }
    /// Largest entry modulus of this - other.
    double max_abs_diff(const FockOperator& other) const;
    /// Restriction to the first k basis states (single mode only).
    Matrix leading_block(int k) const;

    FockOperator& operator+=(const FockOperator& rhs);
    FockOperator& operator-=(const FockOperator& rhs);
    FockOperator& operator*=(Complex s);

    friend FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
    friend FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }
    friend FockOperator operator*(Complex s, FockOperator a) { return a *= s; }
    friend FockOperator operator*(double s, FockOperator a) { return a *= Complex(s, 0.0); }
    friend FockOperator operator*(const FockOperator& a, const FockOperator& b);

   private:
    void require_compatible(const FockOperator& other, const char* what) const;

    Matrix entries_;
    int dim_;
    int modes_;
};

/// Trace-one, Hermitian, positive semidefinite operator.
class DensityMatrix {
   public:
    /// Validates trace within 1e-10 of one and eigenvalues >= -1e-10.
    explicit DensityMatrix(FockOperator op);

    /// Divides by the trace first (used after truncation losses).
    static DensityMatrix renormalized(const FockOperator& op);
    static DensityMatrix pure(const Vector& psi, int dim, int modes = 1);
    static DensityMatrix number_state(int n, int dim);

    const FockOperator& op() const { return op_; }
    const Matrix& matrix() const { return op_.matrix(); }
    int dim() const { return op_.dim(); }
    int modes() const { return op_.modes(); }
    double purity() const;

   private:
    FockOperator op_;
};

struct Collapse {
    DensityMatrix state;
    double probability;
};

FockOperator number_projector(int n, int dim);
FockOperator parity(int dim);

/// <row| D(alpha) |col> from the closed Laguerre form; exact for any indices.
Complex displacement_element(int row, int col, PhasePoint alpha);
FockOperator displacement(PhasePoint alpha, int dim);

/// (1/pi) D(alpha) Pi D(alpha)^dagger, assembled as (1/pi) D(2 alpha) Pi so
/// every truncated entry is exact.
FockOperator quantizer(PhasePoint alpha, int dim);

/// Lueders rule: (P rho P / Tr(rho P), Tr(rho P)). Throws NullOutcomeError
/// when the probability is at or below kProbabilityFloor.
Collapse luders_collapse(const DensityMatrix& rho, const FockOperator& projector);

/// Kronecker product of two single-mode operators of equal dimension.
FockOperator tensor(const FockOperator& a, const FockOperator& b);

/// Real part of Tr(A B); throws NonHermitianError when |Im| > tol.
double real_trace(const FockOperator& a, const FockOperator& b, double tol = 1e-9);

}  // namespace cbell

#endif  // CBELL_FOCK_HPP
