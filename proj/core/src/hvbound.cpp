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

#include "cbell/hvbound.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "cbell/errors.hpp"

namespace cbell {
namespace {

constexpr double kResidueTol = 1e-9;

// Tr(A B) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

void require_same_shape(const DensityMatrix& rho, const FockOperator& op, const char* what) {
    if (rho.dim() != op.dim() || rho.modes() != op.modes()) {
        throw InvalidArgument(std::string(what) + ": state and operator shapes differ");
    }
}

void require_dichotomous(const FockOperator& op, const char* name) {
    if (op.modes() != 1) throw InvalidArgument(std::string("chsh_decomposition: ") + name + " must be single-mode");
    if (!op.is_hermitian(1e-10)) throw InvalidArgument(std::string("chsh_decomposition: ") + name + " is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix(), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = es.eigenvalues()(i);
        if (std::abs(std::abs(ev) - 1.0) > 1e-10) {
            throw InvalidArgument(std::string("chsh_decomposition: ") + name + " has eigenvalue " +
                                  format_number(ev) + ", expected +1 or -1");
        }
    }
}

}  // namespace

Decomposition::Decomposition(std::vector<Term> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
    if (terms_.empty()) throw InvalidArgument("Decomposition: no terms");
    const FockOperator& first = terms_.front().projector;
    for (std::size_t u = 0; u < terms_.size(); ++u) {
        const FockOperator& p = terms_[u].projector;
        if (p.dim() != first.dim() || p.modes() != first.modes()) {
            throw InvalidArgument("Decomposition: term " + std::to_string(u) + " has a different shape");
        }
        if (!p.is_hermitian(1e-10) || !p.is_projector(1e-10)) {
            throw InvalidArgument("Decomposition: term " + std::to_string(u) + " is not an orthogonal projector");
        }
        if (!std::isfinite(terms_[u].weight)) throw InvalidArgument("Decomposition: non-finite weight");
    }
}

Decomposition::Decomposition(std::vector<Term> terms, std::string label, const FockOperator& target)
    : Decomposition(std::move(terms), std::move(label)) {
    const double residual = operator_sum().max_abs_diff(target);
    if (!(residual < 1e-8)) {
        throw InvalidArgument("Decomposition: weighted sum misses the target by " + format_number(residual));
    }
}

FockOperator Decomposition::operator_sum() const {
    const FockOperator& first = terms_.front().projector;
    FockOperator sum = FockOperator::zero(first.dim(), first.modes());
    for (const Term& t : terms_) sum += t.weight * t.projector;
    return sum;
}

double qm_mean(const DensityMatrix& rho, const FockOperator& bell) {
    require_same_shape(rho, bell, "qm_mean");
    return real_trace(rho.op(), bell, kResidueTol);
}

double qm_second_moment(const DensityMatrix& rho, const FockOperator& bell) {
    require_same_shape(rho, bell, "qm_second_moment");
    return real_trace(rho.op(), bell * bell, kResidueTol);
}

HvBound hv_bound(const DensityMatrix& rho, const Decomposition& decomposition, const FockOperator& bell) {
    require_same_shape(rho, bell, "hv_bound");
    require_same_shape(rho, decomposition.terms().front().projector, "hv_bound");
    HvBound out;
    for (const Term& t : decomposition.terms()) {
        const double p = real_trace(rho.op(), t.projector, kResidueTol);
        if (!(p > kProbabilityFloor)) {
            ++out.skipped_terms;
            continue;
        }
        const Collapse c = luders_collapse(rho, t.projector);
        out.value += t.weight * real_trace(c.state.op(), bell, kResidueTol) * c.probability;
    }
    return out;
}

double bound_difference(const DensityMatrix& rho, const Decomposition& decomposition) {
    require_same_shape(rho, decomposition.terms().front().projector, "bound_difference");
    const auto& terms = decomposition.terms();
    const Matrix& r = rho.matrix();
    Complex sum(0.0, 0.0);
    for (const Term& tu : terms) {
        const Matrix& pu = tu.projector.matrix();
        // Tr(rho Pu [Pu, Pv]) = Tr(rho Pu Pv) - Tr(Pu rho Pu Pv) since Pu^2 = Pu.
        const Matrix rho_pu = r * pu;
        const Matrix y = rho_pu - pu * rho_pu;
        for (const Term& tv : terms) sum += tu.weight * tv.weight * trace_product(y, tv.projector.matrix());
    }
    if (std::abs(sum.imag()) > kResidueTol * static_cast<double>(terms.size())) {
        throw NonHermitianError("bound_difference: imaginary residue " + format_number(sum.imag()));
    }
    return sum.real();
}

BellReport bell_report(const DensityMatrix& rho, const Decomposition& decomposition) {
    const FockOperator bell = decomposition.operator_sum();
    BellReport r;
    r.qm_mean = qm_mean(rho, bell);
    r.qm_second_moment = qm_second_moment(rho, bell);
    const HvBound hv = hv_bound(rho, decomposition, bell);
    r.hv_bound = hv.value;
    r.skipped_terms = hv.skipped_terms;
    r.bound_difference = bound_difference(rho, decomposition);
    r.margin = r.qm_mean * r.qm_mean - r.hv_bound;
    r.violation = r.margin > 0.0;
    r.hilbert_dimension = bell.size();
    r.gleason_applicable = r.hilbert_dimension >= 3;
    return r;
}

Decomposition chsh_decomposition(const FockOperator& a, const FockOperator& a_prime, const FockOperator& b,
                                 const FockOperator& b_prime) {
    require_dichotomous(a, "A");
    require_dichotomous(a_prime, "A'");
    require_dichotomous(b, "B");
    require_dichotomous(b_prime, "B'");
    if (a.dim() != a_prime.dim() || a.dim() != b.dim() || a.dim() != b_prime.dim()) {
        throw InvalidArgument("chsh_decomposition: all settings must share one dimension");
    }
    const FockOperator id = FockOperator::identity(a.dim());
    auto plus = [&](const FockOperator& x) { return 0.5 * (id + x); };
    auto minus = [&](const FockOperator& x) { return 0.5 * (id - x); };
    const FockOperator ap = plus(a), am = minus(a), app = plus(a_prime), apm = minus(a_prime);
    const FockOperator bp = plus(b), bm = minus(b), bpp = plus(b_prime), bpm = minus(b_prime);

    std::vector<Term> terms;
    terms.reserve(16);
    auto add = [&](double w, const FockOperator& x, const FockOperator& y) { terms.push_back({w, tensor(x, y)}); };
    add(1, ap, bp);
    add(1, am, bm);
    add(1, ap, bpp);
    add(1, am, bpm);
    add(1, app, bp);
    add(1, apm, bm);
    add(1, app, bpm);
    add(1, apm, bpp);
    add(-1, ap, bm);
    add(-1, am, bp);
    add(-1, ap, bpm);
    add(-1, am, bpp);
    add(-1, app, bm);
    add(-1, apm, bp);
    add(-1, app, bpp);
    add(-1, apm, bpm);

    const FockOperator target = tensor(a, b) + tensor(a, b_prime) + tensor(a_prime, b) - tensor(a_prime, b_prime);
    return Decomposition(std::move(terms), "chsh", target);
}

FockOperator sandwich_sum(const Decomposition& decomposition) {
    const auto& terms = decomposition.terms();
    const FockOperator& first = terms.front().projector;
    Matrix sum = Matrix::Zero(first.size(), first.size());
    for (const Term& tu : terms) {
        const Matrix& pu = tu.projector.matrix();
        for (const Term& tv : terms) sum += (tu.weight * tv.weight) * (pu * tv.projector.matrix() * pu);
    }
    return FockOperator(std::move(sum), first.dim(), first.modes());
}

double JointDistribution::first_margin(int u) const {
    if (u < 0 || u >= projector_count) throw InvalidArgument("first_margin: index out of range");
    double p = 0.0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if ((outcomes[k] >> u) & 1U) p += probabilities[k];
    }
    return p;
}

double JointDistribution::second_margin(int u, int v) const {
    if (u < 0 || v < 0 || u >= projector_count || v >= projector_count) {
        throw InvalidArgument("second_margin: index out of range");
    }
    double p = 0.0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (((outcomes[k] >> u) & 1U) && ((outcomes[k] >> v) & 1U)) p += probabilities[k];
    }
    return p;
}

JointDistribution commuting_joint_distribution(const DensityMatrix& rho, const std::vector<FockOperator>& projectors,
                                               std::uint64_t seed) {
    if (projectors.empty() || projectors.size() > 64) {
        throw InvalidArgument("commuting_joint_distribution: need between 1 and 64 projectors");
    }
    for (std::size_t u = 0; u < projectors.size(); ++u) {
        require_same_shape(rho, projectors[u], "commuting_joint_distribution");
        if (!projectors[u].is_hermitian(1e-10) || !projectors[u].is_projector(1e-10)) {
            throw InvalidArgument("commuting_joint_distribution: entry " + std::to_string(u) + " is not a projector");
        }
        for (std::size_t v = 0; v < u; ++v) {
            const Matrix& p = projectors[u].matrix();
            const Matrix& q = projectors[v].matrix();
            if ((p * q - q * p).cwiseAbs().maxCoeff() >= 1e-10) {
                throw InvalidArgument("commuting_joint_distribution: projectors " + std::to_string(v) + " and " +
                                      std::to_string(u) + " do not commute");
            }
        }
    }
    std::mt19937_64 gen(seed);
    Matrix combo = Matrix::Zero(rho.op().size(), rho.op().size());
    for (const FockOperator& p : projectors) {
        const double c = 1.0 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
        combo += c * p.matrix();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (combo + combo.adjoint()));
    const Matrix& v = es.eigenvectors();

    std::map<std::uint64_t, double> table;
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        const Vector col = v.col(k);
        std::uint64_t bits = 0;
        for (std::size_t u = 0; u < projectors.size(); ++u) {
            const double fire = (col.adjoint() * projectors[u].matrix() * col)(0, 0).real();
            if (std::abs(fire - std::round(fire)) > 1e-6) {
                throw Error("commuting_joint_distribution: eigenvector is not a joint eigenvector");
            }
            if (fire > 0.5) bits |= std::uint64_t{1} << u;
        }
        table[bits] += (col.adjoint() * rho.matrix() * col)(0, 0).real();
    }
    JointDistribution out;
    out.projector_count = static_cast<int>(projectors.size());
    for (const auto& [bits, p] : table) {
        out.outcomes.push_back(bits);
        out.probabilities.push_back(p);
    }
    return out;
}

}  // namespace cbell
