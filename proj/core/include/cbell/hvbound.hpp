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

#ifndef CBELL_HVBOUND_HPP
#define CBELL_HVBOUND_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cbell/fock.hpp"

namespace cbell {

struct Term {
    double weight;
    FockOperator projector;
};

/// Weighted projector family whose sum is a Bell operator.
class Decomposition {
   public:
    /// Every projector must satisfy P^2 = P within 1e-10 and share one shape.
    Decomposition(std::vector<Term> terms, std::string label);
    /// Additionally checks that sum_u w(u) P(u) matches target within 1e-8.
    Decomposition(std::vector<Term> terms, std::string label, const FockOperator& target);

    const std::vector<Term>& terms() const { return terms_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return terms_.size(); }
    FockOperator operator_sum() const;

   private:
    std::vector<Term> terms_;
    std::string label_;
};

struct BellReport {
    double qm_mean = 0.0;
    double hv_bound = 0.0;
    double qm_second_moment = 0.0;
    double bound_difference = 0.0;
    bool violation = false;  ///< qm_mean^2 > hv_bound
    double margin = 0.0;     ///< qm_mean^2 - hv_bound
    int skipped_terms = 0;   ///< outcomes below kProbabilityFloor
    /// Dimension of the space the projectors act on. The HV axioms lean on
    /// Gleason's theorem, which needs at least 3; smaller spaces are only
    /// flagged, since the matrix identities hold regardless.
    Eigen::Index hilbert_dimension = 0;
    bool gleason_applicable = false;
};

/// Re Tr(rho B); NonHermitianError if the imaginary part exceeds 1e-9.
double qm_mean(const DensityMatrix& rho, const FockOperator& bell);
double qm_second_moment(const DensityMatrix& rho, const FockOperator& bell);

struct HvBound {
    double value = 0.0;
    int skipped_terms = 0;
};

/// sum_u w(u) Tr(rho_u B) Tr(rho P(u)) with rho_u the Lueders collapse of rho
/// on P(u). Terms with Tr(rho P(u)) <= kProbabilityFloor contribute nothing.
HvBound hv_bound(const DensityMatrix& rho, const Decomposition& decomposition, const FockOperator& bell);

/// sum_{u,v} w(u) w(v) Tr(rho P(u) [P(u), P(v)]).
double bound_difference(const DensityMatrix& rho, const Decomposition& decomposition);

/// Everything above for one (state, decomposition) pair, with B taken as the
/// decomposition's operator sum.
BellReport bell_report(const DensityMatrix& rho, const Decomposition& decomposition);

/// The 16-projector CHSH family for A (x) B + A (x) B' + A' (x) B - A' (x) B'.
/// Inputs are single-mode operators of equal dimension with spectrum {+1, -1}
/// (InvalidArgument otherwise).
Decomposition chsh_decomposition(const FockOperator& a, const FockOperator& a_prime, const FockOperator& b,
                                 const FockOperator& b_prime);

/// sum_{u,v} w(u) w(v) P(u) P(v) P(u).
FockOperator sandwich_sum(const Decomposition& decomposition);

/// Joint outcome distribution of a commuting projector family (at most 64).
/// Outcome bit u is set when P(u) fires.
struct JointDistribution {
    std::vector<std::uint64_t> outcomes;
    std::vector<double> probabilities;
    int projector_count = 0;

    double first_margin(int u) const;
    double second_margin(int u, int v) const;
};

/// Simultaneous eigenbasis through a random linear combination; throws
/// InvalidArgument if any pair fails to commute within 1e-10.
JointDistribution commuting_joint_distribution(const DensityMatrix& rho, const std::vector<FockOperator>& projectors,
                                               std::uint64_t seed = 7);

}  // namespace cbell

#endif  // CBELL_HVBOUND_HPP
