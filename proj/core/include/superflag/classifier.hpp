#pragma once

#include "superflag/flag_type.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace superflag {

/// The function algebra of a flag supermanifold, recorded as the dimension d
/// of the exterior-generator space: the algebra is the exterior algebra on d
/// generators (total dimension 2^d; d = 0 means the constants only).
struct H0Result {
  int generator_dim = 0;
  std::uint64_t vs_dim() const { return std::uint64_t{1} << generator_dim; }
  bool operator==(const H0Result&) const = default;
};

/// Basis of s ∩ g_1 in odd coordinates.
QMatrix odd_part(const Subalgebra& s);

/// {w in g_1^* : w(h1) = 0}, columns over the dual odd coordinates;
/// dimension is dim g_1 - dim h1.
QMatrix annihilator(const LieSuperAlgebra& g, const QMatrix& h1);

/// Largest subspace of S (in g_1^*) stable under the coadjoint action of the
/// even part, by the descending fixpoint W_0 = S,
/// W_{i+1} = {w in W_i : X·w in W_i for every even basis X}.
QMatrix max_invariant_submodule(const LieSuperAlgebra& g, const QMatrix& s);

struct ClassifyDetail {
  H0Result result;
  int h1_dim = 0;
  int ann_dim = 0;
  /// The fixpoint output annihilates the stabilizer's odd part (implied by
  /// W ⊆ Ann(h1); recorded, expected always true).
  bool w_vanishes_on_h1 = true;
};

/// The generic route: annihilator of the stabilizer's odd part, then the
/// invariant-submodule fixpoint. Valid at all parameters.
H0Result classify_h0(const FlagType& ft);
ClassifyDetail classify_h0_detail(const FlagType& ft);

struct ClosedFormResult {
  std::optional<H0Result> result;  // nullopt outside the hypotheses
  std::string case_label;          // which case fired, or why not applicable
};

/// The closed-form case analysis on the weight tuple: gl splits off the full
/// odd block exactly when the weights separate (all a above all b, or the
/// reverse); osp does so only for m = 2 with a_1 above all b; pisp by the
/// sign of a_i + a_j; q never. Hypotheses: osp needs m >= 1 and n >= 2.
ClosedFormResult closed_form_h0(const FlagType& ft);

struct SummandInjectivityReport {
  std::vector<int> summand_dims;
  std::vector<bool> injective;  // per summand: h1 ∩ V_k = 0
  bool any_injective() const;
};

/// Per-summand injectivity of the quotient map g_1 -> g_1/h1 (kernel h1).
SummandInjectivityReport summand_injectivity(const FlagType& ft);

/// Everything the classify CLI/table needs, in one record.
struct ClassificationRecord {
  FlagType ft;
  ClassifyDetail generic;
  ClosedFormResult closed;
  SummandInjectivityReport injectivity;

  bool comparable() const { return closed.result.has_value(); }
  bool agree() const {
    return !comparable() || *closed.result == generic.result;
  }
  /// Fixed field order: series m n k l generator_dim vs_dim closed_case
  /// closed_dim agree.
  std::string to_record() const;
};

ClassificationRecord classify_record(const FlagType& ft);

}  // namespace superflag
