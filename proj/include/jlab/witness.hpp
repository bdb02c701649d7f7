#pragma once

#include <string>

#include "jlab/weighted_translation.hpp"

namespace jlab {

/// A concrete (g, n) pair demonstrating f ∈ J_T(x) up to eps:
/// ||g - base_point||_p < eps and ||T^n g - target||_p < eps, both
/// recomputed from scratch at verification time.
struct WitnessCertificate {
  enum class Builder { Zero, JVector, Torsion };

  Builder builder = Builder::Zero;
  bool found = false;  // a qualifying n was located within n_max
  bool valid = false;  // both norms below eps, re-verified
  Index n = 0;
  double eps = 0.0;

  LpFunction base_point;  // zero or an indicator
  LpFunction target;
  LpFunction g;
  CompactWindow e_set;  // the sublevel exceptional set E used

  double norm_base = 0.0;   // ||g - base_point||_p
  double norm_image = 0.0;  // ||T^n g - target||_p
  // Best bounds achieved during the scan when no n qualified.
  double best_norm_base = 0.0;
  double best_norm_image = 0.0;

  bool closed_form_only = false;  // repeated-apply verification path skipped
  std::string note;
};

/// Constructive witness for base point zero on a line carrier:
/// g(x) = w~_n(x a^n) (f χ_E)(x a^n), so T^n g = f χ_E exactly by the
/// telescoping of the weight products.
WitnessCertificate build_witness_zero(const WeightedTranslation& t, const LpFunction& f,
                                      double eps, Index n_max);

/// Same construction shifted onto the indicator base point:
/// g = w~_n(. a^n) (f χ_E)(. a^n) + χ_K, requiring in addition that
/// max over K of w_n is small and n clears the separation bound of
/// σ(f) ∪ K.
WitnessCertificate build_witness_jvector(const WeightedTranslation& t, const LpFunction& f,
                                         const CompactWindow& k_set, double eps, Index n_max);

/// Torsion construction on FiniteCyclic: h = S^{γn}(g χ_E) with
/// T^{γn} h = g χ_E exactly (the inverse step divides the products back out).
WitnessCertificate build_witness_torsion(const WeightedTranslation& t,
                                         const LpFunction& g_target, double eps, double delta,
                                         Index n_max);

/// Independent recomputation guard: both norms are recomputed via the
/// closed-form iterate AND via n-fold apply where feasible; the paths must
/// agree within 1e-6 relative and both norms must beat eps. Updates the
/// certificate's recorded norms and the closed_form_only flag.
bool verify(WitnessCertificate& cert, const WeightedTranslation& t);

std::string to_string(WitnessCertificate::Builder b);

}  // namespace jlab
