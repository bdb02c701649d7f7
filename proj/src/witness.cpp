#include "jlab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jlab {

namespace {

constexpr double kPathAgreementRel = 1e-6;
constexpr Index kRepeatedPathMaxN = 5000;

bool all_finite(const LpFunction& f) {
  for (double v : f.values())
    if (!std::isfinite(v)) return false;
  return true;
}

void track_best(WitnessCertificate& cert, double nb, double ni) {
  const double cur = std::max(nb, ni);
  const double best = std::max(cert.best_norm_base, cert.best_norm_image);
  if (!cert.found && cur < best) {
    cert.best_norm_base = nb;
    cert.best_norm_image = ni;
  }
}

}  // namespace

WitnessCertificate build_witness_zero(const WeightedTranslation& t, const LpFunction& f,
                                      double eps, Index n_max) {
  WitnessCertificate cert;
  cert.builder = WitnessCertificate::Builder::Zero;
  cert.eps = eps;
  cert.base_point = LpFunction::zero(t.carrier(), t.p());
  cert.target = f;
  cert.best_norm_base = cert.best_norm_image = std::numeric_limits<double>::infinity();

  if (!compact_passing(t.carrier(), t.a()))
    throw std::invalid_argument("build_witness_zero: needs a compact-passing element");
  if (f.is_zero()) throw std::invalid_argument("build_witness_zero: target must be nonzero");
  if (!(eps > 0.0)) throw std::invalid_argument("build_witness_zero: eps must be > 0");

  const GroupCarrier& c = t.carrier();
  const CompactWindow sf = f.support();
  const Index sep = *separation_bound(c, sf, t.a());

  const double p = t.p();
  const double fp_pow = std::pow(f.p_norm(), p);
  const double finf_pow = std::pow(f.sup_norm(), p);
  const double tilde_thr = eps / fp_pow;    // sublevel cut for w~_n on σ(f)
  const double mass_thr = eps / finf_pow;   // allowed residual mass of σ(f) \ E
  const double acc_cut = -std::log(tilde_thr);

  const std::vector<Index> ks = sf.indices();
  std::vector<double> acc(ks.size(), 0.0);

  for (Index n = 1; n <= n_max; ++n) {
    for (std::size_t i = 0; i < ks.size(); ++i)
      acc[i] += t.log_weight(c.translate(ks[i], t.a(), -(n - 1)));
    if (n < sep) continue;

    std::vector<Index> members;
    double residual = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (acc[i] > acc_cut)
        members.push_back(ks[i]);
      else
        residual += c.cell_mass(ks[i]);
    }
    if (residual >= mass_thr) continue;

    const CompactWindow e = window_from_sorted_indices(members);
    // g(k - n a) = w~_n(k) f(k), assembled in the log domain.
    LpFunction g = LpFunction::zero(c, p);
    if (!members.empty()) {
      const Index lo = members.front() - n * t.a().index;
      const Index hi = members.back() - n * t.a().index;
      std::vector<double> vals(static_cast<std::size_t>(hi - lo + 1), 0.0);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        if (acc[i] <= acc_cut) continue;
        const double fv = f.at(ks[i]);
        if (fv == 0.0) continue;
        const double lg = -acc[i] + std::log(std::abs(fv));
        vals[static_cast<std::size_t>(ks[i] - n * t.a().index - lo)] =
            std::copysign(std::exp(lg), fv);
      }
      g = LpFunction::from_values(c, p, lo, std::move(vals));
    }

    const double nb = g.p_norm();
    const double ni = distance_p(f.restricted_to(e), f);
    track_best(cert, nb, ni);
    if (nb < eps && ni < eps) {
      cert.found = true;
      cert.n = n;
      cert.g = std::move(g);
      cert.e_set = e;
      cert.norm_base = nb;
      cert.norm_image = ni;
      cert.valid = true;
      return cert;
    }
  }
  return cert;
}

WitnessCertificate build_witness_jvector(const WeightedTranslation& t, const LpFunction& f,
                                         const CompactWindow& k_set, double eps, Index n_max) {
  WitnessCertificate cert;
  cert.builder = WitnessCertificate::Builder::JVector;
  cert.eps = eps;
  cert.best_norm_base = cert.best_norm_image = std::numeric_limits<double>::infinity();

  if (!compact_passing(t.carrier(), t.a()))
    throw std::invalid_argument("build_witness_jvector: needs a compact-passing element");
  if (k_set.empty()) throw std::invalid_argument("build_witness_jvector: K must have mass > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("build_witness_jvector: eps must be > 0");

  const GroupCarrier& c = t.carrier();
  const double p = t.p();
  const LpFunction chi_k = LpFunction::indicator(c, p, k_set);
  cert.base_point = chi_k;
  cert.target = f;
  cert.note = "thresholds halved for a safety margin in the finite truncation";

  if (f.is_zero()) {
    // Degenerate target: g = χ_K, the image norm is ||T^n χ_K||_p.
    const Index sep = *separation_bound(c, k_set, t.a());
    for (Index n = sep; n <= n_max; ++n) {
      double ni;
      try {
        ni = t.iterate(chi_k, n).p_norm();
      } catch (const IterateRangeError&) {
        continue;
      }
      track_best(cert, 0.0, ni);
      if (ni < eps) {
        cert.found = true;
        cert.valid = true;
        cert.n = n;
        cert.g = chi_k;
        cert.norm_base = 0.0;
        cert.norm_image = ni;
        return cert;
      }
    }
    return cert;
  }

  const CompactWindow sf = f.support();
  const Index sep = *separation_bound(c, CompactWindow::union_of(sf, k_set), t.a());

  const double eps_half = eps / 2.0;
  const double two_pow_p = std::pow(2.0, p);
  const double fp_pow = std::pow(f.p_norm(), p);
  const double finf_pow = std::pow(f.sup_norm(), p);
  const double tilde_thr = eps_half / fp_pow;
  const double mass_thr = eps_half / (two_pow_p * finf_pow);
  const double komega_thr = eps_half / (two_pow_p * fp_pow);
  const double acc_cut = -std::log(tilde_thr);

  const std::vector<Index> ks = sf.indices();
  const std::vector<Index> kks = k_set.indices();
  std::vector<double> acc(ks.size(), 0.0);
  std::vector<double> acck(kks.size(), 0.0);

  for (Index n = 1; n <= n_max; ++n) {
    for (std::size_t i = 0; i < ks.size(); ++i)
      acc[i] += t.log_weight(c.translate(ks[i], t.a(), -(n - 1)));
    double max_acck = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < kks.size(); ++j) {
      acck[j] += t.log_weight(c.translate(kks[j], t.a(), n));
      max_acck = std::max(max_acck, acck[j]);
    }
    if (n < sep) continue;
    if (!(std::exp(max_acck) < komega_thr)) continue;

    std::vector<Index> members;
    double residual = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (acc[i] > acc_cut)
        members.push_back(ks[i]);
      else
        residual += c.cell_mass(ks[i]);
    }
    if (residual >= mass_thr) continue;

    const CompactWindow e = window_from_sorted_indices(members);
    LpFunction shifted = LpFunction::zero(c, p);
    if (!members.empty()) {
      const Index lo = members.front() - n * t.a().index;
      const Index hi = members.back() - n * t.a().index;
      std::vector<double> vals(static_cast<std::size_t>(hi - lo + 1), 0.0);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        if (acc[i] <= acc_cut) continue;
        const double fv = f.at(ks[i]);
        if (fv == 0.0) continue;
        vals[static_cast<std::size_t>(ks[i] - n * t.a().index - lo)] =
            std::copysign(std::exp(-acc[i] + std::log(std::abs(fv))), fv);
      }
      shifted = LpFunction::from_values(c, p, lo, std::move(vals));
    }
    LpFunction g = add(shifted, chi_k);

    const double nb = distance_p(g, chi_k);
    double ni;
    try {
      ni = distance_p(t.iterate(g, n), f);
    } catch (const IterateRangeError&) {
      continue;
    }
    track_best(cert, nb, ni);
    if (nb < eps && ni < eps) {
      cert.found = true;
      cert.valid = true;
      cert.n = n;
      cert.g = std::move(g);
      cert.e_set = e;
      cert.norm_base = nb;
      cert.norm_image = ni;
      return cert;
    }
  }
  return cert;
}

WitnessCertificate build_witness_torsion(const WeightedTranslation& t,
                                         const LpFunction& g_target, double eps, double delta,
                                         Index n_max) {
  WitnessCertificate cert;
  cert.builder = WitnessCertificate::Builder::Torsion;
  cert.eps = eps;
  cert.base_point = LpFunction::zero(t.carrier(), t.p());
  cert.target = g_target;
  cert.best_norm_base = cert.best_norm_image = std::numeric_limits<double>::infinity();

  if (!t.carrier().is_cyclic())
    throw std::invalid_argument("build_witness_torsion: needs a FiniteCyclic carrier");
  if (g_target.is_zero())
    throw std::invalid_argument("build_witness_torsion: target must be nonzero");
  if (!(eps > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("build_witness_torsion: eps and delta must be > 0");

  const GroupCarrier& c = t.carrier();
  const double p = t.p();
  const Index gamma = *torsion_order(c, t.a());
  const CompactWindow support = g_target.support();
  const std::vector<Index> ks = support.indices();
  std::vector<double> acc(ks.size(), 0.0);  // log w_{γn}(k)
  const double acc_cut = -std::log(eps);

  for (Index n = 1; n <= n_max; ++n) {
    for (std::size_t i = 0; i < ks.size(); ++i)
      for (Index j = gamma * (n - 1) + 1; j <= gamma * n; ++j)
        acc[i] += t.log_weight(c.translate(ks[i], t.a(), j));

    std::vector<Index> members;
    double residual = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (acc[i] > acc_cut)
        members.push_back(ks[i]);
      else
        residual += c.cell_mass(ks[i]);
    }
    if (residual >= delta) continue;

    const CompactWindow e = window_from_sorted_indices(members);
    // h = S^{γn}(g χ_E): since a^{γn} = e, this divides each cell by w_{γn}.
    std::vector<double> vals(static_cast<std::size_t>(c.order()), 0.0);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (acc[i] <= acc_cut) continue;
      const double gv = g_target.at(ks[i]);
      vals[static_cast<std::size_t>(ks[i])] =
          std::copysign(std::exp(-acc[i] + std::log(std::abs(gv))), gv);
    }
    LpFunction h = LpFunction::from_values(c, p, 0, std::move(vals));

    const double nb = h.p_norm();
    const double ni = distance_p(g_target.restricted_to(e), g_target);
    track_best(cert, nb, ni);
    if (nb < eps && ni < eps) {
      cert.found = true;
      cert.valid = true;
      cert.n = gamma * n;
      cert.g = std::move(h);
      cert.e_set = e;
      cert.norm_base = nb;
      cert.norm_image = ni;
      return cert;
    }
  }
  return cert;
}

bool verify(WitnessCertificate& cert, const WeightedTranslation& t) {
  if (!cert.found) return false;
  const double nb = distance_p(cert.g, cert.base_point);

  double img_closed;
  try {
    img_closed = distance_p(t.iterate(cert.g, cert.n), cert.target);
  } catch (const IterateRangeError&) {
    cert.valid = false;
    return false;
  }

  cert.closed_form_only = true;
  bool paths_agree = true;
  if (cert.n <= kRepeatedPathMaxN) {
    LpFunction h = cert.g;
    bool ok = true;
    for (Index i = 0; i < cert.n; ++i) {
      h = t.apply(h);
      if (!all_finite(h)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      cert.closed_form_only = false;
      const double img_repeated = distance_p(h, cert.target);
      const double scale = std::max(img_closed, img_repeated);
      paths_agree = std::abs(img_closed - img_repeated) <=
                    kPathAgreementRel * scale + 1e-12 * (1.0 + cert.target.p_norm());
    }
  }

  cert.norm_base = nb;
  cert.norm_image = img_closed;
  cert.valid = paths_agree && nb < cert.eps && img_closed < cert.eps;
  return cert.valid;
}

std::string to_string(WitnessCertificate::Builder b) {
  switch (b) {
    case WitnessCertificate::Builder::Zero: return "zero";
    case WitnessCertificate::Builder::JVector: return "jvector";
    case WitnessCertificate::Builder::Torsion: return "torsion";
  }
  return "?";
}

}  // namespace jlab
