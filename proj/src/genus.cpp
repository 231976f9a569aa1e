#include "gex/genus.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace gex {

void TracedWordSystem::validate() const {
  if (!(sigma.domain() == S)) throw std::invalid_argument("sigma domain differs from S");
  for (int k : S) {
    if (labels.find(k) == labels.end()) throw std::invalid_argument("labeling not total on S");
    if (Z.find(k) == Z.end()) throw std::invalid_argument("Z not total on S");
  }
  std::optional<int> dim;
  for (const auto& [k, m] : Z) {
    auto d = m.concrete_dim();
    if (!d) continue;
    if (dim && *dim != *d) throw std::invalid_argument("mixed concrete matrix dimensions");
    dim = d;
  }
}

std::pair<std::map<int, MatrixLetter>, Scalar> reduce_coeffs(
    const Perm& sigma, const Perm& tau, const std::map<int, MatrixLetter>& Z) {
  IndexSet supp = tau.support();
  std::set<int> in_supp(supp.begin(), supp.end());
  auto tau_sigma = [&](int k) { return tau.apply(sigma.apply(k)); };

  std::map<int, MatrixLetter> reduced;
  for (const auto& [j, zj] : Z) {
    if (in_supp.count(j)) continue;
    MatrixLetter prod = zj;
    for (int k = tau_sigma(j); in_supp.count(k); k = tau_sigma(k)) prod = prod.times(Z.at(k));
    reduced.emplace(j, std::move(prod));
  }

  Scalar lambda(1);
  Perm ts = tau.after(sigma);
  for (const auto& cyc : ts.cycles()) {
    bool inside = true;
    for (int k : cyc)
      if (!in_supp.count(k)) {
        inside = false;
        break;
      }
    if (!inside) continue;
    MatrixLetter prod;
    for (int k : cyc) prod = prod.times(Z.at(k));
    lambda = lambda * prod.normalized_trace();
  }
  return {std::move(reduced), std::move(lambda)};
}

Scalar trace_product(const Perm& p, const std::map<int, MatrixLetter>& Z) {
  Scalar r(1);
  for (const auto& cyc : p.cycles()) {
    MatrixLetter prod;
    for (int k : cyc) prod = prod.times(Z.at(k));
    r = r * prod.normalized_trace();
  }
  return r;
}

MomentPoly expected_trace_genus(const TracedWordSystem& sys) {
  sys.validate();
  MomentPoly total;
  if (sys.S.empty()) return MomentPoly(Scalar(1));
  if (sys.S.size() % 2 != 0) return total;

  auto pair_ok = [&](int a, int b) { return sys.labels.at(a) == sys.labels.at(b); };
  IndexSet semi;
  for (int k : sys.S)
    if (sys.labels.at(k).flavor == Flavor::Semi) semi.push_back(k);

  for (const PairPerm& pi : enumerate_pairings(sys.S, pair_ok)) {
    if (!semi.empty()) {
      // label compatibility makes the semicircular positions pi-closed
      PairPerm pi_semi(restrict(pi.perm(), semi));
      if (!is_noncrossing(pi_semi, sys.sigma)) continue;
    }
    int g = genus_of_pairing(sys.sigma, pi);
    Scalar b = trace_product(pi.perm().after(sys.sigma), sys.Z);
    total += MomentPoly::nu_power(g, b);
  }
  return total;
}

namespace {

MomentPoly ibp_rec(const Perm& sigma, const Labeling& labels,
                   const std::map<int, MatrixLetter>& Z) {
  IndexSet S = sigma.domain();
  if (S.empty()) return MomentPoly(Scalar(1));
  if (S.size() % 2 != 0) return {};

  // Free integration by parts removes semicircular letters first; the Gaussian
  // step is only valid once the words carry no free-product elements.
  int m = S.front();
  for (int k : S)
    if (labels.at(k).flavor == Flavor::Semi) {
      m = k;
      break;
    }
  const Label& lm = labels.at(m);

  std::vector<int> candidates;
  if (lm.flavor == Flavor::Gue) {
    for (int q : S)
      if (q != m && labels.at(q) == lm) candidates.push_back(q);
  } else {
    // free integration by parts pairs only within the trace factor of m
    for (const auto& cyc : sigma.cycles()) {
      if (std::find(cyc.begin(), cyc.end(), m) == cyc.end()) continue;
      for (int q : cyc)
        if (q != m && labels.at(q) == lm) candidates.push_back(q);
      break;
    }
  }

  MomentPoly total;
  for (int q : candidates) {
    Perm tau = Perm::transposition_on(S, m, q);
    int bridge = (lm.flavor == Flavor::Gue && is_bridge(sigma, {m, q})) ? 1 : 0;
    auto [z_reduced, lambda] = reduce_coeffs(sigma, tau, Z);
    MomentPoly sub;
    if (S.size() == 2) {
      sub = MomentPoly(Scalar(1));  // everything went into lambda
    } else {
      Perm sigma_next = take(sigma, tau);
      Labeling labels_next;
      for (int k : sigma_next.domain()) labels_next.emplace(k, labels.at(k));
      sub = ibp_rec(sigma_next, labels_next, z_reduced);
    }
    total += sub.times(lambda).shifted(bridge);
  }
  return total;
}

}  // namespace

MomentPoly expected_trace_ibp(const TracedWordSystem& sys) {
  sys.validate();
  if (sys.S.empty()) return MomentPoly(Scalar(1));
  return ibp_rec(sys.sigma, sys.labels, sys.Z);
}

TracedWordSystem system_from_word(const Word& w) {
  int r = w.degree();
  if (r == 0) throw std::invalid_argument("system_from_word needs at least one variable letter");
  TracedWordSystem sys;
  sys.S = range_set(1, r);
  sys.sigma = r == 1 ? Perm::identity(sys.S) : Perm::from_cycles(sys.S, {sys.S});
  for (int i = 1; i <= r; ++i) {
    auto sym = w.vars[i - 1].as_plain_symbol();
    if (!sym) throw std::invalid_argument("word letter is not a single basis symbol");
    sys.labels.emplace(i, sym->label());
    sys.Z.emplace(i, i == r ? w.mats[r].times(w.mats[0]) : w.mats[i]);
  }
  return sys;
}

MomentPoly expected_trace_poly(const NCPoly& f) {
  NCPoly expanded = expand_to_basis(f);
  MomentPoly total;
  for (const auto& w : expanded.words()) {
    if (w.degree() == 0) {
      total += MomentPoly(w.coeff * w.mats[0].normalized_trace());
      continue;
    }
    TracedWordSystem sys = system_from_word(w);
    total += expected_trace_genus(sys).times(w.coeff);
  }
  return total;
}

Scalar semicircular_trace(const NCPoly& f) {
  LinearMap reflavor("semicircular", [](const BasisSymbol& s) -> std::optional<VecExpr> {
    return VecExpr::single(s.with_flavor(Flavor::Semi));
  });
  MomentPoly m = expected_trace_poly(pushforward(reflavor, f));
  if (m.degree() > 0)
    throw std::logic_error("semicircular trace produced a nu term; noncrossing filter violated");
  return m.coeff(0);
}

}  // namespace gex
