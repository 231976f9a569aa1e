#ifndef GEX_TESTUTIL_HPP
#define GEX_TESTUTIL_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "gex/corpus.hpp"
#include "gex/genus.hpp"
#include "gex/ncpoly.hpp"
#include "gex/perm.hpp"
#include "gex/rmt.hpp"
#include "gex/scalar.hpp"

namespace gex::test {

/// x^degree with one identity of the given flavor.
inline NCPoly xpow(int degree, Flavor flavor = Flavor::Gue, int id = 0) {
  BasisSymbol sym =
      flavor == Flavor::Gue ? BasisSymbol::gue_v(id) : BasisSymbol::semi(BaseSpace::W, id);
  NCPoly f = NCPoly::one();
  for (int i = 0; i < degree; ++i) f = f * NCPoly::variable(VecExpr::single(sym));
  return f;
}

/// One-matrix moment oracle: m_{p+1} = 2(2p+1)/(p+2) m_p
/// + p(2p+1)(2p-1)/(p+2) nu m_{p-1}, independent of both trace engines.
inline MomentPoly harer_zagier_moment(int p) {
  MomentPoly prev(Scalar(1));  // m_0 = tr I = 1
  MomentPoly cur(Scalar(1));   // m_1 = E tr X^2 = 1
  if (p == 0) return prev;
  for (int k = 1; k < p; ++k) {
    MomentPoly next =
        cur.times(Scalar(make_rational(2 * (2 * k + 1), k + 2))) +
        prev.times(Scalar(make_rational(static_cast<long>(k) * (2 * k + 1) * (2 * k - 1), k + 2)))
            .shifted(1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Composite Simpson on [0,1]; far below 1e-12 error for the smooth
/// integrands used here.
inline double quad01(const std::function<double(double)>& f) {
  const int n = 4000;  // even
  const double h = 1.0 / n;
  double sum = f(0.0) + f(1.0);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Explicit two-index expansion of the halved free Laplacian for a monomial:
/// L_V f = sum over ordered pairs of selected positions of
/// <P u(i1), P u(i2)> (arc word from i1) (x) (arc word from i2).
inline TensorPoly laplacian_two_index_sum(const Word& w, SubspaceSel sel) {
  const int r = w.degree();
  std::vector<TensorTerm> terms;
  auto arc_word = [&](int from, int to) {
    // Z_from x_{from+1} Z_{from+1} ... x_{to-1} Z_{to-1}, cyclic positions
    Word seg = Word::matrix(w.mats[from]);
    for (int p = from % r + 1; p != to; p = p % r + 1) {
      seg = seg.times(Word::variable(w.vars[p - 1]));
      seg = seg.times(Word::matrix(w.mats[p]));
    }
    return seg;
  };
  auto proj = [&](int pos) {
    return w.vars[pos - 1].filtered([sel](const BasisSymbol& s) { return selects(sel, s); });
  };
  for (int i1 = 1; i1 <= r; ++i1)
    for (int i2 = 1; i2 <= r; ++i2) {
      if (i1 == i2) continue;
      Scalar ip = inner_product(proj(i1), proj(i2));
      if (ip.is_zero()) continue;
      TensorTerm t;
      t.coeff = w.coeff * ip;
      t.factors = {arc_word(i1, i2), arc_word(i2, i1)};
      terms.push_back(std::move(t));
    }
  return TensorPoly::build(0, 2, std::move(terms));
}

inline MomentPoly expand_in_t_poly(const MomentPoly& p, int level = 0) {
  MomentPoly out;
  for (const auto& [g, c] : p.coeffs()) out += MomentPoly::nu_power(g, expand_in_t(c, level));
  return out;
}

inline MomentPoly derivative_t_poly(const MomentPoly& p, int level = 0) {
  MomentPoly out;
  for (const auto& [g, c] : p.coeffs()) out += MomentPoly::nu_power(g, derivative_t(c, level));
  return out;
}

inline MomentPoly substitute_t_poly(const MomentPoly& p, const Rational& value, int level = 0) {
  MomentPoly out;
  for (const auto& [g, c] : p.coeffs())
    out += MomentPoly::nu_power(g, substitute_param(c, {ParamKind::T, level}, value));
  return out;
}

/// Random mixed-flavor traced word system over <= n_ids identities.
inline TracedWordSystem random_system(Philox& gen, int size, int n_ids, bool with_matrices) {
  TracedWordSystem sys;
  sys.S = range_set(1, size);
  sys.sigma = random_perm(gen, sys.S);
  for (int k : sys.S) {
    bool semi = gen.next_u64() & 1;
    int id = static_cast<int>(gen.next_u64() % n_ids);
    BasisSymbol sym = semi ? BasisSymbol::semi(BaseSpace::W, id) : BasisSymbol::gue_v(id);
    sys.labels.emplace(k, sym.label());
    sys.Z.emplace(k, with_matrices && (gen.next_u64() & 1)
                         ? MatrixLetter::concrete(random_rational_matrix(gen, 2))
                         : MatrixLetter());
  }
  return sys;
}

}  // namespace gex::test

#endif
