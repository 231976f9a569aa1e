#include "gex/parraud.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace gex {

namespace {

Scalar half() { return Scalar(make_rational(1, 2)); }

bool in_arc(int r, int from, int to, int k) {
  // strictly between `from` and `to` walking the cycle 1 -> 2 -> ... -> r -> 1
  for (int p = from % r + 1; p != to; p = p % r + 1) {
    if (p == k) return true;
  }
  return false;
}

std::vector<int> arc_interior(int r, int from, int to) {
  std::vector<int> out;
  for (int p = from % r + 1; p != to; p = p % r + 1) out.push_back(p);
  return out;
}

}  // namespace

NCPoly dcross(const NCPoly& f, CrossVariant variant, int level) {
  SubspaceSel dsel = variant == CrossVariant::VV ? SubspaceSel::GueV : SubspaceSel::SemiW;
  TensorPoly t = free_laplacian(f, SubspaceSel::GueV).scaled(half());
  t = fdq_factor(t, 0, dsel);
  t = fdq_factor(t, 2, dsel);
  t = contract_inner(t);
  t = tag_factors(t, level);
  return mult_perm(t, {4, 3, 2, 1});
}

Word h_term(const Word& w, const Transposition& tau, const Transposition& tau2,
            CrossVariant variant, int level) {
  const int r = w.degree();
  if (!w.mats[0].is_identity())
    throw std::invalid_argument("h_term expects the leading matrix absorbed into the trailing one");
  int i1 = tau.first, i2 = tau.second, j1 = tau2.first, j2 = tau2.second;
  std::vector<int> pts{i1, i2, j1, j2};
  std::sort(pts.begin(), pts.end());
  for (int p : pts)
    if (p < 1 || p > r) throw std::invalid_argument("crossing position out of range");
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
    throw std::invalid_argument("crossing transpositions must be disjoint");
  if (!in_arc(r, i1, i2, j1) || !in_arc(r, i2, i1, j2))
    throw std::invalid_argument("transpositions are not a sigma-cross in this writing");

  SubspaceSel csel = variant == CrossVariant::VV ? SubspaceSel::GueV : SubspaceSel::SemiW;
  auto proj = [](const VecExpr& v, SubspaceSel sel) {
    return v.filtered([sel](const BasisSymbol& s) { return selects(sel, s); });
  };
  Scalar pref = inner_product(proj(w.vars[i1 - 1], SubspaceSel::GueV),
                              proj(w.vars[i2 - 1], SubspaceSel::GueV)) *
                inner_product(proj(w.vars[j1 - 1], csel), proj(w.vars[j2 - 1], csel));

  // m_{4,3,2,1}: segments in the order (j2..), (i2..), (j1..), (i1..), each
  // tagged e_4, e_3, e_2, e_1; multiplication follows sigma \ tau tau'.
  struct Segment {
    int start;
    std::vector<int> interior;
    int tag;
  };
  std::vector<Segment> segs = {{j2, arc_interior(r, j2, i1), 4},
                               {i2, arc_interior(r, i2, j2), 3},
                               {j1, arc_interior(r, j1, i2), 2},
                               {i1, arc_interior(r, i1, j1), 1}};
  Word out = Word::scalar(w.coeff * pref);
  for (const auto& seg : segs) {
    out = out.times(Word::matrix(w.mats[seg.start]));
    LinearMap tagger = tag_map(level, seg.tag);
    for (int k : seg.interior) {
      out = out.times(Word::variable(tagger.apply(w.vars[k - 1])));
      out = out.times(Word::matrix(w.mats[k]));
    }
  }
  return out;
}

NCPoly dcross_via_hterms(const Word& w, CrossVariant variant, int level) {
  const int r = w.degree();
  std::vector<Word> terms;
  for (int i1 = 1; i1 <= r; ++i1)
    for (int i2 = 1; i2 <= r; ++i2) {
      if (i2 == i1) continue;
      for (int j1 : arc_interior(r, i1, i2))
        for (int j2 : arc_interior(r, i2, i1)) {
          Word h = h_term(w, {i1, i2}, {j1, j2}, variant, level);
          if (h.coeff.is_zero()) continue;
          terms.push_back(h.scaled(half()));
        }
    }
  return NCPoly::from_words(std::move(terms));
}

LinearMap alpha_map(int level) {
  std::ostringstream name;
  name << "alpha[" << level << "]";
  return LinearMap(name.str(), [level](const BasisSymbol& sym) -> std::optional<VecExpr> {
    auto tag = sym.outer_tag();
    if (!tag || tag->level != level || tag->tag < 1 || tag->tag > 4) return std::nullopt;
    int j = tag->tag;
    int fresh = 5 + (j == 2 ? 1 : 0) + (j == 3 ? 1 : 0);
    BasisSymbol base = sym.without_outer_tag_as(Flavor::Semi);

    Scalar s_half = Scalar::param_power_half({ParamKind::S, level}, 1);
    Scalar oms_half = Scalar::param_power_half({ParamKind::OneMinusS, level}, 1);

    VecExpr out;
    if (base.is_plain_v()) {
      Scalar t_half = Scalar::param_power_half({ParamKind::T, level}, 1);
      Scalar omt_half = Scalar::param_power_half({ParamKind::OneMinusT, level}, 1);
      out += VecExpr::single(BasisSymbol::gue_v(base.index()), t_half);
      out += VecExpr::single(base.with_tag(level, fresh), omt_half * s_half);
      out += VecExpr::single(base.with_tag(level, j), omt_half * oms_half);
    } else {
      out += VecExpr::single(base.with_tag(level, fresh), s_half);
      out += VecExpr::single(base.with_tag(level, j), oms_half);
    }
    return out;
  });
}

NCPoly tcross_parametric(const NCPoly& f, int level) {
  Scalar one_minus_t = Scalar::param_power_half({ParamKind::OneMinusT, level}, 2);
  NCPoly d = dcross(f, CrossVariant::VV, level).scaled(one_minus_t) +
             dcross(f, CrossVariant::VW, level);
  return pushforward(alpha_map(level), d);
}

MomentPoly tcross_expected_trace(const NCPoly& f, int level) {
  MomentPoly m = expected_trace_poly(tcross_parametric(f, level));
  // pairing contraction must have left only integer exponents
  for (ParamKind k : {ParamKind::T, ParamKind::OneMinusT, ParamKind::S, ParamKind::OneMinusS})
    for (const auto& [g, c] : m.coeffs())
      if (!c.integer_exponents({k, level}))
        throw std::logic_error("half-integer parameter exponent survived pairing contraction");
  m = integrate_param(m, ParamKind::S, level);
  m = integrate_param(m, ParamKind::T, level);
  return m;
}

ExpansionReport verify_theorem1(const NCPoly& f) {
  ExpansionReport rep;
  rep.lhs = expected_trace_poly(f);
  rep.rhs = MomentPoly(semicircular_trace(f)) + tcross_expected_trace(f, 0).shifted(1);
  MomentPoly diff = rep.lhs - rep.rhs;
  for (const auto& [g, c] : diff.coeffs()) rep.diffs.emplace_back(g, c);
  rep.pass = diff.is_zero();
  return rep;
}

AsymptoticExpansion expand_asymptotic(const NCPoly& f, int order_m) {
  if (order_m < 0) throw std::invalid_argument("expansion order must be nonnegative");
  AsymptoticExpansion out;
  NCPoly g = f;
  for (int k = 0; k <= order_m; ++k) {
    out.coeffs.push_back(integrate_params_all(semicircular_trace(g)));
    g = tcross_parametric(g, k);
  }
  out.remainder = integrate_params_all(expected_trace_poly(g)).shifted(order_m + 1);
  return out;
}

namespace {

struct EtaData {
  int r = 0;
  Perm sigma;
  std::vector<BasisSymbol> sym;  // position i at sym[i-1]
  std::map<int, MatrixLetter> Z;
  Scalar coeff;
  IndexSet semi;
};

EtaData eta_setup(const Word& w) {
  EtaData d;
  d.r = w.degree();
  if (d.r == 0) throw std::invalid_argument("eta expects a word with variable letters");
  IndexSet S = range_set(1, d.r);
  d.sigma = d.r == 1 ? Perm::identity(S) : Perm::from_cycles(S, {S});
  d.coeff = w.coeff;
  for (int i = 1; i <= d.r; ++i) {
    auto sym = w.vars[i - 1].as_plain_symbol();
    if (!sym) throw std::invalid_argument("eta expects single-basis-symbol letters");
    d.sym.push_back(*sym);
    if (sym->flavor() == Flavor::Semi) d.semi.push_back(i);
    d.Z.emplace(i, i == d.r ? w.mats[d.r].times(w.mats[0]) : w.mats[i]);
  }
  return d;
}

bool restriction_noncrossing(const Perm& pi, const IndexSet& sub, const Perm& sigma) {
  if (sub.empty()) return true;
  return is_noncrossing(PairPerm(restrict(pi, sub)), sigma);
}

}  // namespace

MomentPoly eta_poly(const Word& w) {
  if (w.degree() == 0) return MomentPoly(w.coeff * w.mats[0].normalized_trace());
  EtaData d = eta_setup(w);
  MomentPoly out;
  auto pair_ok = [&](int a, int b) { return d.sym[a - 1] == d.sym[b - 1]; };
  for (const PairPerm& pi : enumerate_pairings(range_set(1, d.r), pair_ok)) {
    std::vector<Transposition> gue_pairs;
    for (const auto& p : pi.pairs())
      if (d.sym[p.first - 1].flavor() == Flavor::Gue) gue_pairs.push_back(p);
    int g = genus_of_pairing(d.sigma, pi);
    Scalar b = trace_product(pi.perm().after(d.sigma), d.Z);
    const size_t n = gue_pairs.size();
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
      IndexSet bset = d.semi;
      int nb = 0;
      for (size_t i = 0; i < n; ++i)
        if (mask & (size_t{1} << i)) {
          bset.push_back(gue_pairs[i].first);
          bset.push_back(gue_pairs[i].second);
          ++nb;
        }
      std::sort(bset.begin(), bset.end());
      if (!restriction_noncrossing(pi.perm(), bset, d.sigma)) continue;
      int na = static_cast<int>(n) - nb;
      Scalar weight = Scalar::param_power_half({ParamKind::T, 0}, 2 * na) *
                      Scalar::param_power_half({ParamKind::OneMinusT, 0}, 2 * nb);
      out += MomentPoly::nu_power(g, d.coeff * b * weight);
    }
  }
  return out;
}

MomentPoly eta_derivative(const Word& w) {
  if (w.degree() == 0) return {};
  EtaData d = eta_setup(w);
  MomentPoly out;
  auto pair_ok = [&](int a, int b) { return d.sym[a - 1] == d.sym[b - 1]; };
  for (const PairPerm& pi : enumerate_pairings(range_set(1, d.r), pair_ok)) {
    std::vector<Transposition> gue_pairs;
    for (const auto& p : pi.pairs())
      if (d.sym[p.first - 1].flavor() == Flavor::Gue) gue_pairs.push_back(p);
    int g = genus_of_pairing(d.sigma, pi);
    Scalar b = trace_product(pi.perm().after(d.sigma), d.Z);
    const size_t n = gue_pairs.size();
    for (size_t ti = 0; ti < n; ++ti) {
      const Transposition& tau = gue_pairs[ti];
      for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        if (mask & (size_t{1} << ti)) continue;  // supp(tau) stays in A
        IndexSet bset = d.semi;
        int nb = 0;
        for (size_t i = 0; i < n; ++i)
          if (mask & (size_t{1} << i)) {
            bset.push_back(gue_pairs[i].first);
            bset.push_back(gue_pairs[i].second);
            ++nb;
          }
        std::sort(bset.begin(), bset.end());
        if (!restriction_noncrossing(pi.perm(), bset, d.sigma)) continue;
        IndexSet bst = bset;
        bst.push_back(tau.first);
        bst.push_back(tau.second);
        std::sort(bst.begin(), bst.end());
        if (restriction_noncrossing(pi.perm(), bst, d.sigma)) continue;  // must turn crossing
        int na = static_cast<int>(n) - nb;
        Scalar weight = Scalar::param_power_half({ParamKind::T, 0}, 2 * na - 2) *
                        Scalar::param_power_half({ParamKind::OneMinusT, 0}, 2 * nb);
        out += MomentPoly::nu_power(g, d.coeff * b * weight);
      }
    }
  }
  return out;
}

}  // namespace gex
