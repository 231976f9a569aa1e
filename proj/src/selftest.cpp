#include "gex/selftest.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gex/corpus.hpp"
#include "gex/genus.hpp"
#include "gex/parraud.hpp"
#include "gex/perm.hpp"
#include "gex/rmt.hpp"
#include "gex/scalar.hpp"
#include "gex/wordparse.hpp"

namespace gex {

namespace {

struct Suite {
  std::string name;
  int passed = 0;
  int total = 0;
  void check(bool ok) {
    ++total;
    if (ok) ++passed;
  }
};

double beta_quadrature(int a, int b) {
  // composite Simpson; error far below 1e-12 at these degrees
  const int n = 4000;
  const double h = 1.0 / n;
  auto f = [&](double t) { return std::pow(t, a) * std::pow(1.0 - t, b); };
  double sum = f(0.0) + f(1.0);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

Scalar random_scalar(Philox& gen) {
  Scalar s;
  int terms = 1 + static_cast<int>(gen.next_u64() % 3);
  for (int i = 0; i < terms; ++i) {
    Scalar term(make_rational(static_cast<long>(gen.next_u64() % 7) - 3,
                              1 + static_cast<long>(gen.next_u64() % 4)));
    if (gen.next_u64() & 1)
      term = term * Scalar::param_power_half({ParamKind::T, 0},
                                             static_cast<int>(gen.next_u64() % 4));
    if (gen.next_u64() & 1)
      term = term * Scalar::trace_symbol(CyclicWord({"Z1", (gen.next_u64() & 1) ? "Z2" : "Z1"}));
    s += term;
  }
  return s;
}

void suite_scalars(Suite& su) {
  Philox gen(2024, 0);
  for (int rep = 0; rep < 50; ++rep) {
    Scalar a = random_scalar(gen), b = random_scalar(gen), c = random_scalar(gen);
    su.check((a + b) * c == a * c + b * c);
    su.check(a * b == b * a);
    su.check((a * b) * c == a * (b * c));
  }
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      Rational exact = beta_integer(a, b);
      su.check(std::abs(exact.get_d() - beta_quadrature(a, b)) < 1e-12);
    }
  su.check(cyclic_normalize({"Z2", "Z1"}) == cyclic_normalize({"Z1", "Z2"}));
  su.check(cyclic_normalize({"Z3", "Z1", "Z2"}).letters() ==
           std::vector<std::string>({"Z1", "Z2", "Z3"}));
}

void suite_perms(Suite& su) {
  Philox gen(2024, 1);
  IndexSet S8 = range_set(1, 8);
  Perm fig1 = Perm::from_cycles(S8, {{1, 2, 3, 4, 5}, {6, 7, 8}});
  su.check(fig1.cycle_count() == 2);
  su.check(is_bridge(fig1, {1, 7}));
  su.check(!is_bridge(fig1, {2, 4}));
  su.check(is_cross(fig1, {2, 4}, {3, 5}));
  su.check(!is_noncrossing(PairPerm::from_pairs({{1, 7}, {2, 4}, {3, 5}, {6, 8}}), fig1));

  for (int rep = 0; rep < 2000; ++rep) {
    int n = 4 + static_cast<int>(gen.next_u64() % 5);
    IndexSet S = range_set(1, n);
    Perm sigma = random_perm(gen, S);
    int a = 1 + static_cast<int>(gen.next_u64() % n);
    int b = 1 + static_cast<int>(gen.next_u64() % n);
    if (a == b) continue;
    Perm tau = Perm::transposition_on(S, a, b);
    su.check(take(sigma, tau).inverse() == take(sigma.inverse(), tau.inverse()));
    if (n >= 6) {
      int c = 0, d = 0;
      for (int x = 1; x <= n && !d; ++x)
        if (x != a && x != b) (c ? d : c) = x;
      Perm tau2 = Perm::transposition_on(S, c, d);
      Perm both = tau.after(tau2);
      su.check(take(take(sigma, tau), restrict(tau2, take(sigma, tau).domain())) ==
               take(sigma, both));
    }
  }

  for (int rep = 0; rep < 2000; ++rep) {
    int pairs = 2 + static_cast<int>(gen.next_u64() % 3);
    IndexSet S = range_set(1, 2 * pairs);
    Perm sigma = random_perm(gen, S);
    PairPerm pi = random_pairing(gen, S);
    Transposition tau = pi.pairs()[gen.next_u64() % pi.pairs().size()];
    Perm tperm = Perm::transposition_on(S, tau.first, tau.second);
    IndexSet rest;
    for (int k : S)
      if (k != tau.first && k != tau.second) rest.push_back(k);
    int lhs = genus(sigma, pi.perm()).twice -
              genus(take(sigma, tperm), restrict(pi.perm(), rest)).twice;
    su.check(lhs == (is_bridge(sigma, tau) ? 2 : 0));
    su.check(genus_of_pairing(sigma, pi) >= 0);
  }
}

void suite_genus(Suite& su) {
  // Moment ladder against the one-matrix recurrence
  std::vector<MomentPoly> ladder;
  MomentPoly prev2(Scalar(1)), prev1(Scalar(1));  // E tr X^0, and C_0 helper
  // recurrence: C_{p+1} = 2(2p+1)/(p+2) C_p + p(2p+1)(2p-1)/(p+2) nu C_{p-1}
  for (int p = 0; p + 1 <= 4; ++p) {
    MomentPoly next = prev1.times(Scalar(make_rational(2 * (2 * p + 1), p + 2))) +
                      prev2.times(Scalar(make_rational(
                          static_cast<long>(p) * (2 * p + 1) * (2 * p - 1), p + 2)))
                          .shifted(1);
    ladder.push_back(next);
    prev2 = prev1;
    prev1 = next;
  }
  for (int k = 1; k <= 4; ++k) {
    NCPoly f = NCPoly::one();
    for (int i = 0; i < 2 * k; ++i)
      f = f * NCPoly::variable(VecExpr::single(BasisSymbol::gue_v(0)));
    su.check(expected_trace_poly(f) == ladder[static_cast<size_t>(k - 1)]);
  }

  // Catalan for semicircular powers
  long catalan[7] = {1, 1, 2, 5, 14, 42, 132};
  for (int k = 1; k <= 5; ++k) {
    NCPoly f = NCPoly::one();
    for (int i = 0; i < 2 * k; ++i)
      f = f * NCPoly::variable(VecExpr::single(BasisSymbol::semi(BaseSpace::W, 0)));
    su.check(semicircular_trace(f) == Scalar(catalan[k]));
  }

  // Oracle equivalence on random mixed systems
  Philox gen(2024, 2);
  for (int rep = 0; rep < 150; ++rep) {
    int n = 2 + 2 * static_cast<int>(gen.next_u64() % 3);
    IndexSet S = range_set(1, n);
    TracedWordSystem sys;
    sys.S = S;
    sys.sigma = random_perm(gen, S);
    for (int k : S) {
      bool semi = gen.next_u64() & 1;
      int id = static_cast<int>(gen.next_u64() % 2);
      BasisSymbol sym = semi ? BasisSymbol::semi(BaseSpace::W, id) : BasisSymbol::gue_v(id);
      sys.labels.emplace(k, sym.label());
      sys.Z.emplace(k, (gen.next_u64() & 1)
                           ? MatrixLetter::concrete(random_rational_matrix(gen, 2))
                           : MatrixLetter());
    }
    su.check(expected_trace_genus(sys) == expected_trace_ibp(sys));
  }
}

void suite_ncpoly(Suite& su) {
  Philox gen(2024, 3);
  CorpusOptions opts;
  opts.max_degree = 5;
  for (int rep = 0; rep < 40; ++rep) {
    NCPoly f(random_monomial(gen, opts));
    NCPoly g(random_monomial(gen, opts));
    for (SubspaceSel sel : {SubspaceSel::GueV, SubspaceSel::SemiW}) {
      // Leibniz: fdq(fg) = f * fdq(g) + fdq(f) * g with flanking products
      TensorPoly lhs = fdq(f * g, sel);
      TensorPoly dg = fdq(g, sel);
      TensorPoly df = fdq(f, sel);
      std::vector<TensorTerm> expect;
      for (const auto& t : dg.terms())
        for (const auto& wf : f.words()) {
          TensorTerm nt = t;
          nt.coeff = nt.coeff * wf.coeff;
          nt.factors[0] = Word(wf).scaled(Scalar(1)).times(nt.factors[0]);
          nt.factors[0].coeff = Scalar(1);
          expect.push_back(nt);
        }
      for (const auto& t : df.terms())
        for (const auto& wg : g.words()) {
          TensorTerm nt = t;
          nt.coeff = nt.coeff * wg.coeff;
          nt.factors[1] = nt.factors[1].times(Word(wg));
          nt.factors[1].coeff = Scalar(1);
          expect.push_back(nt);
        }
      su.check(lhs == TensorPoly::build(1, 2, std::move(expect)));
    }
  }
  // pushforward functoriality through alpha-style maps
  LinearMap tag1 = tag_map(0, 1);
  LinearMap al = alpha_map(0);
  for (int rep = 0; rep < 20; ++rep) {
    NCPoly f(random_monomial(gen, opts));
    NCPoly once = pushforward(LinearMap::compose(al, tag1), f);
    NCPoly twice = pushforward(al, pushforward(tag1, f));
    su.check(once == twice);
  }
}

void suite_parraud(Suite& su) {
  for (int d = 1; d <= 6; ++d) {
    NCPoly f = NCPoly::one();
    for (int i = 0; i < d; ++i)
      f = f * NCPoly::variable(VecExpr::single(BasisSymbol::gue_v(0)));
    su.check(verify_theorem1(f).pass);
  }
  Philox gen(2024, 4);
  CorpusOptions opts;
  opts.max_degree = 6;
  for (int rep = 0; rep < 10; ++rep) {
    Word w = random_monomial(gen, opts);
    su.check(verify_theorem1(NCPoly(w)).pass);
    for (CrossVariant v : {CrossVariant::VV, CrossVariant::VW})
      su.check(dcross(NCPoly(w), v, 0) == dcross_via_hterms(w, v, 0));
    MomentPoly lhs = eta_derivative(w);
    MomentPoly rhs = integrate_param(expected_trace_poly(tcross_parametric(NCPoly(w), 0)),
                                     ParamKind::S, 0)
                         .shifted(1);
    MomentPoly diff;
    for (const auto& [g, c] : (lhs - rhs).coeffs())
      diff += MomentPoly::nu_power(g, expand_in_t(c, 0));
    su.check(diff.is_zero());
  }
  AsymptoticExpansion ae = expand_asymptotic(parse_word("g1^8").degree() ? NCPoly(parse_word("g1^8")) : NCPoly::one(), 2);
  su.check(ae.coeffs.size() == 3 && ae.coeffs[0] == Scalar(14) && ae.coeffs[1] == Scalar(70) &&
           ae.coeffs[2] == Scalar(21) && ae.remainder.is_zero());
}

void suite_rmt(Suite& su) {
  Philox gen(99, 0);
  FloatMatrix x = sample_gue(16, gen);
  su.check(hermiticity_defect(x) < 1e-12);
  NCPoly f(parse_word("g1^4"));
  MCEstimate a = mc_expected_trace(f, 16, 4000, 7);
  MCEstimate b = mc_expected_trace(f, 16, 4000, 7);
  su.check(a.mean == b.mean && a.stderr_ == b.stderr_);
  Scalar exact = moment_eval(expected_trace_poly(f), Rational(16));
  double z = std::abs(a.mean - std::complex<double>(exact.constant_value().re.get_d(), 0.0)) /
             a.stderr_;
  su.check(z < 5.0);
}

}  // namespace

int run_selftest(std::ostream& os) {
  std::vector<std::pair<std::string, std::function<void(Suite&)>>> suites = {
      {"scalars", suite_scalars}, {"perms", suite_perms},   {"genus", suite_genus},
      {"ncpoly", suite_ncpoly},   {"parraud", suite_parraud}, {"rmt", suite_rmt},
  };
  bool all_ok = true;
  for (auto& [name, fn] : suites) {
    Suite su{name};
    fn(su);
    os << name << ": " << su.passed << "/" << su.total
       << (su.passed == su.total ? " ok" : " FAILED") << "\n";
    all_ok = all_ok && su.passed == su.total;
  }
  return all_ok ? 0 : 1;
}

}  // namespace gex
