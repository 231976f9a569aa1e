#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gex/genus.hpp"
#include "gex/ncpoly.hpp"
#include "gex/parraud.hpp"
#include "testutil.hpp"

using namespace gex;

namespace {

VecExpr v0() { return VecExpr::single(BasisSymbol::gue_v(0)); }
VecExpr w0() { return VecExpr::single(BasisSymbol::semi(BaseSpace::W, 0)); }

}  // namespace

TEST_CASE("basis symbols") {
  BasisSymbol g = BasisSymbol::gue_v(1);
  CHECK(g.is_plain_v());
  CHECK(g.key() == "gv1");
  BasisSymbol tagged = g.with_tag(0, 3);
  CHECK(tagged.flavor() == Flavor::Semi);
  CHECK(tagged.key() == "sv1/0:3");
  CHECK(tagged.without_outer_tag_as(Flavor::Gue) == g);
  CHECK_THROWS_AS(tagged.with_tag(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(BasisSymbol::semi(BaseSpace::W, 0).with_flavor(Flavor::Gue),
                  std::invalid_argument);
}

TEST_CASE("pushforward basics") {
  NCPoly f = NCPoly::variable(v0()) * NCPoly::variable(v0());
  CHECK(pushforward(LinearMap::identity(), f) == f);

  // x_{2v} = 2 x_v by linearity of the labels: the coefficient-2 letter and
  // the scaled word share the multilinear normal form
  LinearMap twice("2id", [](const BasisSymbol& s) -> std::optional<VecExpr> {
    return VecExpr::single(s, Scalar(2));
  });
  NCPoly pushed = pushforward(twice, NCPoly::variable(v0()));
  CHECK(pushed.words()[0].vars[0] == VecExpr::single(BasisSymbol::gue_v(0), Scalar(2)));
  CHECK(expand_to_basis(pushed) == NCPoly::variable(v0()).scaled(Scalar(2)));

  LinearMap undefined("partial", [](const BasisSymbol&) -> std::optional<VecExpr> {
    return std::nullopt;
  });
  CHECK_THROWS_AS(pushforward(undefined, f), std::invalid_argument);
}

TEST_CASE("free difference quotient") {
  TensorPoly d = fdq(NCPoly::variable(v0()), SubspaceSel::GueV);
  REQUIRE(d.terms().size() == 1);
  CHECK(d.terms()[0].vecs[0] == v0());
  CHECK(d.terms()[0].factors[0].degree() == 0);
  CHECK(d.terms()[0].factors[1].degree() == 0);

  CHECK(fdq(NCPoly::matrix(MatrixLetter::formal("Z1")), SubspaceSel::GueV).is_zero());
  CHECK(fdq(NCPoly::variable(w0()), SubspaceSel::GueV).is_zero());

  // Leibniz on x_v x_v: two terms
  TensorPoly d2 = fdq(NCPoly::variable(v0()) * NCPoly::variable(v0()), SubspaceSel::GueV);
  CHECK(d2.terms().size() == 2);
}

TEST_CASE("cyclic gradient") {
  TensorPoly d = cyclic_gradient(NCPoly::variable(v0()) * NCPoly::variable(v0()),
                                 SubspaceSel::GueV);
  REQUIRE(d.terms().size() == 1);  // v (x) 2 x_v
  CHECK(d.terms()[0].coeff == Scalar(2));
  CHECK(cyclic_gradient(NCPoly::matrix(MatrixLetter::formal("Z1")), SubspaceSel::GueV).is_zero());
  TensorPoly single = cyclic_gradient(NCPoly::variable(v0()), SubspaceSel::GueV);
  REQUIRE(single.terms().size() == 1);
  CHECK(single.terms()[0].factors[0].degree() == 0);
}

TEST_CASE("permuted multiplication") {
  MatrixLetter a = MatrixLetter::formal("Z1");
  MatrixLetter b = MatrixLetter::formal("Z2");
  std::vector<TensorTerm> ts(1);
  ts[0].vecs = {};
  ts[0].factors = {Word::matrix(a), Word::matrix(b)};
  TensorPoly t = TensorPoly::build(0, 2, ts);
  CHECK(mult_perm(t, {1, 2}) == NCPoly::matrix(a) * NCPoly::matrix(b));
  CHECK(mult_perm(t, {2, 1}) == NCPoly::matrix(b) * NCPoly::matrix(a));
  CHECK_THROWS_AS(mult_perm(t, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(mult_perm(t, {1}), std::invalid_argument);

  std::vector<TensorTerm> four(1);
  four[0].factors = {Word::matrix(MatrixLetter::formal("Z1")),
                     Word::matrix(MatrixLetter::formal("Z2")),
                     Word::matrix(MatrixLetter::formal("Z3")),
                     Word::matrix(MatrixLetter::formal("Z4"))};
  NCPoly reversed = mult_perm(TensorPoly::build(0, 4, four), {4, 3, 2, 1});
  NCPoly expect = NCPoly::matrix(MatrixLetter::formal("Z4")) *
                  NCPoly::matrix(MatrixLetter::formal("Z3")) *
                  NCPoly::matrix(MatrixLetter::formal("Z2")) *
                  NCPoly::matrix(MatrixLetter::formal("Z1"));
  CHECK(reversed == expect);
}

TEST_CASE("inner-product contraction") {
  CHECK(inner_product(v0(), v0()) == Scalar(1));
  CHECK(inner_product(v0(), w0()) == Scalar());
  Scalar t_half = Scalar::param_power_half({ParamKind::T, 0}, 1);
  CHECK(inner_product(v0().scaled(t_half), v0().scaled(t_half)) ==
        Scalar::param_power_half({ParamKind::T, 0}, 2));

  std::vector<TensorTerm> ts(1);
  ts[0].vecs = {v0(), v0()};
  ts[0].factors = {Word::one()};
  TensorPoly t = TensorPoly::build(2, 1, ts);
  TensorPoly c = contract_inner(t);
  CHECK(c.vec_slots() == 0);
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms()[0].coeff == Scalar(1));
  CHECK_THROWS_AS(contract_inner(c), std::invalid_argument);
}

TEST_CASE("free Laplacian") {
  NCPoly xx = NCPoly::variable(v0()) * NCPoly::variable(v0());
  TensorPoly l = free_laplacian(xx, SubspaceSel::GueV);
  REQUIRE(l.terms().size() == 1);
  CHECK(l.terms()[0].coeff == Scalar(2));
  CHECK(l.terms()[0].factors[0].degree() == 0);
  CHECK(l.terms()[0].factors[1].degree() == 0);

  NCPoly ww = NCPoly::variable(w0()) * NCPoly::variable(w0());
  CHECK(free_laplacian(ww, SubspaceSel::GueV).is_zero());
  CHECK(free_laplacian(NCPoly::variable(v0()), SubspaceSel::GueV).is_zero());
}

TEST_CASE("Laplacian agrees with the two-index expansion") {
  Philox gen(31, 0);
  CorpusOptions opts;
  opts.max_degree = 8;
  for (int rep = 0; rep < 30; ++rep) {
    Word w = random_monomial(gen, opts);
    Word normal = w;  // two-index oracle assumes no leading matrix
    normal.mats[0] = MatrixLetter();
    for (SubspaceSel sel : {SubspaceSel::GueV, SubspaceSel::SemiW}) {
      TensorPoly lhs = free_laplacian(NCPoly(normal), sel);
      TensorPoly rhs = test::laplacian_two_index_sum(normal, sel);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("expand_to_basis") {
  VecExpr sum = v0();
  sum += w0();
  CHECK(expand_to_basis(NCPoly::variable(sum)) ==
        NCPoly::variable(v0()) + NCPoly::variable(w0()));

  Scalar t_half = Scalar::param_power_half({ParamKind::T, 0}, 1);
  CHECK(expand_to_basis(NCPoly::variable(v0().scaled(t_half))) ==
        NCPoly::variable(v0()).scaled(t_half));

  // (x_{a e1 + b e2})^2 distributes into four words
  VecExpr u = VecExpr::single(BasisSymbol::gue_v(1), Scalar(2));
  u += VecExpr::single(BasisSymbol::gue_v(2), Scalar(3));
  NCPoly sq = NCPoly::variable(u) * NCPoly::variable(u);
  CHECK(expand_to_basis(sq).words().size() == 4);
}

TEST_CASE("expand_to_basis preserves expected traces") {
  Philox gen(32, 0);
  for (int rep = 0; rep < 10; ++rep) {
    VecExpr u = VecExpr::single(BasisSymbol::gue_v(0), Scalar(1 + (long)(gen.next_u64() % 3)));
    u += VecExpr::single(BasisSymbol::gue_v(1),
                         Scalar(make_rational(1, 1 + (long)(gen.next_u64() % 3))));
    NCPoly f = NCPoly::variable(u) * NCPoly::variable(u) * NCPoly::variable(u) *
               NCPoly::variable(u);
    CHECK(expected_trace_poly(f) == expected_trace_poly(expand_to_basis(f)));
  }
}

TEST_CASE("pushforward functoriality") {
  Philox gen(33, 0);
  CorpusOptions opts;
  opts.max_degree = 5;
  LinearMap tag1 = tag_map(0, 2);
  LinearMap al = alpha_map(0);
  for (int rep = 0; rep < 20; ++rep) {
    NCPoly f(random_monomial(gen, opts));
    CHECK(pushforward(LinearMap::compose(al, tag1), f) == pushforward(al, pushforward(tag1, f)));
  }
}

TEST_CASE("Leibniz rule for the free difference quotient") {
  Philox gen(34, 0);
  CorpusOptions opts;
  opts.max_degree = 4;
  for (int rep = 0; rep < 25; ++rep) {
    NCPoly f(random_monomial(gen, opts));
    NCPoly g(random_monomial(gen, opts));
    for (SubspaceSel sel : {SubspaceSel::GueV, SubspaceSel::SemiW}) {
      TensorPoly lhs = fdq(f * g, sel);
      TensorPoly dg = fdq(g, sel);
      TensorPoly df = fdq(f, sel);
      std::vector<TensorTerm> expect;
      for (const auto& t : dg.terms())
        for (const auto& wf : f.words()) {
          TensorTerm nt = t;
          nt.coeff = nt.coeff * wf.coeff;
          Word left = wf;
          left.coeff = Scalar(1);
          nt.factors[0] = left.times(nt.factors[0]);
          expect.push_back(std::move(nt));
        }
      for (const auto& t : df.terms())
        for (const auto& wg : g.words()) {
          TensorTerm nt = t;
          nt.coeff = nt.coeff * wg.coeff;
          Word right = wg;
          right.coeff = Scalar(1);
          nt.factors[1] = nt.factors[1].times(right);
          expect.push_back(std::move(nt));
        }
      CHECK(lhs == TensorPoly::build(1, 2, std::move(expect)));
    }
  }
}

TEST_CASE("matrix letters fuse eagerly") {
  RatMatrix m(2);
  m.at(0, 0) = CplxRational(1);
  m.at(1, 1) = CplxRational(-1);
  MatrixLetter a = MatrixLetter::concrete(m);
  MatrixLetter sq = a.times(a);
  CHECK(sq.is_identity());

  MatrixLetter mixed = MatrixLetter::formal("Z1").times(a);
  CHECK_THROWS_AS(mixed.normalized_trace(), std::invalid_argument);
  CHECK(MatrixLetter::formal("Z1").times(MatrixLetter::formal("Z2")).normalized_trace() ==
        Scalar::trace_symbol(cyclic_normalize({"Z1", "Z2"})));
  CHECK(a.normalized_trace() == Scalar());  // tr diag(1,-1) = 0
}
