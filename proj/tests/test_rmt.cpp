#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gex/rmt.hpp"
#include "gex/wordparse.hpp"
#include "testutil.hpp"

using namespace gex;

TEST_CASE("philox streams are deterministic and independent") {
  Philox a(7, 1), b(7, 1), c(7, 2);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() == b.next_u64());
  Philox a2(7, 1);
  CHECK(a2.next_u64() != c.next_u64());
  double u = Philox(7, 3).next_unit();
  CHECK(u > 0.0);
  CHECK(u <= 1.0);
}

TEST_CASE("GUE samples are Hermitian with the right variances") {
  Philox gen(100, 0);
  for (int rep = 0; rep < 10; ++rep) {
    FloatMatrix x = sample_gue(16, gen);
    CHECK(hermiticity_defect(x) < 1e-12);
  }

  // N=1: scalar real normal with variance 1
  double sum = 0, sumsq = 0;
  const int n1 = 20000;
  Philox g1(101, 0);
  for (int i = 0; i < n1; ++i) {
    FloatMatrix x = sample_gue(1, g1);
    double v = x.at(0, 0).real();
    CHECK(x.at(0, 0).imag() == 0.0);
    sum += v;
    sumsq += v * v;
  }
  double var1 = sumsq / n1 - (sum / n1) * (sum / n1);
  CHECK(std::abs(var1 - 1.0) < 5.0 * std::sqrt(2.0 / n1));

  // Var(X_11) = 1/N at N=4
  const int n4 = 20000;
  double s = 0, sq = 0;
  Philox g4(102, 0);
  for (int i = 0; i < n4; ++i) {
    FloatMatrix x = sample_gue(4, g4);
    double v = x.at(0, 0).real();
    s += v;
    sq += v * v;
  }
  double var4 = sq / n4 - (s / n4) * (s / n4);
  CHECK(std::abs(var4 - 0.25) < 5.0 * 0.25 * std::sqrt(2.0 / n4));

  CHECK_THROWS_AS(sample_gue(0, gen), std::invalid_argument);
}

TEST_CASE("float evaluation of polynomials") {
  FloatMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  std::map<std::string, FloatMatrix> assign{{BasisSymbol::gue_v(1).key(), m}};

  NCPoly x = NCPoly::variable(VecExpr::single(BasisSymbol::gue_v(1)));
  FloatMatrix got = eval_poly_float(x, assign);
  CHECK(std::abs(got.at(0, 0) - std::complex<double>(1.0)) < 1e-15);
  CHECK(std::abs(got.at(1, 1) - std::complex<double>(-1.0)) < 1e-15);

  FloatMatrix sq = eval_poly_float(x * x, assign);
  CHECK(std::abs(sq.at(0, 0) - std::complex<double>(1.0)) < 1e-15);
  CHECK(std::abs(sq.at(0, 1)) < 1e-15);
  CHECK(std::abs(sq.at(1, 1) - std::complex<double>(1.0)) < 1e-15);

  // Z1 x Z2 with concrete letters
  RatMatrix z1(2), z2(2);
  z1.at(0, 1) = CplxRational(1);
  z1.at(1, 0) = CplxRational(1);
  z2.at(0, 0) = CplxRational(2);
  z2.at(1, 1) = CplxRational(2);
  NCPoly word = NCPoly::matrix(MatrixLetter::concrete(z1)) * x *
                NCPoly::matrix(MatrixLetter::concrete(z2));
  FloatMatrix out = eval_poly_float(word, assign);
  // swap rows of m then double: [[0,-2],[2,0]]
  CHECK(std::abs(out.at(0, 1) - std::complex<double>(-2.0)) < 1e-14);
  CHECK(std::abs(out.at(1, 0) - std::complex<double>(2.0)) < 1e-14);

  NCPoly semi = NCPoly::variable(VecExpr::single(BasisSymbol::semi(BaseSpace::W, 0)));
  CHECK_THROWS_WITH_AS(eval_poly_float(semi, assign),
                       "free product not numerically representable", std::invalid_argument);
}

TEST_CASE("monte carlo agrees with the exact engine") {
  NCPoly x2(parse_word("g1^2"));
  MCEstimate e2 = mc_expected_trace(x2, 32, 20000, 11);
  CHECK(std::abs(e2.mean - std::complex<double>(1.0)) < 4.0 * e2.stderr_);

  NCPoly x4(parse_word("g1^4"));
  MCEstimate e4 = mc_expected_trace(x4, 32, 20000, 12);
  double exact4 = 2.0 + 1.0 / 1024.0;
  CHECK(std::abs(e4.mean - std::complex<double>(exact4)) < 4.0 * e4.stderr_);

  NCPoly xyxy(parse_word("g1 g2 g1 g2"));
  MCEstimate exy = mc_expected_trace(xyxy, 16, 20000, 13);
  CHECK(std::abs(exy.mean - std::complex<double>(1.0 / 256.0)) < 4.0 * exy.stderr_);
}

TEST_CASE("monte carlo is reproducible and rejects free letters") {
  NCPoly x4(parse_word("g1^4"));
  MCEstimate a = mc_expected_trace(x4, 8, 5000, 42);
  MCEstimate b = mc_expected_trace(x4, 8, 5000, 42);
  CHECK(a.mean.real() == b.mean.real());
  CHECK(a.mean.imag() == b.mean.imag());
  CHECK(a.stderr_ == b.stderr_);

  MCEstimate c = mc_expected_trace(x4, 8, 5000, 43);
  CHECK(c.mean != a.mean);

  CHECK_THROWS_AS(mc_expected_trace(NCPoly(parse_word("s1 s1")), 8, 10, 1),
                  std::invalid_argument);
}
