#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gex/scalar.hpp"
#include "testutil.hpp"

using namespace gex;

namespace {

Scalar tpow(int exp2, int level = 0) {
  return Scalar::param_power_half({ParamKind::T, level}, exp2);
}
Scalar omtpow(int exp2, int level = 0) {
  return Scalar::param_power_half({ParamKind::OneMinusT, level}, exp2);
}

Scalar random_scalar(Philox& gen, bool with_params = true) {
  Scalar s;
  int terms = 1 + static_cast<int>(gen.next_u64() % 3);
  for (int i = 0; i < terms; ++i) {
    Scalar term(make_rational(static_cast<long>(gen.next_u64() % 9) - 4,
                              1 + static_cast<long>(gen.next_u64() % 4)));
    if (with_params && (gen.next_u64() & 1))
      term = term * tpow(2 * static_cast<int>(gen.next_u64() % 3));
    if (gen.next_u64() & 1)
      term = term * Scalar::trace_symbol(
                        cyclic_normalize({"Z1", (gen.next_u64() & 1) ? "Z2" : "Z1"}));
    s += term;
  }
  return s;
}

}  // namespace

TEST_CASE("rational serialization round trip") {
  CHECK(rational_to_string(make_rational(3, 6)) == "1/2");
  CHECK(rational_from_string("-7/3") == make_rational(-7, 3));
  CHECK(rational_from_string("5") == make_rational(5));
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
}

TEST_CASE("cyclic normalization") {
  CHECK(cyclic_normalize({"Z2", "Z1"}) == cyclic_normalize({"Z1", "Z2"}));
  CHECK(cyclic_normalize({"Z1"}).letters() == std::vector<std::string>{"Z1"});
  CHECK(cyclic_normalize({"Z3", "Z1", "Z2"}).letters() ==
        std::vector<std::string>({"Z1", "Z2", "Z3"}));
  CHECK_THROWS_AS(cyclic_normalize({}), std::invalid_argument);

  Philox gen(11, 0);
  for (int rep = 0; rep < 200; ++rep) {
    size_t len = 1 + gen.next_u64() % 6;
    std::vector<std::string> letters;
    for (size_t i = 0; i < len; ++i)
      letters.push_back("Z" + std::to_string(gen.next_u64() % 3));
    size_t k = gen.next_u64() % len;
    std::vector<std::string> rotated(letters.begin() + k, letters.end());
    rotated.insert(rotated.end(), letters.begin(), letters.begin() + k);
    CHECK(cyclic_normalize(letters) == cyclic_normalize(rotated));
  }
}

TEST_CASE("scalar ring operations") {
  Scalar a = tpow(1);
  CHECK(Scalar() + a == a);                  // 0 + a = a
  CHECK(a * a == tpow(2));                   // t^{1/2} t^{1/2} = t
  Scalar with_trace = Scalar(1) + Scalar::trace_symbol(cyclic_normalize({"Z1", "Z2"}));
  CHECK(with_trace * Scalar(2) == with_trace + with_trace);

  Philox gen(12, 0);
  for (int rep = 0; rep < 100; ++rep) {
    Scalar x = random_scalar(gen), y = random_scalar(gen), z = random_scalar(gen);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x - x == Scalar());
  }
}

TEST_CASE("integrate_param beta values") {
  CHECK(integrate_param(Scalar(1), ParamKind::T, 0) == Scalar(1));       // t^0 (1-t)^0
  CHECK(integrate_param(omtpow(2), ParamKind::T, 0) ==
        Scalar(make_rational(1, 2)));                                    // (1-t)^1
  CHECK(integrate_param(tpow(2) * omtpow(2), ParamKind::T, 0) ==
        Scalar(make_rational(1, 6)));                                    // Beta(2,2)
  CHECK_THROWS_AS(integrate_param(tpow(1), ParamKind::T, 0), std::domain_error);
}

TEST_CASE("integration agrees with quadrature") {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      Scalar mono = tpow(2 * a) * omtpow(2 * b);
      Scalar exact = integrate_param(mono, ParamKind::T, 0);
      double numeric = test::quad01(
          [&](double t) { return std::pow(t, a) * std::pow(1.0 - t, b); });
      CHECK(std::abs(exact.constant_value().re.get_d() - numeric) < 1e-12);
    }
}

TEST_CASE("integration commutes with symbol-free multiplication") {
  Philox gen(13, 0);
  for (int rep = 0; rep < 50; ++rep) {
    Scalar x = random_scalar(gen);         // integer t powers only
    Scalar c = random_scalar(gen, false);  // symbol-free
    Scalar xi = integrate_param(x, ParamKind::T, 0);
    Scalar lhs = integrate_param(x * c, ParamKind::T, 0);
    CHECK(lhs == xi * c);
  }
}

TEST_CASE("substitute_param") {
  CHECK(substitute_param(tpow(1), {ParamKind::T, 0}, make_rational(1, 4)) ==
        Scalar(make_rational(1, 2)));
  CHECK(substitute_param(tpow(4), {ParamKind::T, 0}, Rational(1)) == Scalar(1));
  CHECK(substitute_param(omtpow(2), {ParamKind::OneMinusT, 0}, make_rational(3, 4)) ==
        Scalar(make_rational(3, 4)));
  CHECK_THROWS_AS(substitute_param(tpow(1), {ParamKind::T, 0}, make_rational(1, 3)),
                  std::domain_error);
  // partner symbol untouched
  Scalar mixed = tpow(2) * omtpow(2);
  CHECK(substitute_param(mixed, {ParamKind::T, 0}, Rational(1)) == omtpow(2));
}

TEST_CASE("moment_eval") {
  MomentPoly p(Scalar(2));
  p += MomentPoly::nu_power(1, Scalar(1));  // 2 + nu
  CHECK(moment_eval(p, Rational(1)) == Scalar(3));
  CHECK(moment_eval(p, Rational(2)) == Scalar(make_rational(9, 4)));
  CHECK(p.coeff(0) == Scalar(2));  // formal nu -> 0 limit
  CHECK_THROWS_AS(moment_eval(p, Rational(0)), std::invalid_argument);
}

TEST_CASE("expand_in_t and derivative") {
  // (1-t)^2 = 1 - 2t + t^2
  Scalar expanded = expand_in_t(omtpow(4), 0);
  Scalar expect = Scalar(1) - tpow(2).times_coeff(CplxRational(2)) + tpow(4);
  CHECK(expanded == expect);
  CHECK(derivative_t(tpow(4), 0) == tpow(2).times_coeff(CplxRational(2)));
  CHECK(derivative_t(Scalar(7), 0) == Scalar());
  // substitution at endpoints after expansion
  CHECK(substitute_param(expanded, {ParamKind::T, 0}, Rational(0)) == Scalar(1));
  CHECK(substitute_param(expanded, {ParamKind::T, 0}, Rational(1)) == Scalar());
}

TEST_CASE("moment poly printing") {
  MomentPoly p(Scalar(2));
  p += MomentPoly::nu_power(1, Scalar(1));
  CHECK(p.str() == "2 + 1·ν");
}
