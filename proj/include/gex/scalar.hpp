#ifndef GEX_SCALAR_HPP
#define GEX_SCALAR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gex/rational.hpp"

namespace gex {

/// Interpolation parameters of the expansion formula. t and 1-t are independent
/// symbols; the relation t + (1-t) = 1 is applied only by expand_in_t.
enum class ParamKind : uint8_t { T, OneMinusT, S, OneMinusS };

struct ParamSymbol {
  ParamKind kind;
  int level = 0;  // which iteration of the formula introduced it

  std::string str() const;
};

ParamSymbol partner(const ParamSymbol& s);
bool is_t_family(ParamKind k);
int cmp(const ParamSymbol& a, const ParamSymbol& b);
bool operator==(const ParamSymbol& a, const ParamSymbol& b);
bool operator<(const ParamSymbol& a, const ParamSymbol& b);

/// Monomial in the parameters with half-integer exponents, stored as integer
/// numerators over denominator 2. Exponents are nonnegative; zeros absent.
class ParamMonomial {
 public:
  ParamMonomial() = default;

  static ParamMonomial power_half(const ParamSymbol& s, int numerator_over_two);

  bool empty() const { return exp2_.empty(); }
  int exponent2(const ParamSymbol& s) const;
  const std::map<ParamSymbol, int>& exponents2() const { return exp2_; }

  ParamMonomial times(const ParamMonomial& o) const;
  /// Drops the symbol entirely (used once an integration has consumed it).
  ParamMonomial without(const ParamSymbol& s) const;
  ParamMonomial with_exponent2(const ParamSymbol& s, int numerator_over_two) const;

  std::string str() const;

 private:
  std::map<ParamSymbol, int> exp2_;
};

int cmp(const ParamMonomial& a, const ParamMonomial& b);
bool operator==(const ParamMonomial& a, const ParamMonomial& b);
bool operator<(const ParamMonomial& a, const ParamMonomial& b);

/// Trace word over formal matrix letters, stored in the lexicographically
/// minimal rotation so that equality is invariant under cyclic shifts.
class CyclicWord {
 public:
  explicit CyclicWord(std::vector<std::string> letters);

  const std::vector<std::string>& letters() const { return letters_; }
  std::string str() const;

 private:
  std::vector<std::string> letters_;
};

CyclicWord cyclic_normalize(const std::vector<std::string>& letters);
int cmp(const CyclicWord& a, const CyclicWord& b);
bool operator==(const CyclicWord& a, const CyclicWord& b);
bool operator<(const CyclicWord& a, const CyclicWord& b);

/// Commutative multiset of trace symbols.
using TraceBag = std::vector<CyclicWord>;  // kept sorted

TraceBag trace_bag_union(const TraceBag& a, const TraceBag& b);
int cmp(const TraceBag& a, const TraceBag& b);

/// Exact coefficient: sum of complex-rational multiples of (parameter monomial,
/// trace-symbol multiset) pairs. Forms a commutative ring.
class Scalar {
 public:
  struct Key {
    ParamMonomial mono;
    TraceBag traces;
  };

  Scalar() = default;
  Scalar(long n);  // NOLINT(google-explicit-constructor)
  explicit Scalar(const Rational& q);
  explicit Scalar(const CplxRational& c);

  static Scalar one() { return Scalar(1); }
  static Scalar param_power_half(const ParamSymbol& s, int numerator_over_two);
  static Scalar trace_symbol(const CyclicWord& w);

  bool is_zero() const { return terms_.empty(); }
  /// True when the value is a plain complex rational (no parameters, no traces).
  bool is_constant() const;
  CplxRational constant_value() const;  // throws unless is_constant()

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar times_coeff(const CplxRational& c) const;

  const std::map<Key, CplxRational, bool (*)(const Key&, const Key&)>& terms() const {
    return terms_;
  }

  /// All parameter symbols occurring in any term.
  std::vector<ParamSymbol> param_symbols() const;
  /// Largest exponent numerator (over 2) of s across terms; 0 if absent.
  int max_exponent2(const ParamSymbol& s) const;
  /// True when every occurrence of s has an even numerator (integer exponent).
  bool integer_exponents(const ParamSymbol& s) const;

  std::string str() const;

 private:
  static bool key_less(const Key& a, const Key& b);
  void add_term(const Key& k, const CplxRational& c);

  std::map<Key, CplxRational, bool (*)(const Key&, const Key&)> terms_{&Scalar::key_less};

  friend Scalar integrate_param(const Scalar&, ParamKind, int);
  friend Scalar substitute_param(const Scalar&, const ParamSymbol&, const Rational&);
  friend Scalar expand_in_t(const Scalar&, int);
  friend Scalar derivative_t(const Scalar&, int);
};

Scalar operator+(Scalar a, const Scalar& b);
Scalar operator-(Scalar a, const Scalar& b);
bool operator==(const Scalar& a, const Scalar& b);
int cmp(const Scalar& a, const Scalar& b);

/// Integrates the (base, level) symbol and its 1-x partner over [0,1]:
/// each monomial x^a (1-x)^b with integer a, b becomes a! b! / (a+b+1)!.
/// Throws std::domain_error on half-integer exponents.
Scalar integrate_param(const Scalar& x, ParamKind base, int level);

/// Substitutes a rational value for one symbol; the partner is left untouched.
/// Half-integer exponents require the value to be a perfect square.
Scalar substitute_param(const Scalar& x, const ParamSymbol& sym, const Rational& value);

/// Eliminates (1-t) at the given level via binomial expansion into powers of t.
/// Requires integer exponents.
Scalar expand_in_t(const Scalar& x, int level);

/// d/dt on a scalar already in the t-only basis for the given level.
Scalar derivative_t(const Scalar& x, int level);

/// Polynomial in nu = 1/N^2 with Scalar coefficients.
class MomentPoly {
 public:
  MomentPoly() = default;
  explicit MomentPoly(const Scalar& constant);

  static MomentPoly nu_power(int g, const Scalar& coeff);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  Scalar coeff(int g) const;
  const std::map<int, Scalar>& coeffs() const { return coeffs_; }

  MomentPoly& operator+=(const MomentPoly& o);
  MomentPoly& operator-=(const MomentPoly& o);
  MomentPoly times(const Scalar& s) const;
  /// Multiplies by nu^k.
  MomentPoly shifted(int k) const;

  std::string str() const;

 private:
  void set_coeff(int g, const Scalar& s);
  std::map<int, Scalar> coeffs_;
};

MomentPoly operator+(MomentPoly a, const MomentPoly& b);
MomentPoly operator-(MomentPoly a, const MomentPoly& b);
bool operator==(const MomentPoly& a, const MomentPoly& b);

/// Evaluates at a concrete positive rational N: sum of coeff_g N^{-2g}.
Scalar moment_eval(const MomentPoly& p, const Rational& N);

MomentPoly integrate_param(const MomentPoly& p, ParamKind base, int level);
Scalar integrate_params_all(const Scalar& s);
MomentPoly integrate_params_all(const MomentPoly& p);

}  // namespace gex

#endif
