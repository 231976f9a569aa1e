#ifndef GEX_RATIONAL_HPP
#define GEX_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gex {

using Rational = mpq_class;

/// Builds a canonical rational, rejecting zero denominators.
Rational make_rational(long num, long den = 1);

/// Parses "num/den" or "num" (optional sign). Throws on malformed input.
Rational rational_from_string(const std::string& s);

std::string rational_to_string(const Rational& q);

/// Exact a! b! / (a+b+1)!, i.e. the Beta integral B(a+1, b+1) for integer a, b >= 0.
Rational beta_integer(unsigned long a, unsigned long b);

/// Exact square root of a perfect-square rational; throws std::domain_error otherwise.
Rational rational_sqrt(const Rational& q);

int cmp(const Rational& a, const Rational& b);

struct CplxRational {
  Rational re{0};
  Rational im{0};

  CplxRational() = default;
  CplxRational(long n) : re(n, 1) {}  // NOLINT(google-explicit-constructor)
  CplxRational(Rational r) : re(std::move(r)) {}
  CplxRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  CplxRational& operator+=(const CplxRational& o);
  CplxRational& operator-=(const CplxRational& o);
  CplxRational& operator*=(const CplxRational& o);
  CplxRational operator-() const { return {Rational(-re), Rational(-im)}; }

  std::string str() const;
};

CplxRational operator+(CplxRational a, const CplxRational& b);
CplxRational operator-(CplxRational a, const CplxRational& b);
CplxRational operator*(CplxRational a, const CplxRational& b);
bool operator==(const CplxRational& a, const CplxRational& b);
int cmp(const CplxRational& a, const CplxRational& b);

/// Dense square matrix over complex rationals, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  explicit RatMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  static RatMatrix identity(int n);

  int dim() const { return n_; }
  CplxRational& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const CplxRational& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator+(const RatMatrix& o) const;

  /// tr_d = (1/d) Tr; the identity has normalized trace 1.
  CplxRational normalized_trace() const;

  bool is_identity() const;

  std::string str() const;

 private:
  int n_ = 0;
  std::vector<CplxRational> a_;
};

bool operator==(const RatMatrix& a, const RatMatrix& b);
int cmp(const RatMatrix& a, const RatMatrix& b);

}  // namespace gex

#endif
