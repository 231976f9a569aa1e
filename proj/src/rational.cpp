#include "gex/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace gex {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational beta_integer(unsigned long a, unsigned long b) {
  mpz_class fa, fb, fab;
  mpz_fac_ui(fa.get_mpz_t(), a);
  mpz_fac_ui(fb.get_mpz_t(), b);
  mpz_fac_ui(fab.get_mpz_t(), a + b + 1);
  Rational r(fa * fb, fab);
  r.canonicalize();
  return r;
}

Rational rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) throw std::domain_error("square root of negative rational");
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
    throw std::domain_error("rational is not a perfect square: " + q.get_str());
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

int cmp(const Rational& a, const Rational& b) {
  int c = ::cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

CplxRational& CplxRational::operator+=(const CplxRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

CplxRational& CplxRational::operator-=(const CplxRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

CplxRational& CplxRational::operator*=(const CplxRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string CplxRational::str() const {
  if (is_real()) return rational_to_string(re);
  std::ostringstream os;
  os << rational_to_string(re) << (sgn(im) < 0 ? "-" : "+") << rational_to_string(abs(im)) << "i";
  return os.str();
}

CplxRational operator+(CplxRational a, const CplxRational& b) { return a += b; }
CplxRational operator-(CplxRational a, const CplxRational& b) { return a -= b; }
CplxRational operator*(CplxRational a, const CplxRational& b) { return a *= b; }

bool operator==(const CplxRational& a, const CplxRational& b) {
  return a.re == b.re && a.im == b.im;
}

int cmp(const CplxRational& a, const CplxRational& b) {
  if (int c = cmp(a.re, b.re)) return c;
  return cmp(a.im, b.im);
}

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = CplxRational(1);
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
  RatMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const CplxRational& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < n_; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
  RatMatrix r(n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

CplxRational RatMatrix::normalized_trace() const {
  CplxRational t;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  Rational inv(1, n_);
  return {t.re * inv, t.im * inv};
}

bool RatMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j ? !(at(i, j) == CplxRational(1)) : !at(i, j).is_zero()) return false;
    }
  return true;
}

std::string RatMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < n_; ++j) {
      if (j) os << " ";
      os << at(i, j).str();
    }
  }
  os << "]";
  return os.str();
}

bool operator==(const RatMatrix& a, const RatMatrix& b) { return cmp(a, b) == 0; }

int cmp(const RatMatrix& a, const RatMatrix& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (int c = cmp(a.at(i, j), b.at(i, j))) return c;
  return 0;
}

}  // namespace gex
