#include "gex/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gex {

std::string ParamSymbol::str() const {
  std::ostringstream os;
  switch (kind) {
    case ParamKind::T: os << "t"; break;
    case ParamKind::OneMinusT: os << "(1-t)"; break;
    case ParamKind::S: os << "s"; break;
    case ParamKind::OneMinusS: os << "(1-s)"; break;
  }
  os << "[" << level << "]";
  return os.str();
}

ParamSymbol partner(const ParamSymbol& s) {
  switch (s.kind) {
    case ParamKind::T: return {ParamKind::OneMinusT, s.level};
    case ParamKind::OneMinusT: return {ParamKind::T, s.level};
    case ParamKind::S: return {ParamKind::OneMinusS, s.level};
    case ParamKind::OneMinusS: return {ParamKind::S, s.level};
  }
  throw std::logic_error("bad ParamKind");
}

bool is_t_family(ParamKind k) { return k == ParamKind::T || k == ParamKind::OneMinusT; }

int cmp(const ParamSymbol& a, const ParamSymbol& b) {
  if (a.level != b.level) return a.level < b.level ? -1 : 1;
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  return 0;
}
bool operator==(const ParamSymbol& a, const ParamSymbol& b) { return cmp(a, b) == 0; }
bool operator<(const ParamSymbol& a, const ParamSymbol& b) { return cmp(a, b) < 0; }

ParamMonomial ParamMonomial::power_half(const ParamSymbol& s, int numerator_over_two) {
  if (numerator_over_two < 0) throw std::invalid_argument("negative parameter exponent");
  ParamMonomial m;
  if (numerator_over_two > 0) m.exp2_[s] = numerator_over_two;
  return m;
}

int ParamMonomial::exponent2(const ParamSymbol& s) const {
  auto it = exp2_.find(s);
  return it == exp2_.end() ? 0 : it->second;
}

ParamMonomial ParamMonomial::times(const ParamMonomial& o) const {
  ParamMonomial r = *this;
  for (const auto& [sym, e] : o.exp2_) {
    int& v = r.exp2_[sym];
    v += e;
    if (v == 0) r.exp2_.erase(sym);
  }
  return r;
}

ParamMonomial ParamMonomial::without(const ParamSymbol& s) const {
  ParamMonomial r = *this;
  r.exp2_.erase(s);
  return r;
}

ParamMonomial ParamMonomial::with_exponent2(const ParamSymbol& s, int numerator_over_two) const {
  ParamMonomial r = *this;
  if (numerator_over_two == 0)
    r.exp2_.erase(s);
  else
    r.exp2_[s] = numerator_over_two;
  return r;
}

std::string ParamMonomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [sym, e] : exp2_) {
    if (!first) os << "·";
    first = false;
    os << sym.str();
    if (e != 2) {
      os << "^";
      if (e % 2 == 0)
        os << e / 2;
      else
        os << "{" << e << "/2}";
    }
  }
  return os.str();
}

int cmp(const ParamMonomial& a, const ParamMonomial& b) {
  auto ia = a.exponents2().begin(), ib = b.exponents2().begin();
  auto ea = a.exponents2().end(), eb = b.exponents2().end();
  for (; ia != ea && ib != eb; ++ia, ++ib) {
    if (int c = cmp(ia->first, ib->first)) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != ea) return 1;
  if (ib != eb) return -1;
  return 0;
}
bool operator==(const ParamMonomial& a, const ParamMonomial& b) { return cmp(a, b) == 0; }
bool operator<(const ParamMonomial& a, const ParamMonomial& b) { return cmp(a, b) < 0; }

namespace {

std::vector<std::string> minimal_rotation(const std::vector<std::string>& w) {
  std::vector<std::string> best = w;
  std::vector<std::string> cur = w;
  for (size_t k = 1; k < w.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

}  // namespace

CyclicWord::CyclicWord(std::vector<std::string> letters) {
  if (letters.empty()) throw std::invalid_argument("empty trace word");
  letters_ = minimal_rotation(letters);
}

std::string CyclicWord::str() const {
  std::ostringstream os;
  os << "tr[";
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << " ";
    os << letters_[i];
  }
  os << "]";
  return os.str();
}

CyclicWord cyclic_normalize(const std::vector<std::string>& letters) { return CyclicWord(letters); }

int cmp(const CyclicWord& a, const CyclicWord& b) {
  if (a.letters() != b.letters()) return a.letters() < b.letters() ? -1 : 1;
  return 0;
}
bool operator==(const CyclicWord& a, const CyclicWord& b) { return cmp(a, b) == 0; }
bool operator<(const CyclicWord& a, const CyclicWord& b) { return cmp(a, b) < 0; }

TraceBag trace_bag_union(const TraceBag& a, const TraceBag& b) {
  TraceBag r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r),
             [](const CyclicWord& x, const CyclicWord& y) { return x < y; });
  return r;
}

int cmp(const TraceBag& a, const TraceBag& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i)
    if (int c = cmp(a[i], b[i])) return c;
  return 0;
}

bool Scalar::key_less(const Key& a, const Key& b) {
  if (int c = cmp(a.mono, b.mono)) return c < 0;
  return cmp(a.traces, b.traces) < 0;
}

Scalar::Scalar(long n) {
  if (n != 0) terms_.emplace(Key{}, CplxRational(n));
}

Scalar::Scalar(const Rational& q) {
  if (sgn(q) != 0) terms_.emplace(Key{}, CplxRational(q));
}

Scalar::Scalar(const CplxRational& c) {
  if (!c.is_zero()) terms_.emplace(Key{}, c);
}

Scalar Scalar::param_power_half(const ParamSymbol& s, int numerator_over_two) {
  Scalar r;
  r.terms_.emplace(Key{ParamMonomial::power_half(s, numerator_over_two), {}}, CplxRational(1));
  return r;
}

Scalar Scalar::trace_symbol(const CyclicWord& w) {
  Scalar r;
  r.terms_.emplace(Key{{}, TraceBag{w}}, CplxRational(1));
  return r;
}

bool Scalar::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.mono.empty() &&
         terms_.begin()->first.traces.empty();
}

CplxRational Scalar::constant_value() const {
  if (terms_.empty()) return {};
  if (!is_constant()) throw std::domain_error("scalar is not a plain constant: " + str());
  return terms_.begin()->second;
}

void Scalar::add_term(const Key& k, const CplxRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_)
      r.add_term(Key{ka.mono.times(kb.mono), trace_bag_union(ka.traces, kb.traces)}, ca * cb);
  return r;
}

Scalar Scalar::times_coeff(const CplxRational& c) const {
  Scalar r;
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

std::vector<ParamSymbol> Scalar::param_symbols() const {
  std::set<ParamSymbol> seen;
  for (const auto& [k, c] : terms_)
    for (const auto& [sym, e] : k.mono.exponents2()) seen.insert(sym);
  return {seen.begin(), seen.end()};
}

int Scalar::max_exponent2(const ParamSymbol& s) const {
  int m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.mono.exponent2(s));
  return m;
}

bool Scalar::integer_exponents(const ParamSymbol& s) const {
  for (const auto& [k, c] : terms_)
    if (k.mono.exponent2(s) % 2 != 0) return false;
  return true;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string coeff = c.str();
    if (!first) {
      if (c.is_real() && sgn(c.re) < 0) {
        os << " - ";
        coeff = (-c).str();
      } else {
        os << " + ";
      }
    }
    first = false;
    bool have_tail = !k.mono.empty() || !k.traces.empty();
    bool coeff_is_one = (c == CplxRational(1));
    if (!coeff_is_one || !have_tail) os << coeff;
    if (!coeff_is_one && have_tail) os << "·";
    if (!k.mono.empty()) os << k.mono.str();
    for (size_t i = 0; i < k.traces.size(); ++i) {
      if (!k.mono.empty() || i > 0 || !coeff_is_one) os << "·";
      os << k.traces[i].str();
    }
  }
  return os.str();
}

Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

bool operator==(const Scalar& a, const Scalar& b) { return cmp(a, b) == 0; }

int cmp(const Scalar& a, const Scalar& b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  auto ea = a.terms().end(), eb = b.terms().end();
  for (; ia != ea && ib != eb; ++ia, ++ib) {
    if (int c = cmp(ia->first.mono, ib->first.mono)) return c;
    if (int c = cmp(ia->first.traces, ib->first.traces)) return c;
    if (int c = cmp(ia->second, ib->second)) return c;
  }
  if (ia != ea) return 1;
  if (ib != eb) return -1;
  return 0;
}

Scalar integrate_param(const Scalar& x, ParamKind base, int level) {
  if (base != ParamKind::T && base != ParamKind::S)
    throw std::invalid_argument("integrate_param expects the t or s symbol of a pair");
  ParamSymbol sym{base, level};
  ParamSymbol one_minus = partner(sym);
  Scalar r;
  for (const auto& [k, c] : x.terms_) {
    int ea = k.mono.exponent2(sym);
    int eb = k.mono.exponent2(one_minus);
    if (ea % 2 != 0 || eb % 2 != 0)
      throw std::domain_error("non-integer exponent: integrate only after pairing contraction");
    Rational beta = beta_integer(static_cast<unsigned long>(ea / 2),
                                 static_cast<unsigned long>(eb / 2));
    Scalar::Key key{k.mono.without(sym).without(one_minus), k.traces};
    r.add_term(key, c * CplxRational(beta));
  }
  return r;
}

Scalar substitute_param(const Scalar& x, const ParamSymbol& sym, const Rational& value) {
  if (sgn(value) < 0 || value > 1)
    throw std::invalid_argument("parameter value must lie in [0,1]");
  Scalar r;
  for (const auto& [k, c] : x.terms_) {
    int e2 = k.mono.exponent2(sym);
    CplxRational factor(1);
    if (e2 > 0) {
      Rational v;
      if (e2 % 2 == 0) {
        v = 1;
        for (int i = 0; i < e2 / 2; ++i) v *= value;
      } else {
        Rational root = rational_sqrt(value);  // throws unless a perfect square
        v = 1;
        for (int i = 0; i < e2; ++i) v *= root;
      }
      factor = CplxRational(v);
    }
    r.add_term(Scalar::Key{k.mono.without(sym), k.traces}, c * factor);
  }
  return r;
}

Scalar expand_in_t(const Scalar& x, int level) {
  ParamSymbol t{ParamKind::T, level};
  ParamSymbol omt{ParamKind::OneMinusT, level};
  Scalar r;
  for (const auto& [k, c] : x.terms_) {
    int eb = k.mono.exponent2(omt);
    if (eb % 2 != 0) throw std::domain_error("expand_in_t requires integer exponents");
    int b = eb / 2;
    int et = k.mono.exponent2(t);
    if (et % 2 != 0) throw std::domain_error("expand_in_t requires integer exponents");
    // (1-t)^b = sum_i C(b,i) (-t)^i
    mpz_class binom;
    for (int i = 0; i <= b; ++i) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(b),
                   static_cast<unsigned long>(i));
      Rational coef(binom);
      if (i % 2 == 1) coef = -coef;
      Scalar::Key key{k.mono.without(omt).with_exponent2(t, et + 2 * i), k.traces};
      r.add_term(key, c * CplxRational(coef));
    }
  }
  return r;
}

Scalar derivative_t(const Scalar& x, int level) {
  ParamSymbol t{ParamKind::T, level};
  ParamSymbol omt{ParamKind::OneMinusT, level};
  Scalar r;
  for (const auto& [k, c] : x.terms_) {
    if (k.mono.exponent2(omt) != 0)
      throw std::domain_error("derivative_t expects the t-only basis; run expand_in_t first");
    int e2 = k.mono.exponent2(t);
    if (e2 % 2 != 0) throw std::domain_error("derivative_t requires integer exponents");
    int a = e2 / 2;
    if (a == 0) continue;
    Scalar::Key key{k.mono.with_exponent2(t, e2 - 2), k.traces};
    r.add_term(key, c * CplxRational(Rational(a)));
  }
  return r;
}

MomentPoly::MomentPoly(const Scalar& constant) { set_coeff(0, constant); }

MomentPoly MomentPoly::nu_power(int g, const Scalar& coeff) {
  if (g < 0) throw std::invalid_argument("negative nu power");
  MomentPoly p;
  p.set_coeff(g, coeff);
  return p;
}

Scalar MomentPoly::coeff(int g) const {
  auto it = coeffs_.find(g);
  return it == coeffs_.end() ? Scalar() : it->second;
}

void MomentPoly::set_coeff(int g, const Scalar& s) {
  if (s.is_zero())
    coeffs_.erase(g);
  else
    coeffs_[g] = s;
}

MomentPoly& MomentPoly::operator+=(const MomentPoly& o) {
  for (const auto& [g, s] : o.coeffs_) set_coeff(g, coeff(g) + s);
  return *this;
}

MomentPoly& MomentPoly::operator-=(const MomentPoly& o) {
  for (const auto& [g, s] : o.coeffs_) set_coeff(g, coeff(g) - s);
  return *this;
}

MomentPoly MomentPoly::times(const Scalar& s) const {
  MomentPoly r;
  for (const auto& [g, c] : coeffs_) r.set_coeff(g, c * s);
  return r;
}

MomentPoly MomentPoly::shifted(int k) const {
  MomentPoly r;
  for (const auto& [g, c] : coeffs_) {
    if (g + k < 0) throw std::invalid_argument("negative nu power after shift");
    r.set_coeff(g + k, c);
  }
  return r;
}

std::string MomentPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    bool simple = c.is_constant() || c.terms().size() == 1;
    std::string cs = c.str();
    if (!simple) cs = "(" + cs + ")";
    os << cs;
    if (g == 1)
      os << "·ν";
    else if (g > 1)
      os << "·ν^" << g;
  }
  return os.str();
}

MomentPoly operator+(MomentPoly a, const MomentPoly& b) { return a += b; }
MomentPoly operator-(MomentPoly a, const MomentPoly& b) { return a -= b; }

bool operator==(const MomentPoly& a, const MomentPoly& b) {
  if (a.coeffs().size() != b.coeffs().size()) return false;
  auto ia = a.coeffs().begin();
  for (auto ib = b.coeffs().begin(); ib != b.coeffs().end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  }
  return true;
}

Scalar moment_eval(const MomentPoly& p, const Rational& N) {
  if (sgn(N) <= 0) throw std::invalid_argument("N must be positive");
  Scalar r;
  Rational nu = Rational(1) / (N * N);
  for (const auto& [g, c] : p.coeffs()) {
    Rational w(1);
    for (int i = 0; i < g; ++i) w *= nu;
    r += c.times_coeff(CplxRational(w));
  }
  return r;
}

MomentPoly integrate_param(const MomentPoly& p, ParamKind base, int level) {
  MomentPoly r;
  for (const auto& [g, c] : p.coeffs()) r += MomentPoly::nu_power(g, integrate_param(c, base, level));
  return r;
}

Scalar integrate_params_all(const Scalar& s) {
  Scalar r = s;
  // s before t within a level, levels in ascending order
  while (true) {
    auto syms = r.param_symbols();
    if (syms.empty()) return r;
    ParamSymbol pick = syms.front();
    bool found_s = false;
    for (const auto& sym : syms) {
      if (sym.level == pick.level && !is_t_family(sym.kind)) {
        found_s = true;
        break;
      }
    }
    ParamKind base = found_s ? ParamKind::S : ParamKind::T;
    r = integrate_param(r, base, pick.level);
  }
}

MomentPoly integrate_params_all(const MomentPoly& p) {
  MomentPoly r;
  for (const auto& [g, c] : p.coeffs()) r += MomentPoly::nu_power(g, integrate_params_all(c));
  return r;
}

}  // namespace gex
