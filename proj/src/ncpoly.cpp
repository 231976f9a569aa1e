#include "gex/ncpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace gex {

int cmp(const PathEntry& a, const PathEntry& b) {
  if (a.level != b.level) return a.level < b.level ? -1 : 1;
  if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
  return 0;
}
bool operator==(const PathEntry& a, const PathEntry& b) { return cmp(a, b) == 0; }

BasisSymbol BasisSymbol::gue_v(int index) {
  BasisSymbol s;
  s.space_ = BaseSpace::V;
  s.index_ = index;
  s.flavor_ = Flavor::Gue;
  return s;
}

BasisSymbol BasisSymbol::semi(BaseSpace space, int index, std::vector<PathEntry> path) {
  for (const auto& e : path)
    if (e.tag < 1 || e.tag > 6) throw std::invalid_argument("tensor tag out of range 1..6");
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (path[i].level >= path[i + 1].level)
      throw std::invalid_argument("tensor path levels must increase");
  BasisSymbol s;
  s.space_ = space;
  s.index_ = index;
  s.path_ = std::move(path);
  s.flavor_ = Flavor::Semi;
  return s;
}

BasisSymbol BasisSymbol::with_tag(int level, int tag) const {
  if (!path_.empty() && path_.back().level >= level)
    throw std::invalid_argument("tensor tag level must exceed existing layers");
  std::vector<PathEntry> p = path_;
  p.push_back({level, tag});
  return semi(space_, index_, std::move(p));
}

std::optional<PathEntry> BasisSymbol::outer_tag() const {
  if (path_.empty()) return std::nullopt;
  return path_.back();
}

BasisSymbol BasisSymbol::without_outer_tag_as(Flavor f) const {
  if (path_.empty()) throw std::invalid_argument("symbol has no tensor tag to strip");
  std::vector<PathEntry> p(path_.begin(), path_.end() - 1);
  if (f == Flavor::Gue) {
    if (space_ != BaseSpace::V || !p.empty())
      throw std::invalid_argument("only a plain V symbol can be GUE-flavored");
    return gue_v(index_);
  }
  return semi(space_, index_, std::move(p));
}

BasisSymbol BasisSymbol::with_flavor(Flavor f) const {
  if (f == flavor_) return *this;
  if (f == Flavor::Gue) {
    if (!is_plain_v()) throw std::invalid_argument("only a plain V symbol can be GUE-flavored");
    return gue_v(index_);
  }
  return semi(space_, index_, path_);
}

std::string BasisSymbol::key() const {
  std::ostringstream os;
  os << (flavor_ == Flavor::Gue ? 'g' : 's');
  os << (space_ == BaseSpace::V ? 'v' : 'w');
  os << index_;
  for (const auto& e : path_) os << "/" << e.level << ":" << e.tag;
  return os.str();
}

int cmp(const BasisSymbol& a, const BasisSymbol& b) {
  if (a.space() != b.space()) return a.space() < b.space() ? -1 : 1;
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (a.path().size() != b.path().size()) return a.path().size() < b.path().size() ? -1 : 1;
  for (size_t i = 0; i < a.path().size(); ++i)
    if (int c = cmp(a.path()[i], b.path()[i])) return c;
  if (a.flavor() != b.flavor()) return a.flavor() < b.flavor() ? -1 : 1;
  return 0;
}
bool operator==(const BasisSymbol& a, const BasisSymbol& b) { return cmp(a, b) == 0; }
bool operator<(const BasisSymbol& a, const BasisSymbol& b) { return cmp(a, b) < 0; }

VecExpr VecExpr::single(const BasisSymbol& s, const Scalar& coeff) {
  VecExpr v;
  v.add(s, coeff);
  return v;
}

std::optional<BasisSymbol> VecExpr::as_plain_symbol() const {
  if (terms_.size() != 1) return std::nullopt;
  if (!(terms_.begin()->second == Scalar(1))) return std::nullopt;
  return terms_.begin()->first;
}

void VecExpr::add(const BasisSymbol& s, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

VecExpr& VecExpr::operator+=(const VecExpr& o) {
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

VecExpr VecExpr::scaled(const Scalar& s) const {
  VecExpr v;
  for (const auto& [sym, c] : terms_) v.add(sym, c * s);
  return v;
}

VecExpr VecExpr::filtered(const std::function<bool(const BasisSymbol&)>& keep) const {
  VecExpr v;
  for (const auto& [sym, c] : terms_)
    if (keep(sym)) v.add(sym, c);
  return v;
}

std::string VecExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [sym, c] : terms_) {
    if (!first) os << "+";
    first = false;
    if (!(c == Scalar(1))) os << "(" << c.str() << ")";
    os << sym.key();
  }
  return os.str();
}

Scalar inner_product(const VecExpr& a, const VecExpr& b) {
  Scalar r;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    int c = cmp(ia->first, ib->first);
    if (c < 0)
      ++ia;
    else if (c > 0)
      ++ib;
    else {
      r += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return r;
}

int cmp(const VecExpr& a, const VecExpr& b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  auto ea = a.terms().end(), eb = b.terms().end();
  for (; ia != ea && ib != eb; ++ia, ++ib) {
    if (int c = cmp(ia->first, ib->first)) return c;
    if (int c = cmp(ia->second, ib->second)) return c;
  }
  if (ia != ea) return 1;
  if (ib != eb) return -1;
  return 0;
}
bool operator==(const VecExpr& a, const VecExpr& b) { return cmp(a, b) == 0; }

MatrixLetter MatrixLetter::formal(const std::string& id) {
  if (id.empty()) throw std::invalid_argument("empty matrix letter id");
  MatrixLetter m;
  m.atoms_.emplace_back(id);
  return m;
}

MatrixLetter MatrixLetter::concrete(const RatMatrix& mat) {
  if (mat.dim() <= 0) throw std::invalid_argument("concrete matrix must have positive dimension");
  MatrixLetter m;
  if (!mat.is_identity()) m.atoms_.emplace_back(mat);
  return m;
}

MatrixLetter MatrixLetter::times(const MatrixLetter& o) const {
  MatrixLetter r = *this;
  for (const auto& atom : o.atoms_) {
    if (std::holds_alternative<RatMatrix>(atom) && !r.atoms_.empty() &&
        std::holds_alternative<RatMatrix>(r.atoms_.back())) {
      const RatMatrix& a = std::get<RatMatrix>(r.atoms_.back());
      const RatMatrix& b = std::get<RatMatrix>(atom);
      if (a.dim() != b.dim()) throw std::invalid_argument("mixed concrete matrix dimensions");
      RatMatrix prod = a * b;
      if (prod.is_identity())
        r.atoms_.pop_back();
      else
        r.atoms_.back() = prod;
    } else {
      r.atoms_.push_back(atom);
    }
  }
  return r;
}

Scalar MatrixLetter::normalized_trace() const {
  if (atoms_.empty()) return Scalar(1);
  bool any_formal = false, any_concrete = false;
  for (const auto& a : atoms_) (std::holds_alternative<std::string>(a) ? any_formal : any_concrete) = true;
  if (any_formal && any_concrete)
    throw std::invalid_argument("trace of a formal/concrete matrix mixture is not representable");
  if (any_concrete) {
    // fused: a single concrete atom
    return Scalar(std::get<RatMatrix>(atoms_.front()).normalized_trace());
  }
  std::vector<std::string> ids;
  ids.reserve(atoms_.size());
  for (const auto& a : atoms_) ids.push_back(std::get<std::string>(a));
  return Scalar::trace_symbol(cyclic_normalize(ids));
}

std::optional<int> MatrixLetter::concrete_dim() const {
  for (const auto& a : atoms_)
    if (std::holds_alternative<RatMatrix>(a)) return std::get<RatMatrix>(a).dim();
  return std::nullopt;
}

std::string MatrixLetter::str() const {
  if (atoms_.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (i) os << "·";
    if (std::holds_alternative<std::string>(atoms_[i]))
      os << std::get<std::string>(atoms_[i]);
    else
      os << std::get<RatMatrix>(atoms_[i]).str();
  }
  return os.str();
}

int cmp(const MatrixLetter& a, const MatrixLetter& b) {
  if (a.atoms().size() != b.atoms().size()) return a.atoms().size() < b.atoms().size() ? -1 : 1;
  for (size_t i = 0; i < a.atoms().size(); ++i) {
    const auto& x = a.atoms()[i];
    const auto& y = b.atoms()[i];
    if (x.index() != y.index()) return x.index() < y.index() ? -1 : 1;
    if (std::holds_alternative<std::string>(x)) {
      const auto& sx = std::get<std::string>(x);
      const auto& sy = std::get<std::string>(y);
      if (sx != sy) return sx < sy ? -1 : 1;
    } else {
      if (int c = cmp(std::get<RatMatrix>(x), std::get<RatMatrix>(y))) return c;
    }
  }
  return 0;
}
bool operator==(const MatrixLetter& a, const MatrixLetter& b) { return cmp(a, b) == 0; }

Word Word::one() { return Word(); }

Word Word::scalar(const Scalar& s) {
  Word w;
  w.coeff = s;
  return w;
}

Word Word::variable(const VecExpr& v) {
  Word w;
  w.vars.push_back(v);
  w.mats.emplace_back();
  return w;
}

Word Word::matrix(const MatrixLetter& m) {
  Word w;
  w.mats[0] = m;
  return w;
}

Word Word::times(const Word& o) const {
  Word r;
  r.coeff = coeff * o.coeff;
  r.mats = mats;
  r.mats.back() = r.mats.back().times(o.mats.front());
  r.mats.insert(r.mats.end(), o.mats.begin() + 1, o.mats.end());
  r.vars = vars;
  r.vars.insert(r.vars.end(), o.vars.begin(), o.vars.end());
  return r;
}

Word Word::scaled(const Scalar& s) const {
  Word r = *this;
  r.coeff = r.coeff * s;
  return r;
}

std::string Word::str() const {
  std::ostringstream os;
  if (!(coeff == Scalar(1)) || vars.empty()) {
    os << "(" << coeff.str() << ")";
    if (!vars.empty() || !mats[0].is_identity()) os << "·";
  }
  bool any = false;
  for (size_t i = 0; i <= vars.size(); ++i) {
    if (!mats[i].is_identity()) {
      if (any) os << " ";
      os << mats[i].str();
      any = true;
    }
    if (i < vars.size()) {
      if (any) os << " ";
      os << "x[" << vars[i].str() << "]";
      any = true;
    }
  }
  return os.str();
}

int cmp_letters(const Word& a, const Word& b) {
  if (a.vars.size() != b.vars.size()) return a.vars.size() < b.vars.size() ? -1 : 1;
  for (size_t i = 0; i < a.mats.size(); ++i)
    if (int c = cmp(a.mats[i], b.mats[i])) return c;
  for (size_t i = 0; i < a.vars.size(); ++i)
    if (int c = cmp(a.vars[i], b.vars[i])) return c;
  return 0;
}

NCPoly::NCPoly(const Word& w) {
  words_.push_back(w);
  normalize();
}

NCPoly NCPoly::from_words(std::vector<Word> words) {
  NCPoly p;
  p.words_ = std::move(words);
  p.normalize();
  return p;
}

NCPoly NCPoly::one() { return NCPoly(Word::one()); }
NCPoly NCPoly::scalar(const Scalar& s) { return NCPoly(Word::scalar(s)); }
NCPoly NCPoly::variable(const VecExpr& v) { return NCPoly(Word::variable(v)); }
NCPoly NCPoly::matrix(const MatrixLetter& m) { return NCPoly(Word::matrix(m)); }

int NCPoly::degree() const {
  int d = -1;
  for (const auto& w : words_) d = std::max(d, w.degree());
  return d;
}

void NCPoly::add_word(const Word& w) { words_.push_back(w); }

void NCPoly::normalize() {
  // drop words with a vanishing variable letter or coefficient, then merge
  std::vector<Word> keep;
  keep.reserve(words_.size());
  for (auto& w : words_) {
    if (w.coeff.is_zero()) continue;
    bool dead = false;
    for (const auto& v : w.vars)
      if (v.is_zero()) {
        dead = true;
        break;
      }
    if (!dead) keep.push_back(std::move(w));
  }
  std::sort(keep.begin(), keep.end(),
            [](const Word& a, const Word& b) { return cmp_letters(a, b) < 0; });
  words_.clear();
  for (auto& w : keep) {
    if (!words_.empty() && cmp_letters(words_.back(), w) == 0) {
      words_.back().coeff += w.coeff;
      if (words_.back().coeff.is_zero()) words_.pop_back();
    } else {
      words_.push_back(std::move(w));
    }
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& w : o.words_) add_word(w);
  normalize();
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& w : o.words_) add_word(w.scaled(Scalar(-1)));
  normalize();
  return *this;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
  NCPoly r;
  for (const auto& a : words_)
    for (const auto& b : o.words_) r.add_word(a.times(b));
  r.normalize();
  return r;
}

NCPoly NCPoly::scaled(const Scalar& s) const {
  NCPoly r;
  for (const auto& w : words_) r.add_word(w.scaled(s));
  r.normalize();
  return r;
}

std::string NCPoly::str() const {
  if (words_.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < words_.size(); ++i) {
    if (i) os << " + ";
    os << words_[i].str();
  }
  return os.str();
}

NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

bool operator==(const NCPoly& a, const NCPoly& b) {
  if (a.words().size() != b.words().size()) return false;
  for (size_t i = 0; i < a.words().size(); ++i) {
    if (cmp_letters(a.words()[i], b.words()[i]) != 0) return false;
    if (!(a.words()[i].coeff == b.words()[i].coeff)) return false;
  }
  return true;
}

bool selects(SubspaceSel sel, const BasisSymbol& s) {
  return sel == SubspaceSel::GueV ? s.flavor() == Flavor::Gue : s.flavor() == Flavor::Semi;
}

TensorPoly::TensorPoly(int vec_slots, int factor_slots)
    : nvec_(vec_slots), nfac_(factor_slots) {
  if (vec_slots < 0 || factor_slots < 0) throw std::invalid_argument("negative tensor shape");
}

void TensorPoly::take_term(TensorTerm t) {
  if (static_cast<int>(t.vecs.size()) != nvec_ || static_cast<int>(t.factors.size()) != nfac_)
    throw std::invalid_argument("tensor term does not match declared shape");
  for (auto& f : t.factors) {
    t.coeff = t.coeff * f.coeff;
    f.coeff = Scalar(1);
  }
  if (t.coeff.is_zero()) return;
  for (const auto& v : t.vecs)
    if (v.is_zero()) return;
  terms_.push_back(std::move(t));
}

void TensorPoly::add_term(TensorTerm t) {
  take_term(std::move(t));
  normalize();
}

TensorPoly TensorPoly::build(int vec_slots, int factor_slots, std::vector<TensorTerm> terms) {
  TensorPoly p(vec_slots, factor_slots);
  for (auto& t : terms) p.take_term(std::move(t));
  p.normalize();
  return p;
}

void TensorPoly::normalize() {
  auto less = [](const TensorTerm& a, const TensorTerm& b) {
    for (size_t i = 0; i < a.vecs.size(); ++i)
      if (int c = cmp(a.vecs[i], b.vecs[i])) return c < 0;
    for (size_t i = 0; i < a.factors.size(); ++i)
      if (int c = cmp_letters(a.factors[i], b.factors[i])) return c < 0;
    return false;
  };
  auto equal = [](const TensorTerm& a, const TensorTerm& b) {
    for (size_t i = 0; i < a.vecs.size(); ++i)
      if (!(a.vecs[i] == b.vecs[i])) return false;
    for (size_t i = 0; i < a.factors.size(); ++i)
      if (cmp_letters(a.factors[i], b.factors[i]) != 0) return false;
    return true;
  };
  std::sort(terms_.begin(), terms_.end(), less);
  std::vector<TensorTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && equal(merged.back(), t)) {
      merged.back().coeff += t.coeff;
      if (merged.back().coeff.is_zero()) merged.pop_back();
    } else {
      merged.push_back(std::move(t));
    }
  }
  terms_ = std::move(merged);
}

TensorPoly TensorPoly::scaled(const Scalar& s) const {
  std::vector<TensorTerm> out;
  out.reserve(terms_.size());
  for (auto t : terms_) {
    t.coeff = t.coeff * s;
    out.push_back(std::move(t));
  }
  return build(nvec_, nfac_, std::move(out));
}

bool operator==(const TensorPoly& a, const TensorPoly& b) {
  if (a.vec_slots() != b.vec_slots() || a.factor_slots() != b.factor_slots()) return false;
  if (a.terms().size() != b.terms().size()) return false;
  for (size_t i = 0; i < a.terms().size(); ++i) {
    const auto& x = a.terms()[i];
    const auto& y = b.terms()[i];
    if (!(x.coeff == y.coeff)) return false;
    for (size_t j = 0; j < x.vecs.size(); ++j)
      if (!(x.vecs[j] == y.vecs[j])) return false;
    for (size_t j = 0; j < x.factors.size(); ++j)
      if (cmp_letters(x.factors[j], y.factors[j]) != 0) return false;
  }
  return true;
}

LinearMap::LinearMap(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

LinearMap LinearMap::identity() {
  return LinearMap("id", [](const BasisSymbol& s) { return VecExpr::single(s); });
}

LinearMap LinearMap::from_table(const std::map<BasisSymbol, VecExpr>& table) {
  return LinearMap("table", [table](const BasisSymbol& s) -> std::optional<VecExpr> {
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
  });
}

LinearMap LinearMap::compose(const LinearMap& outer, const LinearMap& inner) {
  return LinearMap(outer.name() + "∘" + inner.name(),
                   [outer, inner](const BasisSymbol& s) -> std::optional<VecExpr> {
                     return outer.apply(inner.apply_symbol(s));
                   });
}

VecExpr LinearMap::apply_symbol(const BasisSymbol& s) const {
  auto img = fn_(s);
  if (!img) throw std::invalid_argument("linear map '" + name_ + "' undefined on " + s.key());
  return *img;
}

VecExpr LinearMap::apply(const VecExpr& v) const {
  VecExpr out;
  for (const auto& [sym, c] : v.terms()) out += apply_symbol(sym).scaled(c);
  return out;
}

Word pushforward(const LinearMap& phi, const Word& w) {
  Word r = w;
  for (auto& v : r.vars) v = phi.apply(v);
  return r;
}

NCPoly pushforward(const LinearMap& phi, const NCPoly& f) {
  std::vector<Word> out;
  out.reserve(f.words().size());
  for (const auto& w : f.words()) out.push_back(pushforward(phi, w));
  return NCPoly::from_words(std::move(out));
}

namespace {

Word word_slice(const Word& w, size_t lo, size_t hi) {
  // letters x_{lo+1} ... x_{hi} with the matrices around them; coefficient one
  Word r;
  r.mats.assign(w.mats.begin() + lo, w.mats.begin() + hi + 1);
  r.vars.assign(w.vars.begin() + lo, w.vars.begin() + hi);
  r.coeff = Scalar(1);
  return r;
}

}  // namespace

TensorPoly fdq(const NCPoly& f, SubspaceSel sel) {
  std::vector<TensorTerm> out;
  for (const auto& w : f.words()) {
    for (size_t i = 0; i < w.vars.size(); ++i) {
      VecExpr part = w.vars[i].filtered([sel](const BasisSymbol& s) { return selects(sel, s); });
      if (part.is_zero()) continue;
      TensorTerm t;
      t.coeff = w.coeff;
      t.vecs = {part};
      t.factors = {word_slice(w, 0, i), word_slice(w, i + 1, w.vars.size())};
      out.push_back(std::move(t));
    }
  }
  return TensorPoly::build(1, 2, std::move(out));
}

TensorPoly fdq_factor(const TensorPoly& t, int factor_index, SubspaceSel sel) {
  if (factor_index < 0 || factor_index >= t.factor_slots())
    throw std::invalid_argument("factor index out of range");
  std::vector<TensorTerm> out;
  for (const auto& term : t.terms()) {
    const Word& w = term.factors[factor_index];
    for (size_t i = 0; i < w.vars.size(); ++i) {
      VecExpr part = w.vars[i].filtered([sel](const BasisSymbol& s) { return selects(sel, s); });
      if (part.is_zero()) continue;
      TensorTerm nt;
      nt.coeff = term.coeff;
      nt.vecs = term.vecs;
      nt.vecs.push_back(part);
      nt.factors.assign(term.factors.begin(), term.factors.begin() + factor_index);
      nt.factors.push_back(word_slice(w, 0, i));
      nt.factors.push_back(word_slice(w, i + 1, w.vars.size()));
      nt.factors.insert(nt.factors.end(), term.factors.begin() + factor_index + 1,
                        term.factors.end());
      out.push_back(std::move(nt));
    }
  }
  return TensorPoly::build(t.vec_slots() + 1, t.factor_slots() + 1, std::move(out));
}

TensorPoly cyclic_gradient(const NCPoly& f, SubspaceSel sel) {
  return mult_perm_factors(fdq(f, sel), {2, 1});
}

TensorPoly mult_perm_factors(const TensorPoly& t, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != t.factor_slots())
    throw std::invalid_argument("multiplication order length mismatch");
  std::vector<bool> seen(order.size(), false);
  for (int j : order) {
    if (j < 1 || j > static_cast<int>(order.size()) || seen[j - 1])
      throw std::invalid_argument("multiplication order is not a permutation");
    seen[j - 1] = true;
  }
  std::vector<TensorTerm> out;
  out.reserve(t.terms().size());
  for (const auto& term : t.terms()) {
    Word prod = Word::one();
    for (int j : order) prod = prod.times(term.factors[j - 1]);
    TensorTerm nt;
    nt.coeff = term.coeff;
    nt.vecs = term.vecs;
    nt.factors = {prod};
    out.push_back(std::move(nt));
  }
  return TensorPoly::build(t.vec_slots(), 1, std::move(out));
}

NCPoly mult_perm(const TensorPoly& t, const std::vector<int>& order) {
  if (t.vec_slots() != 0)
    throw std::invalid_argument("mult_perm requires a tensor without vector slots");
  TensorPoly m = mult_perm_factors(t, order);
  NCPoly out;
  for (const auto& term : m.terms()) out += NCPoly(term.factors[0].scaled(term.coeff));
  return out;
}

TensorPoly contract_inner(const TensorPoly& t) {
  if (t.vec_slots() < 2)
    throw std::invalid_argument("contract_inner needs two leading vector slots");
  std::vector<TensorTerm> out;
  out.reserve(t.terms().size());
  for (const auto& term : t.terms()) {
    Scalar ip = inner_product(term.vecs[0], term.vecs[1]);
    if (ip.is_zero()) continue;
    TensorTerm nt;
    nt.coeff = term.coeff * ip;
    nt.vecs.assign(term.vecs.begin() + 2, term.vecs.end());
    nt.factors = term.factors;
    out.push_back(std::move(nt));
  }
  return TensorPoly::build(t.vec_slots() - 2, t.factor_slots(), std::move(out));
}

TensorPoly free_laplacian(const NCPoly& f, SubspaceSel sel) {
  return contract_inner(fdq_factor(cyclic_gradient(f, sel), 0, sel));
}

NCPoly expand_to_basis(const NCPoly& f) {
  std::vector<Word> all;
  for (const auto& w : f.words()) {
    std::vector<Word> partial{Word::scalar(w.coeff).times(Word::matrix(w.mats[0]))};
    for (size_t i = 0; i < w.vars.size(); ++i) {
      std::vector<Word> next;
      for (const auto& p : partial) {
        for (const auto& [sym, c] : w.vars[i].terms()) {
          Word ext = p.times(Word::variable(VecExpr::single(sym)).scaled(c));
          ext = ext.times(Word::matrix(w.mats[i + 1]));
          next.push_back(std::move(ext));
        }
      }
      partial = std::move(next);
    }
    for (auto& p : partial) all.push_back(std::move(p));
  }
  return NCPoly::from_words(std::move(all));
}

LinearMap tag_map(int level, int tag) {
  std::ostringstream os;
  os << "⊗e" << tag << "@" << level;
  return LinearMap(os.str(), [level, tag](const BasisSymbol& s) -> std::optional<VecExpr> {
    return VecExpr::single(s.with_tag(level, tag));
  });
}

TensorPoly tag_factors(const TensorPoly& t, int level) {
  std::vector<TensorTerm> out;
  out.reserve(t.terms().size());
  std::vector<LinearMap> maps;
  maps.reserve(t.factor_slots());
  for (int j = 0; j < t.factor_slots(); ++j) maps.push_back(tag_map(level, j + 1));
  for (const auto& term : t.terms()) {
    TensorTerm nt;
    nt.coeff = term.coeff;
    nt.vecs = term.vecs;
    nt.factors.reserve(term.factors.size());
    for (size_t j = 0; j < term.factors.size(); ++j)
      nt.factors.push_back(pushforward(maps[j], term.factors[j]));
    out.push_back(std::move(nt));
  }
  return TensorPoly::build(t.vec_slots(), t.factor_slots(), std::move(out));
}

}  // namespace gex
