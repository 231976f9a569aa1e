#include "gex/perm.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gex {

IndexSet make_index_set(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == v[i + 1]) throw std::invalid_argument("duplicate index in set");
  for (int k : v)
    if (k < 0) throw std::invalid_argument("negative index");
  return v;
}

IndexSet range_set(int lo, int hi) {
  IndexSet s;
  for (int k = lo; k <= hi; ++k) s.push_back(k);
  return s;
}

Perm Perm::identity(const IndexSet& dom) {
  Perm p;
  for (int k : dom) p.img_[k] = k;
  return p;
}

Perm Perm::from_images(const std::map<int, int>& images) {
  std::set<int> seen;
  for (const auto& [k, v] : images) {
    if (images.count(v) == 0) throw std::invalid_argument("image outside domain");
    if (!seen.insert(v).second) throw std::invalid_argument("images not injective");
  }
  Perm p;
  p.img_ = images;
  return p;
}

Perm Perm::from_cycles(const IndexSet& dom, const std::vector<std::vector<int>>& cycles) {
  Perm p = identity(dom);
  std::set<int> used;
  for (const auto& cyc : cycles) {
    for (size_t i = 0; i < cyc.size(); ++i) {
      int k = cyc[i];
      if (p.img_.count(k) == 0) throw std::invalid_argument("cycle element outside domain");
      if (!used.insert(k).second) throw std::invalid_argument("overlapping cycles");
      p.img_[k] = cyc[(i + 1) % cyc.size()];
    }
  }
  return p;
}

Perm Perm::transposition_on(const IndexSet& dom, int a, int b) {
  if (a == b) throw std::invalid_argument("transposition needs two distinct points");
  return from_cycles(dom, {{a, b}});
}

int Perm::apply(const int k) const {
  auto it = img_.find(k);
  if (it == img_.end()) throw std::out_of_range("index not in permutation domain");
  return it->second;
}

IndexSet Perm::domain() const {
  IndexSet d;
  d.reserve(img_.size());
  for (const auto& [k, v] : img_) d.push_back(k);
  return d;
}

IndexSet Perm::support() const {
  IndexSet s;
  for (const auto& [k, v] : img_)
    if (k != v) s.push_back(k);
  return s;
}

Perm Perm::inverse() const {
  Perm p;
  for (const auto& [k, v] : img_) p.img_[v] = k;
  return p;
}

Perm Perm::after(const Perm& o) const {
  if (o.img_.size() != img_.size()) throw std::invalid_argument("domain mismatch in composition");
  Perm p;
  for (const auto& [k, v] : o.img_) p.img_[k] = apply(v);
  return p;
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::set<int> seen;
  for (const auto& [start, v0] : img_) {
    if (seen.count(start)) continue;
    std::vector<int> cyc;
    int k = start;
    do {
      cyc.push_back(k);
      seen.insert(k);
      k = apply(k);
    } while (k != start);
    out.push_back(std::move(cyc));  // starts at its min: map iteration is ascending
  }
  return out;
}

size_t Perm::cycle_count() const { return cycles().size(); }

std::string Perm::cycle_string() const {
  std::ostringstream os;
  for (const auto& cyc : cycles()) {
    os << "(";
    for (size_t i = 0; i < cyc.size(); ++i) {
      if (i) os << " ";
      os << cyc[i];
    }
    os << ")";
  }
  return os.str();
}

Perm Perm::from_cycle_string(const std::string& text, const IndexSet& dom) {
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    size_t close = text.find(')', i);
    if (close == std::string::npos) throw std::invalid_argument("unbalanced cycle notation");
    std::istringstream is(text.substr(i + 1, close - i - 1));
    std::vector<int> cyc;
    int k;
    while (is >> k) cyc.push_back(k);
    if (cyc.empty()) throw std::invalid_argument("empty cycle");
    cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  return from_cycles(dom, cycles);
}

bool operator==(const Perm& a, const Perm& b) { return a.images() == b.images(); }

PairPerm::PairPerm(Perm p) : p_(std::move(p)) {
  for (const auto& [k, v] : p_.images()) {
    if (v == k) throw std::invalid_argument("pairing has a fixed point");
    if (p_.apply(v) != k) throw std::invalid_argument("pairing is not an involution");
  }
}

PairPerm PairPerm::from_pairs(const std::vector<Transposition>& pairs) {
  std::map<int, int> img;
  for (const auto& [a, b] : pairs) {
    img[a] = b;
    img[b] = a;
  }
  if (img.size() != 2 * pairs.size()) throw std::invalid_argument("overlapping pairs");
  return PairPerm(Perm::from_images(img));
}

std::vector<Transposition> PairPerm::pairs() const {
  std::vector<Transposition> out;
  for (const auto& [k, v] : p_.images())
    if (k < v) out.emplace_back(k, v);
  return out;
}

namespace {

void enumerate_rec(std::vector<int>& rest, std::vector<Transposition>& acc,
                   const std::function<bool(int, int)>& pair_ok,
                   std::vector<PairPerm>& out) {
  if (rest.empty()) {
    out.push_back(PairPerm::from_pairs(acc));
    return;
  }
  int m = rest.front();
  for (size_t i = 1; i < rest.size(); ++i) {
    int q = rest[i];
    if (pair_ok && !pair_ok(m, q)) continue;
    std::vector<int> next;
    next.reserve(rest.size() - 2);
    for (size_t j = 1; j < rest.size(); ++j)
      if (j != i) next.push_back(rest[j]);
    acc.emplace_back(m, q);
    enumerate_rec(next, acc, pair_ok, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<PairPerm> enumerate_pairings(const IndexSet& S) {
  return enumerate_pairings(S, nullptr);
}

std::vector<PairPerm> enumerate_pairings(const IndexSet& S,
                                         const std::function<bool(int, int)>& pair_ok) {
  std::vector<PairPerm> out;
  if (S.size() % 2 != 0) return out;
  std::vector<int> rest = S;
  std::vector<Transposition> acc;
  enumerate_rec(rest, acc, pair_ok, out);
  return out;
}

bool is_compatible(const Perm& p, const Labeling& l) {
  if (p.size() != l.size()) throw std::invalid_argument("labeling/permutation domain mismatch");
  for (const auto& [k, v] : p.images()) {
    auto a = l.find(k), b = l.find(v);
    if (a == l.end() || b == l.end())
      throw std::invalid_argument("labeling/permutation domain mismatch");
    if (!(a->second == b->second)) return false;
  }
  return true;
}

namespace {

// Position of each support point of the transpositions within the cycle of
// sigma containing them, or nullopt if they spread over several cycles.
bool in_one_cycle(const Perm& sigma, const std::vector<int>& pts, std::vector<int>* pos_out) {
  for (const auto& cyc : sigma.cycles()) {
    bool all = true;
    std::vector<int> pos;
    for (int p : pts) {
      auto it = std::find(cyc.begin(), cyc.end(), p);
      if (it == cyc.end()) {
        all = false;
        break;
      }
      pos.push_back(static_cast<int>(it - cyc.begin()));
    }
    if (all) {
      *pos_out = pos;
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_bridge(const Perm& sigma, const Transposition& tau) {
  if (tau.first == tau.second) throw std::invalid_argument("not a transposition");
  if (!sigma.contains(tau.first) || !sigma.contains(tau.second))
    throw std::invalid_argument("transposition support outside domain");
  std::vector<int> pos;
  return !in_one_cycle(sigma, {tau.first, tau.second}, &pos);
}

bool is_cross(const Perm& sigma, const Transposition& tau, const Transposition& tau2) {
  std::set<int> pts{tau.first, tau.second, tau2.first, tau2.second};
  if (pts.size() != 4) throw std::invalid_argument("crossing test requires disjoint transpositions");
  std::vector<int> pos;
  if (!in_one_cycle(sigma, {tau.first, tau.second, tau2.first, tau2.second}, &pos)) return false;
  // Walk the cycle once; a cross shows the pattern tau, tau2, tau, tau2.
  std::vector<std::pair<int, int>> order = {
      {pos[0], 0}, {pos[1], 0}, {pos[2], 1}, {pos[3], 1}};
  std::sort(order.begin(), order.end());
  return order[0].second != order[1].second && order[1].second != order[2].second &&
         order[2].second != order[3].second;
}

bool is_noncrossing(const PairPerm& pi, const Perm& sigma) {
  auto prs = pi.pairs();
  for (const auto& p : prs)
    if (is_bridge(sigma, p)) return false;
  for (size_t i = 0; i < prs.size(); ++i)
    for (size_t j = i + 1; j < prs.size(); ++j)
      if (is_cross(sigma, prs[i], prs[j])) return false;
  return true;
}

int crss_count(const PairPerm& pi, const Transposition& tau, const Perm& sigma) {
  int n = 0;
  for (const auto& rho : pi.pairs()) {
    if (rho.first == tau.first || rho.first == tau.second || rho.second == tau.first ||
        rho.second == tau.second)
      continue;
    if (is_cross(sigma, rho, tau)) ++n;
  }
  return n;
}

Perm bowtie(const Perm& pi, const Perm& sigma) {
  if (!(pi.domain() == sigma.domain())) throw std::invalid_argument("domain mismatch in bowtie");
  std::map<int, int> img;
  for (const auto& [k, v] : sigma.images()) {
    img[2 * k + 0] = 2 * sigma.apply(k) + 1;
    img[2 * k + 1] = 2 * pi.apply(k) + 0;
  }
  return Perm::from_images(img);
}

int HalfInt::as_int() const {
  if (!integral()) throw std::domain_error("genus is not an integer here");
  return twice / 2;
}

HalfInt genus(const Perm& sigma, const Perm& pi) {
  size_t n = sigma.size();
  int twice2g = static_cast<int>(n + sigma.cycle_count()) -
                static_cast<int>(pi.cycle_count() + bowtie(pi, sigma).cycle_count());
  return HalfInt{twice2g};
}

int genus_of_pairing(const Perm& sigma, const PairPerm& pi) {
  HalfInt h = genus(sigma, pi.perm());
  int g = h.as_int();
  if (g < 0) throw std::logic_error("negative genus for a pairing");
  return g;
}

Perm take(const Perm& sigma, const Perm& tau) {
  if (!(sigma.domain() == tau.domain())) throw std::invalid_argument("domain mismatch in take");
  IndexSet supp = tau.support();
  if (supp.size() == sigma.size())
    throw std::invalid_argument("take requires supp(tau) a proper subset of S");
  std::set<int> in_supp(supp.begin(), supp.end());
  std::map<int, int> img;
  for (const auto& [k, v] : sigma.images()) {
    if (in_supp.count(k)) continue;
    int j = tau.apply(sigma.apply(k));
    while (in_supp.count(j)) j = tau.apply(sigma.apply(j));
    img[k] = j;
  }
  return Perm::from_images(img);
}

Perm take(const Perm& sigma, const Transposition& tau) {
  return take(sigma, Perm::transposition_on(sigma.domain(), tau.first, tau.second));
}

Perm restrict(const Perm& p, const IndexSet& sub) {
  std::set<int> in_sub(sub.begin(), sub.end());
  std::map<int, int> img;
  for (int k : sub) {
    int v = p.apply(k);
    if (!in_sub.count(v)) throw std::invalid_argument("restriction set is not a union of cycles");
    img[k] = v;
  }
  return Perm::from_images(img);
}

}  // namespace gex
