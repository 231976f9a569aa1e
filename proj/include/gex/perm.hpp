#ifndef GEX_PERM_HPP
#define GEX_PERM_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gex/label.hpp"

namespace gex {

/// Strictly increasing set of nonnegative indices.
using IndexSet = std::vector<int>;

IndexSet make_index_set(std::vector<int> v);
IndexSet range_set(int lo, int hi);  // {lo, ..., hi}

using Transposition = std::pair<int, int>;

/// Permutation of a finite index set; the domain (including fixed points) is
/// stored explicitly because fixed points count as cycles.
class Perm {
 public:
  Perm() = default;

  static Perm identity(const IndexSet& dom);
  static Perm from_images(const std::map<int, int>& images);
  /// Cycles among `dom`; indices of dom not mentioned stay fixed.
  static Perm from_cycles(const IndexSet& dom, const std::vector<std::vector<int>>& cycles);
  static Perm transposition_on(const IndexSet& dom, int a, int b);

  int apply(const int k) const;
  int operator()(int k) const { return apply(k); }

  IndexSet domain() const;
  size_t size() const { return img_.size(); }
  bool contains(int k) const { return img_.count(k) != 0; }
  IndexSet support() const;

  Perm inverse() const;
  /// Function composition: (*this)(o(k)).
  Perm after(const Perm& o) const;

  /// Disjoint cycles, each anchored at its minimal element, sorted by anchor.
  /// Fixed points appear as singletons.
  std::vector<std::vector<int>> cycles() const;
  size_t cycle_count() const;

  std::string cycle_string() const;
  static Perm from_cycle_string(const std::string& text, const IndexSet& dom);

  const std::map<int, int>& images() const { return img_; }

 private:
  std::map<int, int> img_;
};

bool operator==(const Perm& a, const Perm& b);

/// Fixed-point-free involution (perfect matching) of its domain.
class PairPerm {
 public:
  explicit PairPerm(Perm p);
  static PairPerm from_pairs(const std::vector<Transposition>& pairs);

  const Perm& perm() const { return p_; }
  /// Pairs (a, b) with a < b, sorted by a.
  std::vector<Transposition> pairs() const;

 private:
  Perm p_;
};

/// All pairings of S via the "pair the minimum with each candidate" recursion;
/// (n-1)!! results for even n, none for odd n. The optional predicate prunes
/// by pair admissibility.
std::vector<PairPerm> enumerate_pairings(const IndexSet& S);
std::vector<PairPerm> enumerate_pairings(
    const IndexSet& S, const std::function<bool(int, int)>& pair_ok);

bool is_compatible(const Perm& p, const Labeling& l);

/// True iff tau swaps indices lying in two different cycles of sigma.
bool is_bridge(const Perm& sigma, const Transposition& tau);

/// True iff both supports lie in one cycle of sigma and interleave there.
bool is_cross(const Perm& sigma, const Transposition& tau, const Transposition& tau2);

/// No cycle of pi is a sigma-bridge and no two cycles of pi form a sigma-cross.
bool is_noncrossing(const PairPerm& pi, const Perm& sigma);

/// Number of cycles rho of pi such that (rho, tau) is a sigma-cross.
int crss_count(const PairPerm& pi, const Transposition& tau, const Perm& sigma);

/// (pi |><| sigma)(0,k) = (1, sigma(k)), (pi |><| sigma)(1,k) = (0, pi(k)),
/// on {0,1} x S encoded as 2k + i.
Perm bowtie(const Perm& pi, const Perm& sigma);

/// Half-integer: the combinatorial genus may be fractional for general pi.
struct HalfInt {
  int twice = 0;
  bool integral() const { return twice % 2 == 0; }
  int as_int() const;
  bool operator==(const HalfInt& o) const { return twice == o.twice; }
};

/// 2g = #S + #Cyc(sigma) - #Cyc(pi) - #Cyc(pi |><| sigma).
HalfInt genus(const Perm& sigma, const Perm& pi);
/// Genus of a pairing; asserts the result is a nonnegative integer.
int genus_of_pairing(const Perm& sigma, const PairPerm& pi);

/// sigma take tau: (sigma\tau)(k) = (tau sigma)^{r(k)}(k) with r(k) the least
/// power landing outside supp(tau). Requires supp(tau) a proper subset of S.
Perm take(const Perm& sigma, const Perm& tau);
Perm take(const Perm& sigma, const Transposition& tau);

/// Restriction to a union of cycles of p; throws otherwise.
Perm restrict(const Perm& p, const IndexSet& sub);

}  // namespace gex

#endif
