#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gex/perm.hpp"
#include "testutil.hpp"

using namespace gex;

namespace {

const IndexSet S8 = range_set(1, 8);
Perm fig1() { return Perm::from_cycles(S8, {{1, 2, 3, 4, 5}, {6, 7, 8}}); }

bool same_cycle(const Perm& p, int a, int b) {
  int k = a;
  do {
    if (k == b) return true;
    k = p.apply(k);
  } while (k != a);
  return false;
}

}  // namespace

TEST_CASE("cycle decomposition") {
  auto cyc = fig1().cycles();
  REQUIRE(cyc.size() == 2);
  CHECK(cyc[0] == std::vector<int>({1, 2, 3, 4, 5}));
  CHECK(cyc[1] == std::vector<int>({6, 7, 8}));

  CHECK(Perm::identity(range_set(1, 2)).cycles() ==
        std::vector<std::vector<int>>({{1}, {2}}));
  CHECK(Perm::from_cycles(range_set(1, 4), {{1, 3}, {2, 4}}).cycles() ==
        std::vector<std::vector<int>>({{1, 3}, {2, 4}}));
}

TEST_CASE("cycle notation round trip") {
  Perm p = fig1();
  CHECK(p.cycle_string() == "(1 2 3 4 5)(6 7 8)");
  CHECK(Perm::from_cycle_string("(1 2 3 4 5)(6 7 8)", S8) == p);
  CHECK(Perm::from_cycle_string("(3 4)", range_set(1, 5)).apply(5) == 5);
}

TEST_CASE("pairing enumeration counts") {
  CHECK(enumerate_pairings(range_set(1, 4)).size() == 3);
  CHECK(enumerate_pairings(range_set(1, 3)).empty());
  CHECK(enumerate_pairings(range_set(1, 6)).size() == 15);
  CHECK(enumerate_pairings(range_set(1, 8)).size() == 105);
}

TEST_CASE("label compatibility") {
  Labeling l;
  l[1] = {Flavor::Gue, "a"};
  l[2] = {Flavor::Gue, "a"};
  Perm p = Perm::from_cycles(range_set(1, 2), {{1, 2}});
  CHECK(is_compatible(p, l));
  l[2] = {Flavor::Gue, "b"};
  CHECK(!is_compatible(p, l));

  Labeling l4;
  l4[1] = l4[3] = {Flavor::Gue, "a"};
  l4[2] = l4[4] = {Flavor::Semi, "b"};
  CHECK(is_compatible(Perm::from_cycles(range_set(1, 4), {{1, 3}, {2, 4}}), l4));
}

TEST_CASE("bridges and crossings on the two-circle example") {
  Perm sigma = fig1();
  CHECK(is_bridge(sigma, {1, 7}));
  CHECK(!is_bridge(sigma, {2, 4}));
  CHECK(is_bridge(Perm::identity(range_set(1, 2)), {1, 2}));
  CHECK_THROWS_AS(is_bridge(sigma, {3, 3}), std::invalid_argument);

  CHECK(is_cross(sigma, {2, 4}, {3, 5}));
  CHECK(!is_cross(sigma, {2, 4}, {1, 7}));
  Perm c4 = Perm::from_cycles(range_set(1, 4), {{1, 2, 3, 4}});
  CHECK(!is_cross(c4, {1, 2}, {3, 4}));
  CHECK(is_cross(c4, {1, 3}, {2, 4}));
  CHECK_THROWS_AS(is_cross(c4, {1, 2}, {2, 3}), std::invalid_argument);
}

TEST_CASE("noncrossing predicate") {
  Perm sigma = fig1();
  CHECK(!is_noncrossing(PairPerm::from_pairs({{1, 7}, {2, 4}, {3, 5}, {6, 8}}), sigma));
  Perm c4 = Perm::from_cycles(range_set(1, 4), {{1, 2, 3, 4}});
  CHECK(is_noncrossing(PairPerm::from_pairs({{1, 2}, {3, 4}}), c4));
  CHECK(!is_noncrossing(PairPerm::from_pairs({{1, 3}, {2, 4}}), c4));
  // pairing on a subset of the sigma domain
  CHECK(is_noncrossing(PairPerm::from_pairs({{2, 3}}), c4));
}

TEST_CASE("bowtie") {
  IndexSet S4 = range_set(1, 4);
  Perm c4 = Perm::from_cycles(S4, {{1, 2, 3, 4}});
  CHECK(bowtie(Perm::identity(S4), c4).cycle_count() == c4.cycle_count());

  IndexSet S2 = range_set(1, 2);
  Perm t2 = Perm::from_cycles(S2, {{1, 2}});
  CHECK(bowtie(t2, t2).cycle_count() == 2);

  Perm cross = Perm::from_cycles(S4, {{1, 3}, {2, 4}});
  CHECK(bowtie(cross, c4).cycle_count() == 1);  // one 8-cycle

  Philox gen(21, 0);
  for (int rep = 0; rep < 100; ++rep) {
    IndexSet S = range_set(1, 3 + static_cast<int>(gen.next_u64() % 6));
    Perm sigma = random_perm(gen, S);
    CHECK(bowtie(Perm::identity(S), sigma).cycle_count() == sigma.cycle_count());
  }
}

TEST_CASE("genus") {
  IndexSet S4 = range_set(1, 4);
  Perm c4 = Perm::from_cycles(S4, {{1, 2, 3, 4}});
  CHECK(genus_of_pairing(c4, PairPerm::from_pairs({{1, 3}, {2, 4}})) == 1);
  CHECK(genus_of_pairing(c4, PairPerm::from_pairs({{1, 2}, {3, 4}})) == 0);

  Philox gen(22, 0);
  for (int rep = 0; rep < 200; ++rep) {
    IndexSet S = range_set(1, 2 + static_cast<int>(gen.next_u64() % 8));
    Perm sigma = random_perm(gen, S);
    CHECK(genus(sigma, Perm::identity(S)).twice == 0);
  }
}

TEST_CASE("genus nonnegative and integral for pairings, exhaustive to size 8") {
  Philox gen(23, 0);
  for (int n : {2, 4, 6, 8}) {
    IndexSet S = range_set(1, n);
    for (int rep = 0; rep < 20; ++rep) {
      Perm sigma = random_perm(gen, S);
      for (const auto& pi : enumerate_pairings(S)) {
        int g = genus_of_pairing(sigma, pi);  // throws if fractional or negative
        CHECK(g >= 0);
      }
    }
  }
}

TEST_CASE("noncrossing iff genus zero for single-cycle sigma, exhaustive to size 8") {
  for (int n : {2, 4, 6, 8}) {
    IndexSet S = range_set(1, n);
    std::vector<int> cyc = S;
    Perm sigma = Perm::from_cycles(S, {cyc});
    for (const auto& pi : enumerate_pairings(S))
      CHECK(is_noncrossing(pi, sigma) == (genus_of_pairing(sigma, pi) == 0));
  }
}

TEST_CASE("take: surgery on cycles") {
  Perm c4 = Perm::from_cycles(range_set(1, 4), {{1, 2, 3, 4}});
  Perm cut = take(c4, Transposition{1, 3});
  CHECK(cut == Perm::identity(IndexSet{2, 4}));

  Perm sigma = fig1();
  Perm glued = take(sigma, Transposition{1, 7});
  CHECK(glued.cycle_string() == "(2 3 4 5 8 6)");

  // tau with empty support leaves sigma unchanged
  CHECK(take(c4, Perm::identity(range_set(1, 4))) == c4);
  CHECK_THROWS_AS(take(Perm::from_cycles(range_set(1, 2), {{1, 2}}), Transposition{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("restrict") {
  Perm p = Perm::from_cycles(range_set(1, 4), {{1, 2}, {3, 4}});
  CHECK(restrict(p, {3, 4}).cycle_string() == "(3 4)");
  CHECK(restrict(p, p.domain()) == p);
  Perm q = Perm::from_cycles(range_set(1, 5), {{1, 2, 3}, {4, 5}});
  CHECK(restrict(q, {4, 5}).cycle_string() == "(4 5)");
  CHECK_THROWS_AS(restrict(q, {1, 2}), std::invalid_argument);
}

TEST_CASE("crossing count") {
  Perm c4 = Perm::from_cycles(range_set(1, 4), {{1, 2, 3, 4}});
  CHECK(crss_count(PairPerm::from_pairs({{1, 3}, {2, 4}}), {1, 3}, c4) == 1);
  CHECK(crss_count(PairPerm::from_pairs({{1, 2}, {3, 4}}), {1, 2}, c4) == 0);
  Perm c6 = Perm::from_cycles(range_set(1, 6), {{1, 2, 3, 4, 5, 6}});
  CHECK(crss_count(PairPerm::from_pairs({{1, 4}, {2, 5}, {3, 6}}), {1, 4}, c6) == 2);
}

TEST_CASE("takeaway lemma properties") {
  Philox gen(24, 0);
  int done = 0;
  while (done < 3000) {
    int n = 5 + static_cast<int>(gen.next_u64() % 5);
    IndexSet S = range_set(1, n);
    Perm sigma = random_perm(gen, S);
    int a = 1 + static_cast<int>(gen.next_u64() % n);
    int b = 1 + static_cast<int>(gen.next_u64() % n);
    int c = 1 + static_cast<int>(gen.next_u64() % n);
    int d = 1 + static_cast<int>(gen.next_u64() % n);
    std::set<int> pts{a, b, c, d};
    if (pts.size() != 4) continue;
    ++done;
    Perm tau = Perm::transposition_on(S, a, b);
    Perm tau2 = Perm::transposition_on(S, c, d);

    // (1) inverse commutes with the surgery
    CHECK(take(sigma, tau).inverse() == take(sigma.inverse(), tau.inverse()));

    // (2) disjoint surgeries compose in any order
    Perm once = take(sigma, tau.after(tau2));
    Perm left = take(take(sigma, tau), restrict(tau2, take(sigma, tau).domain()));
    Perm right = take(take(sigma, tau2), restrict(tau, take(sigma, tau2).domain()));
    CHECK(once == left);
    CHECK(once == right);

    // (3) cycle partition of tau2*tau |><| sigma matches tau2 |><| (sigma\tau)
    Perm lhs = bowtie(tau2.after(tau), sigma);
    Perm rest_tau2 = restrict(tau2, take(sigma, tau).domain());
    Perm rhs = bowtie(rest_tau2, take(sigma, tau));
    IndexSet survive = take(sigma, tau).domain();
    for (size_t i = 0; i < survive.size(); ++i)
      for (size_t j = i; j < survive.size(); ++j)
        for (int bit1 : {0, 1})
          for (int bit2 : {0, 1}) {
            int e1 = 2 * survive[i] + bit1;
            int e2 = 2 * survive[j] + bit2;
            CHECK(same_cycle(lhs, e1, e2) == same_cycle(rhs, e1, e2));
          }
  }
}

TEST_CASE("genus update under removing one pair") {
  Philox gen(25, 0);
  int done = 0;
  while (done < 3000) {
    int pairs = 2 + static_cast<int>(gen.next_u64() % 4);
    IndexSet S = range_set(1, 2 * pairs);
    Perm sigma = random_perm(gen, S);
    PairPerm pi = random_pairing(gen, S);
    auto prs = pi.pairs();
    Transposition tau = prs[gen.next_u64() % prs.size()];
    ++done;
    Perm tperm = Perm::transposition_on(S, tau.first, tau.second);
    IndexSet rest;
    for (int k : S)
      if (k != tau.first && k != tau.second) rest.push_back(k);
    HalfInt before = genus(sigma, pi.perm());
    HalfInt after = genus(take(sigma, tperm), restrict(pi.perm(), rest));
    CHECK(before.twice - after.twice == (is_bridge(sigma, tau) ? 2 : 0));
  }
}
