#ifndef GEX_PARRAUD_HPP
#define GEX_PARRAUD_HPP

#include <vector>

#include "gex/genus.hpp"
#include "gex/ncpoly.hpp"

namespace gex {

/// D^cross_{V,V} removes a crossing pair of GUE letters; D^cross_{V,W} removes
/// a GUE pair crossed by a semicircular pair.
enum class CrossVariant : uint8_t { VV, VW };

/// Crossing derivative: 1/2 L_V, then a free difference quotient on each
/// tensor factor, inner-product contraction, the four e_1..e_4 taggings, and
/// multiplication in the order 4,3,2,1. Degree drops by four.
NCPoly dcross(const NCPoly& f, CrossVariant variant, int level = 0);

/// Single crossing term for the writing sigma = (i1 .. j1 .. i2 .. j2 ..) of
/// the word's implicit cycle (1 2 ... r): the four arc segments tagged
/// e_4, e_3, e_2, e_1 and multiplied following sigma \ tau tau', with
/// prefactor <u(i1),u(i2)>_V <u(j1),u(j2)>. The transpositions are given with
/// their element order fixing the writing. Requires an identity leading matrix
/// (absorb it first) and a genuine sigma-cross.
Word h_term(const Word& w, const Transposition& tau, const Transposition& tau2,
            CrossVariant variant, int level = 0);

/// Sum of h-terms over all writings, halved: equals dcross term by term.
NCPoly dcross_via_hterms(const Word& w, CrossVariant variant, int level = 0);

/// The substitution alpha_{s,t} at one iteration level: a level-tagged e_j
/// (j in 1..4) splits into a GUE branch weighted t^{1/2} (V base symbols only)
/// and semicircular branches weighted by square roots of s, 1-s scaled by
/// (1-t)^{1/2} on the V side.
LinearMap alpha_map(int level);

/// (alpha_{s,t})_* [(1-t) D^cross_{V,V} + D^cross_{V,W}] f with the s, t
/// integration deferred; coefficients carry half-integer parameter powers.
NCPoly tcross_parametric(const NCPoly& f, int level = 0);

/// E tr of the parametric operator image evaluated on (GUE, fresh semis),
/// with pairings contracted first and then s and t integrated exactly.
MomentPoly tcross_expected_trace(const NCPoly& f, int level = 0);

struct ExpansionReport {
  MomentPoly lhs;
  MomentPoly rhs;
  std::vector<std::pair<int, Scalar>> diffs;  // per nu-order, nonzero only
  bool pass = false;
};

/// First-order expansion: E tr f = tr f(semis) + nu * E tr[T^cross f].
ExpansionReport verify_theorem1(const NCPoly& f);

struct AsymptoticExpansion {
  std::vector<Scalar> coeffs;  // c_0 .. c_m
  MomentPoly remainder;        // includes its nu^{m+1} prefactor
};

/// Iterated expansion to order m: c_k is the semicircular trace of k
/// applications of the parametric operator with all parameters integrated;
/// the remainder re-inserts the GUE flavor.
AsymptoticExpansion expand_asymptotic(const NCPoly& f, int order_m);

/// Interpolated trace eta_f(t) as an exact sum over pairings and A/B splits:
/// nu^g a(pi) b(pi) t^{|A|/2} (1-t)^{|B|/2} with the B-and-semicircular part
/// sigma-noncrossing. Scalars carry level-0 t monomials.
MomentPoly eta_poly(const Word& w);

/// d/dt of eta_f by the combinatorial formula: designated pair tau in A,
/// crossing activated by supp(tau), exponent |A|/2 - 1.
MomentPoly eta_derivative(const Word& w);

}  // namespace gex

#endif
