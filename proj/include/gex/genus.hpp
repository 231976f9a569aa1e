#ifndef GEX_GENUS_HPP
#define GEX_GENUS_HPP

#include <map>
#include <utility>

#include "gex/ncpoly.hpp"
#include "gex/perm.hpp"
#include "gex/scalar.hpp"

namespace gex {

/// A product of traces of words Y_k Z_k: sigma's cycles are the trace factors,
/// labels say which family evaluates each Y_k, Z carries the deterministic
/// letters.
struct TracedWordSystem {
  IndexSet S;
  Perm sigma;
  Labeling labels;
  std::map<int, MatrixLetter> Z;

  void validate() const;
};

/// The (sigma,tau)-reduction: Z_j^{sigma,tau} = Z_j Z_{(tau sigma)(j)} ... up
/// to the first return outside supp(tau), together with the scalar of the
/// cycles of tau*sigma swallowed by supp(tau). The scalar is returned
/// standalone rather than folded into Z at min(S \ supp tau).
std::pair<std::map<int, MatrixLetter>, Scalar> reduce_coeffs(
    const Perm& sigma, const Perm& tau, const std::map<int, MatrixLetter>& Z);

/// Product of normalized traces over the cycles of p.
Scalar trace_product(const Perm& p, const std::map<int, MatrixLetter>& Z);

/// Genus-expansion evaluation: sum over label-compatible pairings whose
/// semicircular part is sigma-noncrossing, weighted nu^{g(sigma,pi)} times the
/// trace product over pi*sigma.
MomentPoly expected_trace_genus(const TracedWordSystem& sys);

/// Independent recursive evaluator via integration by parts: the minimal index
/// pairs with a same-label partner (same cycle only for semicircular letters),
/// a bridge costs one power of nu, and the system shrinks through the
/// (sigma,tau)-reduction.
MomentPoly expected_trace_ibp(const TracedWordSystem& sys);

/// Single-trace system for a basis word; the leading matrix is absorbed into
/// the trailing one by cyclic symmetry.
TracedWordSystem system_from_word(const Word& w);

/// E tr of a polynomial: expand to basis letters, evaluate each word by the
/// genus expansion, recombine with the word coefficients.
MomentPoly expected_trace_poly(const NCPoly& f);

/// Trace with every variable re-flavored semicircular; the result carries no
/// nu powers (crossings are excluded), which is asserted.
Scalar semicircular_trace(const NCPoly& f);

}  // namespace gex

#endif
