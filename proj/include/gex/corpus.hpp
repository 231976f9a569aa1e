#ifndef GEX_CORPUS_HPP
#define GEX_CORPUS_HPP

#include "gex/ncpoly.hpp"
#include "gex/perm.hpp"
#include "gex/rmt.hpp"

namespace gex {

struct CorpusOptions {
  int max_degree = 8;
  int n_identities = 2;
  int matrix_dim = 2;       // dimension of random concrete letters
  bool mix_flavors = true;  // otherwise GUE only
  bool with_matrices = true;
};

/// Seeded random monomial: letters with random flavor and identity, random
/// rational matrices interleaved with probability one half.
Word random_monomial(Philox& gen, const CorpusOptions& opts);

RatMatrix random_rational_matrix(Philox& gen, int dim);

/// Random permutation of S (Fisher-Yates on the images).
Perm random_perm(Philox& gen, const IndexSet& S);

/// Uniformly random pairing of S (#S even).
PairPerm random_pairing(Philox& gen, const IndexSet& S);

}  // namespace gex

#endif
