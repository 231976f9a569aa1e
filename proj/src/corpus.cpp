#include "gex/corpus.hpp"

#include <stdexcept>

namespace gex {

namespace {

long uniform_below(Philox& gen, long n) { return static_cast<long>(gen.next_u64() % n); }

}  // namespace

RatMatrix random_rational_matrix(Philox& gen, int dim) {
  RatMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      long num = uniform_below(gen, 5) - 2;  // -2..2
      long den = 1 + uniform_below(gen, 3);  // 1..3
      m.at(i, j) = CplxRational(make_rational(num, den));
    }
  return m;
}

Word random_monomial(Philox& gen, const CorpusOptions& opts) {
  if (opts.max_degree < 1) throw std::invalid_argument("corpus degree must be at least 1");
  int degree = 1 + static_cast<int>(uniform_below(gen, opts.max_degree));
  Word w = Word::one();
  for (int i = 0; i < degree; ++i) {
    bool semi = opts.mix_flavors && (gen.next_u64() & 1);
    int id = static_cast<int>(uniform_below(gen, opts.n_identities));
    BasisSymbol sym = semi ? BasisSymbol::semi(BaseSpace::W, id) : BasisSymbol::gue_v(id);
    w = w.times(Word::variable(VecExpr::single(sym)));
    if (opts.with_matrices && (gen.next_u64() & 1))
      w = w.times(Word::matrix(MatrixLetter::concrete(random_rational_matrix(gen, opts.matrix_dim))));
  }
  return w;
}

Perm random_perm(Philox& gen, const IndexSet& S) {
  std::vector<int> img = S;
  for (size_t i = img.size(); i > 1; --i)
    std::swap(img[i - 1], img[uniform_below(gen, static_cast<long>(i))]);
  std::map<int, int> images;
  for (size_t i = 0; i < S.size(); ++i) images[S[i]] = img[i];
  return Perm::from_images(images);
}

PairPerm random_pairing(Philox& gen, const IndexSet& S) {
  if (S.size() % 2 != 0) throw std::invalid_argument("pairing needs an even set");
  std::vector<int> rest = S;
  std::vector<Transposition> pairs;
  while (!rest.empty()) {
    int a = rest.front();
    rest.erase(rest.begin());
    long pick = uniform_below(gen, static_cast<long>(rest.size()));
    int b = rest[static_cast<size_t>(pick)];
    rest.erase(rest.begin() + pick);
    pairs.emplace_back(a, b);
  }
  return PairPerm::from_pairs(pairs);
}

}  // namespace gex
