#ifndef GEX_NCPOLY_HPP
#define GEX_NCPOLY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gex/label.hpp"
#include "gex/rational.hpp"
#include "gex/scalar.hpp"

namespace gex {

enum class BaseSpace : uint8_t { V, W };

/// One tensor-slot tag: the iteration level that introduced the R^6 layer and
/// the coordinate 1..6 within it.
struct PathEntry {
  int level;
  int tag;
};
int cmp(const PathEntry& a, const PathEntry& b);
bool operator==(const PathEntry& a, const PathEntry& b);

/// Identity of one orthonormal basis vector of the layered variable space:
/// a base index in V or W plus the tensor-slot path (outermost layer last),
/// plus the flavor that evaluates it. Distinct symbols are orthogonal.
class BasisSymbol {
 public:
  static BasisSymbol gue_v(int index);
  static BasisSymbol semi(BaseSpace space, int index,
                          std::vector<PathEntry> path = {});

  BaseSpace space() const { return space_; }
  int index() const { return index_; }
  const std::vector<PathEntry>& path() const { return path_; }
  Flavor flavor() const { return flavor_; }

  bool is_gue() const { return flavor_ == Flavor::Gue; }
  /// Plain V base vector with no tensor tags (the GUE-eligible layer).
  bool is_plain_v() const { return space_ == BaseSpace::V && path_.empty(); }

  /// Appends a tensor tag; the result is semicircular-flavored.
  BasisSymbol with_tag(int level, int tag) const;
  std::optional<PathEntry> outer_tag() const;
  BasisSymbol without_outer_tag_as(Flavor f) const;
  BasisSymbol with_flavor(Flavor f) const;

  std::string key() const;
  Label label() const { return {flavor_, key()}; }

 private:
  BasisSymbol() = default;
  BaseSpace space_ = BaseSpace::V;
  int index_ = 0;
  std::vector<PathEntry> path_;
  Flavor flavor_ = Flavor::Semi;
};

int cmp(const BasisSymbol& a, const BasisSymbol& b);
bool operator==(const BasisSymbol& a, const BasisSymbol& b);
bool operator<(const BasisSymbol& a, const BasisSymbol& b);

/// Finite linear combination of basis symbols with Scalar coefficients.
class VecExpr {
 public:
  VecExpr() = default;
  static VecExpr single(const BasisSymbol& s, const Scalar& coeff = Scalar(1));

  bool is_zero() const { return terms_.empty(); }
  const std::map<BasisSymbol, Scalar>& terms() const { return terms_; }
  /// The unique symbol of a singleton combination with coefficient one.
  std::optional<BasisSymbol> as_plain_symbol() const;

  VecExpr& operator+=(const VecExpr& o);
  VecExpr scaled(const Scalar& s) const;
  /// Keeps only symbols matching the predicate.
  VecExpr filtered(const std::function<bool(const BasisSymbol&)>& keep) const;

  std::string str() const;

 private:
  void add(const BasisSymbol& s, const Scalar& c);
  std::map<BasisSymbol, Scalar> terms_;
};

/// Bilinear pairing; distinct basis symbols are orthonormal.
Scalar inner_product(const VecExpr& a, const VecExpr& b);
int cmp(const VecExpr& a, const VecExpr& b);
bool operator==(const VecExpr& a, const VecExpr& b);

/// Product of matrix letters: formal identifiers and/or concrete matrices.
/// Adjacent concrete factors are fused eagerly; an empty product is the
/// identity (which is never stored explicitly).
class MatrixLetter {
 public:
  using Atom = std::variant<std::string, RatMatrix>;

  MatrixLetter() = default;  // identity
  static MatrixLetter formal(const std::string& id);
  static MatrixLetter concrete(const RatMatrix& m);

  bool is_identity() const { return atoms_.empty(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  MatrixLetter times(const MatrixLetter& o) const;

  /// Normalized trace: a number for concrete content, a formal trace symbol
  /// otherwise. Throws std::invalid_argument on formal/concrete mixtures.
  Scalar normalized_trace() const;

  /// Dimension of concrete content, if any.
  std::optional<int> concrete_dim() const;

  std::string str() const;

 private:
  std::vector<Atom> atoms_;
};

int cmp(const MatrixLetter& a, const MatrixLetter& b);
bool operator==(const MatrixLetter& a, const MatrixLetter& b);

/// Monomial: coeff * Z_0 x_1 Z_1 x_2 ... x_r Z_r with r >= 0.
struct Word {
  Scalar coeff = Scalar(1);
  std::vector<MatrixLetter> mats;  // size vars.size() + 1
  std::vector<VecExpr> vars;

  Word() : mats(1) {}

  static Word one();
  static Word scalar(const Scalar& s);
  static Word variable(const VecExpr& v);
  static Word matrix(const MatrixLetter& m);

  int degree() const { return static_cast<int>(vars.size()); }
  Word times(const Word& o) const;
  Word scaled(const Scalar& s) const;

  std::string str() const;
};

/// Compares letter sequences only (not coefficients).
int cmp_letters(const Word& a, const Word& b);

/// Sum of words; like terms combined, zero terms dropped.
class NCPoly {
 public:
  NCPoly() = default;
  explicit NCPoly(const Word& w);

  static NCPoly from_words(std::vector<Word> words);
  static NCPoly zero() { return {}; }
  static NCPoly one();
  static NCPoly scalar(const Scalar& s);
  static NCPoly variable(const VecExpr& v);
  static NCPoly matrix(const MatrixLetter& m);

  bool is_zero() const { return words_.empty(); }
  const std::vector<Word>& words() const { return words_; }
  int degree() const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator*(const NCPoly& o) const;
  NCPoly scaled(const Scalar& s) const;

  std::string str() const;

 private:
  void add_word(const Word& w);
  void normalize();
  std::vector<Word> words_;
};

NCPoly operator+(NCPoly a, const NCPoly& b);
NCPoly operator-(NCPoly a, const NCPoly& b);
bool operator==(const NCPoly& a, const NCPoly& b);

/// Which variable letters a derivation differentiates.
enum class SubspaceSel : uint8_t { GueV, SemiW };
bool selects(SubspaceSel sel, const BasisSymbol& s);

/// Monomial tensor with leading vector slots and algebra factor slots.
struct TensorTerm {
  Scalar coeff = Scalar(1);
  std::vector<VecExpr> vecs;
  std::vector<Word> factors;  // each carries coefficient one after normalization
};

class TensorPoly {
 public:
  TensorPoly(int vec_slots, int factor_slots);
  static TensorPoly build(int vec_slots, int factor_slots, std::vector<TensorTerm> terms);

  int vec_slots() const { return nvec_; }
  int factor_slots() const { return nfac_; }
  const std::vector<TensorTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(TensorTerm t);
  TensorPoly scaled(const Scalar& s) const;

 private:
  void take_term(TensorTerm t);  // validate and fold, no re-sort
  void normalize();
  int nvec_;
  int nfac_;
  std::vector<TensorTerm> terms_;
};

bool operator==(const TensorPoly& a, const TensorPoly& b);

/// Linear substitution of variables, inducing the *-algebra homomorphism that
/// fixes matrix letters and rewrites x_v through the map.
class LinearMap {
 public:
  using Fn = std::function<std::optional<VecExpr>(const BasisSymbol&)>;

  LinearMap(std::string name, Fn fn);
  static LinearMap identity();
  static LinearMap from_table(const std::map<BasisSymbol, VecExpr>& table);
  static LinearMap compose(const LinearMap& outer, const LinearMap& inner);

  const std::string& name() const { return name_; }
  VecExpr apply_symbol(const BasisSymbol& s) const;
  VecExpr apply(const VecExpr& v) const;

 private:
  std::string name_;
  Fn fn_;
};

NCPoly pushforward(const LinearMap& phi, const NCPoly& f);
Word pushforward(const LinearMap& phi, const Word& w);

/// Free difference quotient: derivation with x_v -> v (x) 1 (x) 1 on selected
/// letters, zero on matrix letters and unselected variables.
TensorPoly fdq(const NCPoly& f, SubspaceSel sel);

/// Applies the free difference quotient to one factor slot; the new vector
/// slot is appended after the existing ones and the factor splits in place.
TensorPoly fdq_factor(const TensorPoly& t, int factor_index, SubspaceSel sel);

/// (id_V (x) m_{2,1}) o fdq.
TensorPoly cyclic_gradient(const NCPoly& f, SubspaceSel sel);

/// Multiplies factor slots in the listed (1-based) order, keeping vector slots.
TensorPoly mult_perm_factors(const TensorPoly& t, const std::vector<int>& order);

/// As above for a tensor with no vector slots, yielding a polynomial.
NCPoly mult_perm(const TensorPoly& t, const std::vector<int>& order);

/// Pairs the two leading vector slots into the coefficient.
TensorPoly contract_inner(const TensorPoly& t);

/// n_V o (id (x) fdq) o cyclic_gradient, as in the defining diagram.
TensorPoly free_laplacian(const NCPoly& f, SubspaceSel sel);

/// Rewrites every variable letter as a combination of single-symbol letters.
NCPoly expand_to_basis(const NCPoly& f);

/// The substitution v -> v (x) e_tag at the given level (semicircular target).
LinearMap tag_map(int level, int tag);

/// Tags factor slot j with e_{j+1} (four-slot convention of the crossing
/// derivative).
TensorPoly tag_factors(const TensorPoly& t, int level);

}  // namespace gex

#endif
