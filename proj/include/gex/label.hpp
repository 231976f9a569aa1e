#ifndef GEX_LABEL_HPP
#define GEX_LABEL_HPP

#include <cstdint>
#include <map>
#include <string>

namespace gex {

/// Which family evaluates a variable: an independent GUE matrix or a free
/// standard semicircular operator.
enum class Flavor : uint8_t { Gue, Semi };

struct Label {
  Flavor flavor = Flavor::Gue;
  std::string id;
};

inline bool operator==(const Label& a, const Label& b) {
  return a.flavor == b.flavor && a.id == b.id;
}
inline bool operator<(const Label& a, const Label& b) {
  if (a.flavor != b.flavor) return a.flavor < b.flavor;
  return a.id < b.id;
}

/// Total labeling of an index set.
using Labeling = std::map<int, Label>;

}  // namespace gex

#endif
