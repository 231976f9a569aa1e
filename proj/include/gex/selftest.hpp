#ifndef GEX_SELFTEST_HPP
#define GEX_SELFTEST_HPP

#include <ostream>

namespace gex {

/// Desk-scale invariant suite; prints one line per suite with pass counts.
/// Returns 0 when everything holds, 1 otherwise.
int run_selftest(std::ostream& os);

}  // namespace gex

#endif
