#ifndef GEX_REPORT_HPP
#define GEX_REPORT_HPP

#include <json.hpp>

#include "gex/parraud.hpp"
#include "gex/rmt.hpp"
#include "gex/scalar.hpp"

namespace gex {

using json = nlohmann::json;

/// JSON shapes are documented in docs/formats.md and kept schema-stable.
json to_json(const Rational& q);
json to_json(const CplxRational& c);
json to_json(const ParamSymbol& s);
json to_json(const Scalar& s);
json to_json(const MomentPoly& p);
json to_json(const MCEstimate& e);
json to_json(const ExpansionReport& r);
json to_json(const AsymptoticExpansion& a);

/// Traced word systems serialize as a list of trace factors (flavor, identity,
/// Z reference) plus a table of concrete matrices in row-major [re, im]
/// rational pairs; sigma is the product of one cycle per factor in listed
/// order.
json system_to_json(const TracedWordSystem& sys);
TracedWordSystem system_from_json(const json& j);

}  // namespace gex

#endif
