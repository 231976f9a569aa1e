#include "gex/report.hpp"

namespace gex {

json to_json(const Rational& q) { return rational_to_string(q); }

json to_json(const CplxRational& c) {
  return json{{"re", to_json(c.re)}, {"im", to_json(c.im)}};
}

json to_json(const ParamSymbol& s) {
  const char* kind = nullptr;
  switch (s.kind) {
    case ParamKind::T: kind = "t"; break;
    case ParamKind::OneMinusT: kind = "1-t"; break;
    case ParamKind::S: kind = "s"; break;
    case ParamKind::OneMinusS: kind = "1-s"; break;
  }
  return json{{"kind", kind}, {"level", s.level}};
}

json to_json(const Scalar& s) {
  json terms = json::array();
  for (const auto& [key, coeff] : s.terms()) {
    json params = json::array();
    for (const auto& [sym, e2] : key.mono.exponents2()) {
      json p = to_json(sym);
      p["exp2"] = e2;  // exponent numerator over denominator 2
      params.push_back(std::move(p));
    }
    json traces = json::array();
    for (const auto& w : key.traces) traces.push_back(w.letters());
    terms.push_back(json{{"coeff", to_json(coeff)}, {"params", std::move(params)},
                         {"traces", std::move(traces)}});
  }
  return terms;
}

json to_json(const MomentPoly& p) {
  json out = json::array();
  for (const auto& [g, c] : p.coeffs())
    out.push_back(json{{"nu_power", g}, {"coeff", to_json(c)}});
  return out;
}

json to_json(const MCEstimate& e) {
  return json{{"mean_re", e.mean.real()},
              {"mean_im", e.mean.imag()},
              {"stderr", e.stderr_},
              {"samples", e.n_samples},
              {"seed", e.seed}};
}

json to_json(const ExpansionReport& r) {
  json diffs = json::array();
  for (const auto& [g, c] : r.diffs)
    diffs.push_back(json{{"nu_power", g}, {"diff", to_json(c)}});
  return json{{"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"diffs", std::move(diffs)},
              {"pass", r.pass}};
}

json to_json(const AsymptoticExpansion& a) {
  json coeffs = json::array();
  for (const auto& c : a.coeffs) coeffs.push_back(to_json(c));
  return json{{"coeffs", std::move(coeffs)}, {"remainder", to_json(a.remainder)}};
}

namespace {

json matrix_to_json(const RatMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      entries.push_back(json::array(
          {rational_to_string(m.at(i, j).re), rational_to_string(m.at(i, j).im)}));
  return json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

RatMatrix matrix_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  const json& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != dim * dim)
    throw std::invalid_argument("matrix entry count does not match dimension");
  RatMatrix m(dim);
  int k = 0;
  for (int i = 0; i < dim; ++i)
    for (int jj = 0; jj < dim; ++jj, ++k)
      m.at(i, jj) = {rational_from_string(entries[k][0].get<std::string>()),
                     rational_from_string(entries[k][1].get<std::string>())};
  return m;
}

}  // namespace

json system_to_json(const TracedWordSystem& sys) {
  sys.validate();
  json matrices = json::object();
  std::map<std::string, int> seen;
  auto z_ref = [&](const MatrixLetter& m) {
    json refs = json::array();
    for (const auto& atom : m.atoms()) {
      if (std::holds_alternative<std::string>(atom)) {
        refs.push_back(std::get<std::string>(atom));
      } else {
        std::string name = "M" + std::to_string(matrices.size());
        matrices[name] = matrix_to_json(std::get<RatMatrix>(atom));
        refs.push_back("@" + name);
      }
    }
    return refs;
  };
  json factors = json::array();
  for (const auto& cyc : sys.sigma.cycles()) {
    json factor = json::array();
    for (int k : cyc) {
      const Label& l = sys.labels.at(k);
      factor.push_back(json{{"flavor", l.flavor == Flavor::Gue ? "gue" : "semi"},
                            {"identity", l.id},
                            {"z", z_ref(sys.Z.at(k))}});
    }
    factors.push_back(std::move(factor));
  }
  return json{{"factors", std::move(factors)}, {"matrices", std::move(matrices)}};
}

TracedWordSystem system_from_json(const json& j) {
  TracedWordSystem sys;
  const json& matrices = j.value("matrices", json::object());
  int index = 0;
  std::vector<std::vector<int>> cycles;
  for (const auto& factor : j.at("factors")) {
    std::vector<int> cyc;
    for (const auto& letter : factor) {
      ++index;
      cyc.push_back(index);
      std::string flavor = letter.at("flavor").get<std::string>();
      if (flavor != "gue" && flavor != "semi")
        throw std::invalid_argument("unknown flavor: " + flavor);
      sys.labels[index] = {flavor == "gue" ? Flavor::Gue : Flavor::Semi,
                           letter.at("identity").get<std::string>()};
      MatrixLetter z;
      for (const auto& ref : letter.value("z", json::array())) {
        std::string r = ref.get<std::string>();
        if (!r.empty() && r[0] == '@')
          z = z.times(MatrixLetter::concrete(matrix_from_json(matrices.at(r.substr(1)))));
        else
          z = z.times(MatrixLetter::formal(r));
      }
      sys.Z[index] = std::move(z);
    }
    cycles.push_back(std::move(cyc));
  }
  sys.S = range_set(1, index);
  sys.sigma = Perm::from_cycles(sys.S, cycles);
  sys.validate();
  return sys;
}

}  // namespace gex
