#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gex/corpus.hpp"
#include "gex/genus.hpp"
#include "gex/parraud.hpp"
#include "gex/report.hpp"
#include "gex/rmt.hpp"
#include "gex/selftest.hpp"
#include "gex/wordparse.hpp"

namespace {

using gex::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct MomentsArgs {
  std::vector<std::string> words;
  std::vector<std::string> system_files;
  std::vector<long> dims;
  bool as_json = false;
};

struct VerifyArgs {
  std::vector<std::string> words;
  int random_count = 0;
  int degree = 8;
  uint64_t seed = 1;
  int order = -1;  // >= 0 switches to the iterated-expansion check
  bool as_json = false;
};

struct ExpandArgs {
  std::string word;
  int order = 1;
  bool as_json = false;
};

struct EtaArgs {
  std::string word;
  bool as_json = false;
};

struct McArgs {
  std::string word;
  std::vector<long> dims{32};
  long samples = 100000;
  uint64_t seed = 1;
  double z_limit = 4.0;
  bool as_json = false;
};

std::vector<gex::Word> collect_words(const std::vector<std::string>& words, int random_count,
                                     int degree, uint64_t seed, std::vector<std::string>* names) {
  std::vector<gex::Word> out;
  for (const auto& w : words) {
    out.push_back(gex::parse_word(w));
    names->push_back(w);
  }
  if (random_count > 0) {
    gex::Philox gen(seed, 777);
    gex::CorpusOptions opts;
    opts.max_degree = degree;
    for (int i = 0; i < random_count; ++i) {
      gex::Word w = gex::random_monomial(gen, opts);
      names->push_back("random#" + std::to_string(i));
      out.push_back(std::move(w));
    }
  }
  if (out.empty()) throw gex::WordSyntaxError("no input words; pass --word or --random");
  return out;
}

int cmd_moments(const MomentsArgs& a) {
  json out = json::array();
  auto add_entry = [&](const std::string& name, const gex::MomentPoly& m) {
    json entry{{"word", name}, {"moment", gex::to_json(m)}, {"pretty", m.str()}};
    json evals = json::array();
    for (long N : a.dims) {
      gex::Scalar v = gex::moment_eval(m, gex::Rational(N));
      evals.push_back(json{{"N", N}, {"value", gex::to_json(v)}, {"pretty", v.str()}});
    }
    if (!a.dims.empty()) entry["eval"] = evals;
    out.push_back(std::move(entry));
  };
  for (const auto& text : a.words)
    add_entry(text, gex::expected_trace_poly(gex::NCPoly(gex::parse_word(text))));
  for (const auto& path : a.system_files) {
    std::ifstream in(path);
    if (!in) throw gex::WordSyntaxError("cannot open system file: " + path);
    gex::TracedWordSystem sys = gex::system_from_json(json::parse(in));
    gex::MomentPoly m = gex::expected_trace_genus(sys);
    if (!(m == gex::expected_trace_ibp(sys)))
      throw std::logic_error("the two trace engines disagree on " + path);
    auto slash = path.find_last_of('/');
    add_entry(slash == std::string::npos ? path : path.substr(slash + 1), m);
  }
  if (a.as_json) {
    std::cout << json{{"command", "moments"}, {"results", out}}.dump(2) << "\n";
  } else {
    for (const auto& e : out) {
      std::cout << e["word"].get<std::string>() << ": " << e["pretty"].get<std::string>() << "\n";
      if (e.contains("eval"))
        for (const auto& ev : e["eval"])
          std::cout << "  at N=" << ev["N"] << ": " << ev["pretty"].get<std::string>() << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> names;
  std::vector<gex::Word> corpus = collect_words(a.words, a.random_count, a.degree, a.seed, &names);
  json results = json::array();
  bool all_pass = true;
  for (size_t i = 0; i < corpus.size(); ++i) {
    gex::NCPoly f(corpus[i]);
    json entry{{"word", names[i]}};
    bool pass = false;
    std::string pretty;
    if (a.order >= 0) {
      gex::AsymptoticExpansion ae = gex::expand_asymptotic(f, a.order);
      gex::MomentPoly recombined = ae.remainder;
      for (size_t k = 0; k < ae.coeffs.size(); ++k)
        recombined += gex::MomentPoly::nu_power(static_cast<int>(k), ae.coeffs[k]);
      pass = recombined == gex::expected_trace_poly(f);
      entry["expansion"] = gex::to_json(ae);
      entry["pass"] = pass;
      pretty = "coeffs=[";
      for (size_t k = 0; k < ae.coeffs.size(); ++k)
        pretty += (k ? ", " : "") + ae.coeffs[k].str();
      pretty += "], remainder=" + ae.remainder.str();
    } else {
      gex::ExpansionReport rep = gex::verify_theorem1(f);
      pass = rep.pass;
      entry["report"] = gex::to_json(rep);
      entry["pass"] = pass;
      if (!pass) {
        entry["first_mismatch_nu_order"] = rep.diffs.front().first;
        pretty = "first differing nu-order: " + std::to_string(rep.diffs.front().first);
      }
    }
    all_pass = all_pass && pass;
    results.push_back(std::move(entry));
    if (!a.as_json) {
      std::cout << (pass ? "PASS " : "FAIL ") << names[i];
      if (!pretty.empty()) std::cout << "  " << pretty;
      std::cout << "\n";
    }
  }
  if (a.as_json)
    std::cout << json{{"command", "verify"}, {"results", results}, {"pass", all_pass}}.dump(2)
              << "\n";
  else
    std::cout << (all_pass ? "all pass" : "MISMATCH") << " (" << corpus.size() << " words)\n";
  return all_pass ? kExitOk : kExitMismatch;
}

int cmd_expand(const ExpandArgs& a) {
  gex::NCPoly f(gex::parse_word(a.word));
  gex::AsymptoticExpansion ae = gex::expand_asymptotic(f, a.order);
  gex::MomentPoly recombined = ae.remainder;
  for (size_t k = 0; k < ae.coeffs.size(); ++k)
    recombined += gex::MomentPoly::nu_power(static_cast<int>(k), ae.coeffs[k]);
  bool consistent = recombined == gex::expected_trace_poly(f);
  if (a.as_json) {
    json out{{"command", "expand"},
             {"word", a.word},
             {"order", a.order},
             {"expansion", gex::to_json(ae)},
             {"consistent", consistent}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << a.word << " to order " << a.order << ":\n";
    for (size_t k = 0; k < ae.coeffs.size(); ++k)
      std::cout << "  c_" << k << " = " << ae.coeffs[k].str() << "\n";
    std::cout << "  remainder = " << ae.remainder.str() << "\n";
    std::cout << (consistent ? "consistent with the exact moments\n"
                             : "INCONSISTENT with the exact moments\n");
  }
  return consistent ? kExitOk : kExitMismatch;
}

int cmd_eta(const EtaArgs& a) {
  gex::Word w = gex::parse_word(a.word);
  gex::MomentPoly eta = gex::eta_poly(w);
  gex::MomentPoly deriv = gex::eta_derivative(w);
  gex::MomentPoly eta_t, deriv_t, eta_ddt;
  for (const auto& [g, c] : eta.coeffs())
    eta_t += gex::MomentPoly::nu_power(g, gex::expand_in_t(c, 0));
  for (const auto& [g, c] : deriv.coeffs())
    deriv_t += gex::MomentPoly::nu_power(g, gex::expand_in_t(c, 0));
  for (const auto& [g, c] : eta_t.coeffs())
    eta_ddt += gex::MomentPoly::nu_power(g, gex::derivative_t(c, 0));
  bool deriv_ok = eta_ddt == deriv_t;

  gex::MomentPoly at0, at1;
  for (const auto& [g, c] : eta_t.coeffs()) {
    at0 += gex::MomentPoly::nu_power(g, gex::substitute_param(c, {gex::ParamKind::T, 0},
                                                              gex::Rational(0)));
    at1 += gex::MomentPoly::nu_power(g, gex::substitute_param(c, {gex::ParamKind::T, 0},
                                                              gex::Rational(1)));
  }
  gex::NCPoly f(w);
  bool ends_ok = at0 == gex::MomentPoly(gex::semicircular_trace(f)) &&
                 at1 == gex::expected_trace_poly(f);
  if (a.as_json) {
    json out{{"command", "eta"},
             {"word", a.word},
             {"eta_t_basis", gex::to_json(eta_t)},
             {"derivative", gex::to_json(deriv_t)},
             {"derivative_matches", deriv_ok},
             {"endpoints_match", ends_ok}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "eta(t)  = " << eta_t.str() << "\n";
    std::cout << "eta'(t) = " << deriv_t.str() << "\n";
    std::cout << "d/dt matches combinatorial derivative: " << (deriv_ok ? "yes" : "NO") << "\n";
    std::cout << "endpoints match the two engines: " << (ends_ok ? "yes" : "NO") << "\n";
  }
  return deriv_ok && ends_ok ? kExitOk : kExitMismatch;
}

int cmd_mc(const McArgs& a) {
  gex::NCPoly f(gex::parse_word(a.word));
  gex::MomentPoly exact_poly = gex::expected_trace_poly(f);
  json results = json::array();
  bool all_ok = true;
  for (long N : a.dims) {
    gex::MCEstimate est = gex::mc_expected_trace(f, static_cast<int>(N), a.samples, a.seed);
    gex::Scalar exact = gex::moment_eval(exact_poly, gex::Rational(N));
    gex::CplxRational ev = exact.constant_value();
    std::complex<double> exact_c(ev.re.get_d(), ev.im.get_d());
    double z = std::abs(est.mean - exact_c) / (est.stderr_ > 0 ? est.stderr_ : 1e-300);
    bool ok = z < a.z_limit;
    all_ok = all_ok && ok;
    json entry = gex::to_json(est);
    entry["N"] = N;
    entry["exact_re"] = exact_c.real();
    entry["exact_im"] = exact_c.imag();
    entry["exact"] = exact.str();
    entry["z"] = z;
    entry["pass"] = ok;
    results.push_back(entry);
    if (!a.as_json) {
      std::cout << a.word << " at N=" << N << ": mean=" << est.mean.real()
                << (est.mean.imag() >= 0 ? "+" : "") << est.mean.imag() << "i"
                << " stderr=" << est.stderr_ << " exact=" << exact.str() << " z=" << z << " "
                << (ok ? "PASS" : "FAIL") << "\n";
    }
  }
  if (a.as_json)
    std::cout << json{{"command", "mc"}, {"word", a.word}, {"results", results}, {"pass", all_ok}}
                     .dump(2)
              << "\n";
  return all_ok ? kExitOk : kExitMismatch;
}

int run_job_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gex::WordSyntaxError("cannot open job file: " + path);
  json job = json::parse(in, nullptr, true);
  static const std::set<std::string> known_top = {"command", "words", "options"};
  for (const auto& [k, v] : job.items())
    if (!known_top.count(k)) throw gex::WordSyntaxError("unknown job key: " + k);
  if (!job.contains("command") || !job["command"].is_string())
    throw gex::WordSyntaxError("job requires a string 'command'");
  std::string cmd = job["command"].get<std::string>();
  std::vector<std::string> words;
  if (job.contains("words")) {
    if (!job["words"].is_array()) throw gex::WordSyntaxError("'words' must be an array");
    for (const auto& w : job["words"]) words.push_back(w.get<std::string>());
  }
  json opts = job.value("options", json::object());
  static const std::set<std::string> known_opts = {"dims",    "order", "seed",  "samples",
                                                   "random",  "degree", "json", "z_limit"};
  for (const auto& [k, v] : opts.items())
    if (!known_opts.count(k)) throw gex::WordSyntaxError("unknown option: " + k);
  bool as_json = opts.value("json", true);

  if (cmd == "moments") {
    MomentsArgs a;
    a.words = words;
    for (const auto& d : opts.value("dims", json::array())) a.dims.push_back(d.get<long>());
    a.as_json = as_json;
    return cmd_moments(a);
  }
  if (cmd == "verify") {
    VerifyArgs a;
    a.words = words;
    a.random_count = opts.value("random", 0);
    a.degree = opts.value("degree", 8);
    a.seed = opts.value("seed", 1);
    a.order = opts.value("order", -1);
    a.as_json = as_json;
    return cmd_verify(a);
  }
  if (cmd == "expand") {
    if (words.size() != 1) throw gex::WordSyntaxError("expand needs exactly one word");
    ExpandArgs a;
    a.word = words[0];
    a.order = opts.value("order", 1);
    a.as_json = as_json;
    return cmd_expand(a);
  }
  if (cmd == "eta") {
    if (words.size() != 1) throw gex::WordSyntaxError("eta needs exactly one word");
    EtaArgs a;
    a.word = words[0];
    a.as_json = as_json;
    return cmd_eta(a);
  }
  if (cmd == "mc") {
    if (words.size() != 1) throw gex::WordSyntaxError("mc needs exactly one word");
    McArgs a;
    a.word = words[0];
    a.dims.clear();
    for (const auto& d : opts.value("dims", json::array({32}))) a.dims.push_back(d.get<long>());
    a.samples = opts.value("samples", 100000L);
    a.seed = opts.value("seed", 1);
    a.z_limit = opts.value("z_limit", 4.0);
    a.as_json = as_json;
    return cmd_mc(a);
  }
  if (cmd == "selftest") return gex::run_selftest(std::cout);
  throw gex::WordSyntaxError("unknown command in job: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact genus-expansion engine for mixed GUE/semicircular trace moments"};
  app.require_subcommand(1);

  MomentsArgs margs;
  auto* moments = app.add_subcommand("moments", "exact expected trace as a polynomial in 1/N^2");
  moments->add_option("--word", margs.words, "word in the letter grammar");
  moments->add_option("--system", margs.system_files, "serialized traced-word system (JSON)");
  moments->add_option("--dim", margs.dims, "evaluate at concrete N");
  moments->add_flag("--json", margs.as_json, "machine-readable output");

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "check the first-order expansion identity");
  verify->add_option("--word", vargs.words, "explicit words");
  verify->add_option("--random", vargs.random_count, "number of random monomials");
  verify->add_option("--degree", vargs.degree, "max degree of random monomials");
  verify->add_option("--seed", vargs.seed, "corpus seed");
  verify->add_option("--order", vargs.order, "check the iterated expansion to this order");
  verify->add_flag("--json", vargs.as_json, "machine-readable output");

  ExpandArgs xargs;
  auto* expand = app.add_subcommand("expand", "iterated expansion coefficients and remainder");
  expand->add_option("--word", xargs.word, "word")->required();
  expand->add_option("--order", xargs.order, "expansion order m");
  expand->add_flag("--json", xargs.as_json, "machine-readable output");

  EtaArgs eargs;
  auto* eta = app.add_subcommand("eta", "interpolated trace eta_f(t) and its derivative");
  eta->add_option("--word", eargs.word, "word")->required();
  eta->add_flag("--json", eargs.as_json, "machine-readable output");

  McArgs mcargs;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate vs the exact prediction");
  mc->add_option("--word", mcargs.word, "GUE-only word")->required();
  mc->add_option("--dim", mcargs.dims, "matrix dimension(s)");
  mc->add_option("--samples", mcargs.samples, "sample count");
  mc->add_option("--seed", mcargs.seed, "RNG seed");
  mc->add_option("--z-limit", mcargs.z_limit, "z-score acceptance bound");
  mc->add_flag("--json", mcargs.as_json, "machine-readable output");

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite at desk scale");

  std::string job_path;
  auto* job = app.add_subcommand("job", "run a JSON job specification");
  job->add_option("file", job_path, "job file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (moments->parsed()) {
      if (margs.words.empty() && margs.system_files.empty())
        throw gex::WordSyntaxError("moments needs --word or --system");
      return cmd_moments(margs);
    }
    if (verify->parsed()) return cmd_verify(vargs);
    if (expand->parsed()) return cmd_expand(xargs);
    if (eta->parsed()) return cmd_eta(eargs);
    if (mc->parsed()) return cmd_mc(mcargs);
    if (selftest->parsed()) return gex::run_selftest(std::cout);
    if (job->parsed()) return run_job_file(job_path);
  } catch (const gex::WordSyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitUsage;
}
