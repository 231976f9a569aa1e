#include "gex/rmt.hpp"

#include <cblas.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

extern "C" void openblas_set_num_threads(int);

namespace gex {

namespace {

// parallelism lives at the sample level; nested BLAS threads thrash the cores
void pin_blas_single_threaded() {
  static std::once_flag flag;
  std::call_once(flag, [] { openblas_set_num_threads(1); });
}

}  // namespace

namespace {

constexpr uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(uint64_t a, uint64_t b, uint64_t& hi, uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<uint64_t>(p >> 64);
  lo = static_cast<uint64_t>(p);
}

}  // namespace

Philox::Philox(uint64_t seed, uint64_t stream) : key_{seed, stream} {}

void Philox::refill() {
  uint64_t x0 = ctr_[0], x1 = ctr_[1], x2 = key_[1], x3 = 0;  // stream folded into the block
  uint64_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, x0, hi0, lo0);
    mulhilo(kPhiloxM1, x2, hi1, lo1);
    uint64_t y0 = hi1 ^ x1 ^ k0;
    uint64_t y1 = lo1;
    uint64_t y2 = hi0 ^ x3 ^ k1;
    uint64_t y3 = lo0;
    x0 = y0;
    x1 = y1;
    x2 = y2;
    x3 = y3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  out_[0] = x0;
  out_[1] = x1;
  out_[2] = x2;
  out_[3] = x3;
  have_ = 4;
  if (++ctr_[0] == 0) ++ctr_[1];
}

uint64_t Philox::next_u64() {
  if (have_ == 0) refill();
  return out_[4 - have_--];
}

double Philox::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Philox::next_gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_gauss_;
  }
  // Marsaglia polar method
  double x, y, s;
  do {
    x = 2.0 * next_unit() - 1.0;
    y = 2.0 * next_unit() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  double scale = std::sqrt(-2.0 * std::log(s) / s);
  cached_gauss_ = y * scale;
  has_cached_ = true;
  return x * scale;
}

FloatMatrix FloatMatrix::identity(int dim) {
  FloatMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

FloatMatrix matmul(const FloatMatrix& x, const FloatMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matrix dimension mismatch");
  pin_blas_single_threaded();
  FloatMatrix r(x.n);
  const std::complex<double> one(1.0, 0.0), zero(0.0, 0.0);
  cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, x.n, x.n, x.n, &one, x.a.data(), x.n,
              y.a.data(), y.n, &zero, r.a.data(), r.n);
  return r;
}

std::complex<double> trace_of_product(const FloatMatrix& x, const FloatMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matrix dimension mismatch");
  std::complex<double> t = 0.0;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) t += x.at(i, j) * y.at(j, i);
  return t / static_cast<double>(x.n);
}

std::complex<double> normalized_trace(const FloatMatrix& x) {
  std::complex<double> t = 0.0;
  for (int i = 0; i < x.n; ++i) t += x.at(i, i);
  return t / static_cast<double>(x.n);
}

double hermiticity_defect(const FloatMatrix& x) {
  double worst = 0.0;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      worst = std::max(worst, std::abs(x.at(i, j) - std::conj(x.at(j, i))));
  return worst;
}

FloatMatrix sample_gue(int N, Philox& gen) {
  if (N <= 0) throw std::invalid_argument("GUE dimension must be positive");
  FloatMatrix m(N);
  const double diag_sd = 1.0 / std::sqrt(static_cast<double>(N));
  const double off_sd = 1.0 / std::sqrt(2.0 * N);
  for (int i = 0; i < N; ++i) {
    m.at(i, i) = gen.next_gaussian() * diag_sd;
    for (int j = i + 1; j < N; ++j) {
      double re = gen.next_gaussian() * off_sd;
      double im = gen.next_gaussian() * off_sd;
      m.at(i, j) = {re, im};
      m.at(j, i) = {re, -im};
    }
  }
  return m;
}

namespace {

std::complex<double> scalar_to_complex(const Scalar& s) {
  if (!s.is_constant())
    throw std::invalid_argument("coefficient is not numeric: " + s.str());
  CplxRational c = s.constant_value();
  return {c.re.get_d(), c.im.get_d()};
}

FloatMatrix concrete_to_float(const RatMatrix& m) {
  FloatMatrix f(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      f.at(i, j) = {m.at(i, j).re.get_d(), m.at(i, j).im.get_d()};
  return f;
}

FloatMatrix letter_to_float(const VecExpr& v,
                            const std::map<std::string, FloatMatrix>& assignment, int dim) {
  FloatMatrix out(dim);
  for (const auto& [sym, coeff] : v.terms()) {
    if (sym.flavor() != Flavor::Gue)
      throw std::invalid_argument("free product not numerically representable");
    auto it = assignment.find(sym.key());
    if (it == assignment.end())
      throw std::invalid_argument("no matrix assigned to " + sym.key());
    std::complex<double> c = scalar_to_complex(coeff);
    for (size_t k = 0; k < out.a.size(); ++k) out.a[k] += c * it->second.a[k];
  }
  return out;
}

FloatMatrix matrix_letter_to_float(const MatrixLetter& m, int dim) {
  FloatMatrix out = FloatMatrix::identity(dim);
  for (const auto& atom : m.atoms()) {
    if (std::holds_alternative<std::string>(atom))
      throw std::invalid_argument("formal matrix letter has no numeric value");
    out = matmul(out, concrete_to_float(std::get<RatMatrix>(atom)));
  }
  return out;
}

int assignment_dim(const std::map<std::string, FloatMatrix>& assignment) {
  int dim = 0;
  for (const auto& [k, m] : assignment) {
    if (dim == 0) dim = m.n;
    if (m.n != dim) throw std::invalid_argument("assignment matrices differ in dimension");
  }
  if (dim == 0) throw std::invalid_argument("empty matrix assignment");
  return dim;
}

}  // namespace

FloatMatrix eval_poly_float(const NCPoly& f,
                            const std::map<std::string, FloatMatrix>& assignment) {
  int dim = assignment_dim(assignment);
  FloatMatrix total(dim);
  for (const auto& w : f.words()) {
    FloatMatrix prod = matrix_letter_to_float(w.mats[0], dim);
    for (size_t i = 0; i < w.vars.size(); ++i) {
      prod = matmul(prod, letter_to_float(w.vars[i], assignment, dim));
      if (!w.mats[i + 1].is_identity())
        prod = matmul(prod, matrix_letter_to_float(w.mats[i + 1], dim));
    }
    std::complex<double> c = scalar_to_complex(w.coeff);
    for (size_t k = 0; k < total.a.size(); ++k) total.a[k] += c * prod.a[k];
  }
  return total;
}

namespace {

// Compiled shape of one word: alternating concrete matrices and variable
// powers, with maximal runs of one variable compressed into powers of two.
struct CompiledFactor {
  bool is_var = false;
  int var_ordinal = 0;
  int power = 1;           // power of two for variables
  FloatMatrix constant;    // when !is_var
};

struct CompiledWord {
  std::complex<double> coeff;
  std::vector<CompiledFactor> factors;
};

struct PowerCache {
  // powers[v][k] = X_v^{2^k}
  std::vector<std::vector<FloatMatrix>> powers;

  const FloatMatrix& get(int v, int pow2) {
    auto& chain = powers[v];
    int k = 0;
    while ((1 << k) < pow2) ++k;
    while (static_cast<int>(chain.size()) <= k) {
      const FloatMatrix& prev = chain.back();
      chain.push_back(matmul(prev, prev));
    }
    return chain[k];
  }
};

std::complex<double> eval_compiled(const CompiledWord& cw, PowerCache& cache) {
  if (cw.factors.empty()) return cw.coeff;  // scalar word: tr_n(1) = 1
  std::vector<const FloatMatrix*> mats;
  mats.reserve(cw.factors.size());
  for (const auto& f : cw.factors)
    mats.push_back(f.is_var ? &cache.get(f.var_ordinal, f.power) : &f.constant);
  if (mats.size() == 1) return cw.coeff * normalized_trace(*mats[0]);
  // tr(P P) needs only the half product
  size_t n = mats.size();
  if (n % 2 == 0) {
    bool halves_equal = true;
    for (size_t i = 0; i < n / 2; ++i)
      if (mats[i] != mats[i + n / 2]) halves_equal = false;
    if (halves_equal) {
      if (n == 2) return cw.coeff * trace_of_product(*mats[0], *mats[0]);
      FloatMatrix half = matmul(*mats[0], *mats[1]);
      for (size_t i = 2; i < n / 2; ++i) half = matmul(half, *mats[i]);
      return cw.coeff * trace_of_product(half, half);
    }
  }
  if (mats.size() == 2) return cw.coeff * trace_of_product(*mats[0], *mats[1]);
  FloatMatrix acc = matmul(*mats[0], *mats[1]);
  for (size_t i = 2; i + 1 < mats.size(); ++i) acc = matmul(acc, *mats[i]);
  return cw.coeff * trace_of_product(acc, *mats.back());
}

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& xs, size_t lo,
                                  size_t hi) {
  if (hi - lo == 1) return xs[lo];
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

double pairwise_sum(const std::vector<double>& xs, size_t lo, size_t hi) {
  if (hi - lo == 1) return xs[lo];
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

}  // namespace

MCEstimate mc_expected_trace(const NCPoly& f, int N, long n_samples, uint64_t seed) {
  if (N <= 0) throw std::invalid_argument("GUE dimension must be positive");
  if (n_samples <= 0) throw std::invalid_argument("sample count must be positive");

  // deterministic variable ordering by symbol key
  std::set<std::string> ids;
  for (const auto& w : f.words())
    for (const auto& v : w.vars)
      for (const auto& [sym, c] : v.terms()) {
        if (sym.flavor() != Flavor::Gue)
          throw std::invalid_argument("free product not numerically representable");
        ids.insert(sym.key());
      }
  std::vector<std::string> id_list(ids.begin(), ids.end());
  std::map<std::string, int> ordinal;
  for (size_t i = 0; i < id_list.size(); ++i) ordinal[id_list[i]] = static_cast<int>(i);

  // compile words: runs of a single plain symbol become power factors
  std::vector<CompiledWord> compiled;
  for (const auto& w : f.words()) {
    CompiledWord cw;
    cw.coeff = scalar_to_complex(w.coeff);
    std::vector<std::pair<int, int>> letters;  // (var ordinal, run length), -1 for matrices
    auto flush_matrix = [&](const MatrixLetter& m) {
      if (m.is_identity()) return;
      CompiledFactor cf;
      cf.is_var = false;
      cf.constant = matrix_letter_to_float(m, N);
      cw.factors.push_back(std::move(cf));
    };
    flush_matrix(w.mats[0]);
    size_t i = 0;
    while (i < w.vars.size()) {
      auto sym = w.vars[i].as_plain_symbol();
      bool plain = sym.has_value();
      if (plain) {
        size_t j = i;
        while (j < w.vars.size() && w.mats[j + 1].is_identity() && j + 1 < w.vars.size() &&
               w.vars[j + 1].as_plain_symbol() &&
               *w.vars[j + 1].as_plain_symbol() == *sym)
          ++j;
        int run = static_cast<int>(j - i + 1);
        int v = ordinal.at(sym->key());
        std::vector<int> parts;
        for (int p = 1 << 30; p >= 1; p >>= 1)
          if (run & p) parts.push_back(p);
        // a lone power-of-two factor traces cheaper as two equal halves
        if (parts.size() == 1 && parts[0] > 1 && cw.factors.empty() && j + 1 == w.vars.size() &&
            w.mats[j + 1].is_identity() && w.mats[0].is_identity())
          parts = {parts[0] / 2, parts[0] / 2};
        for (int p : parts) {
          CompiledFactor cf;
          cf.is_var = true;
          cf.var_ordinal = v;
          cf.power = p;
          cw.factors.push_back(cf);
        }
        flush_matrix(w.mats[j + 1]);
        i = j + 1;
      } else {
        // general combination letter: materialized per sample below
        CompiledFactor cf;
        cf.is_var = true;
        cf.var_ordinal = -1 - static_cast<int>(i);  // marker, resolved at eval
        cw.factors.push_back(cf);
        flush_matrix(w.mats[i + 1]);
        ++i;
      }
    }
    compiled.push_back(std::move(cw));
  }
  bool has_combo = false;
  for (const auto& cw : compiled)
    for (const auto& cf : cw.factors)
      if (cf.is_var && cf.var_ordinal < 0) has_combo = true;

  std::vector<std::complex<double>> values(static_cast<size_t>(n_samples));
  auto run_range = [&](long lo, long hi) {
    for (long s = lo; s < hi; ++s) {
      std::map<std::string, FloatMatrix> assignment;
      PowerCache cache;
      cache.powers.resize(id_list.size());
      for (size_t v = 0; v < id_list.size(); ++v) {
        Philox gen(seed, static_cast<uint64_t>(s) * id_list.size() + v);
        FloatMatrix x = sample_gue(N, gen);
        cache.powers[v].push_back(x);
        if (has_combo) assignment.emplace(id_list[v], cache.powers[v].front());
      }
      std::complex<double> total = 0.0;
      if (has_combo) {
        total = normalized_trace(eval_poly_float(f, assignment));
      } else {
        for (const auto& cw : compiled) total += eval_compiled(cw, cache);
      }
      values[static_cast<size_t>(s)] = total;
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  long nthreads = std::max(1L, std::min<long>(hw ? hw : 1, n_samples));
  if (nthreads == 1) {
    run_range(0, n_samples);
  } else {
    std::vector<std::thread> workers;
    long chunk = (n_samples + nthreads - 1) / nthreads;
    for (long t = 0; t < nthreads; ++t) {
      long lo = t * chunk, hi = std::min(n_samples, lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back(run_range, lo, hi);
    }
    for (auto& w : workers) w.join();
  }

  std::complex<double> mean = pairwise_sum(values, 0, values.size()) / double(n_samples);
  std::vector<double> sq(values.size());
  for (size_t i = 0; i < values.size(); ++i) sq[i] = std::norm(values[i] - mean);
  double var = n_samples > 1 ? pairwise_sum(sq, 0, sq.size()) / double(n_samples - 1) : 0.0;

  MCEstimate est;
  est.mean = mean;
  est.stderr_ = std::sqrt(var / double(n_samples));
  est.n_samples = n_samples;
  est.seed = seed;
  return est;
}

}  // namespace gex
