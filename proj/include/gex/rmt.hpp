#ifndef GEX_RMT_HPP
#define GEX_RMT_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gex/ncpoly.hpp"

namespace gex {

/// Philox4x64-10 counter-based generator: the stream is addressed by
/// (seed, stream) and the position by a 128-bit counter, so parallel samples
/// are reproducible from their indices alone.
class Philox {
 public:
  Philox(uint64_t seed, uint64_t stream);

  uint64_t next_u64();
  /// Uniform in (0, 1].
  double next_unit();
  /// Standard normal via Box-Muller.
  double next_gaussian();

 private:
  void refill();
  uint64_t key_[2];
  uint64_t ctr_[2] = {0, 0};
  uint64_t out_[4];
  int have_ = 0;
  double cached_gauss_ = 0.0;
  bool has_cached_ = false;
};

/// Row-major complex matrix in double precision.
struct FloatMatrix {
  int n = 0;
  std::vector<std::complex<double>> a;

  FloatMatrix() = default;
  explicit FloatMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim) {}
  std::complex<double>& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const std::complex<double>& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static FloatMatrix identity(int dim);
};

FloatMatrix matmul(const FloatMatrix& x, const FloatMatrix& y);
/// tr_n(X Y) without forming the product.
std::complex<double> trace_of_product(const FloatMatrix& x, const FloatMatrix& y);
std::complex<double> normalized_trace(const FloatMatrix& x);
double hermiticity_defect(const FloatMatrix& x);

/// Standard N x N GUE draw: sqrt(N) X_jj and sqrt(2N) Re/Im X_ij (i<j) are
/// independent standard normals.
FloatMatrix sample_gue(int N, Philox& gen);

/// Evaluates a GUE-only polynomial at concrete matrices, keyed by symbol key.
FloatMatrix eval_poly_float(const NCPoly& f, const std::map<std::string, FloatMatrix>& assignment);

struct MCEstimate {
  std::complex<double> mean;
  double stderr_ = 0.0;
  long n_samples = 0;
  uint64_t seed = 0;
};

/// Monte Carlo mean of the normalized trace of f over i.i.d. GUE assignments.
/// Deterministic for fixed (seed, N, n_samples) independent of thread count.
MCEstimate mc_expected_trace(const NCPoly& f, int N, long n_samples, uint64_t seed);

}  // namespace gex

#endif
