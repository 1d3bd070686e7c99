#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "report.hpp"

namespace latmed {

// Equality on the implicit chain; checks mix exact grid points with values
// that round through pow().
inline bool chain_eq(double a, double b) { return std::fabs(a - b) <= 1e-9; }

std::string render_real(double v);

// x -> prod x_i^{w_i} on the positive reals ordered as a chain.
class ChainMap {
 public:
  explicit ChainMap(std::vector<double> weights);
  static ChainMap weighted_geomean(double w1, double w2);

  int arity() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double eval(std::span<const double> xs) const;
  std::string describe() const;

 private:
  std::vector<double> weights_;
};

// Tuple for sample `index` of the seeded stream: each coordinate is a grid
// point 2^a 3^b (a,b in [-6,6]) with probability 3/4, otherwise a random
// positive from (0, 100).
std::vector<double> chain_sample_tuple(int arity, uint64_t seed, uint64_t index);

// All checkers probe {1,8}^len first, then opts.samples seeded tuples, and
// report sampled-pass when clean.
CheckReport chain_is_symmetric(const ChainMap& m, const RunOptions& opts = {});
CheckReport chain_is_n_homomorphism(const ChainMap& m, const RunOptions& opts = {});
CheckReport chain_toi_def(const ChainMap& m, const RunOptions& opts = {});
CheckReport chain_toi_cond2(const ChainMap& m, const RunOptions& opts = {});
CheckReport chain_toi_cond3(const ChainMap& m, const RunOptions& opts = {});
CheckReport chain_toi_cond4(const ChainMap& m, const RunOptions& opts = {});

// T(z^n) respects meet and join: T((x^y)^n) = T(x^n) ^ T(y^n) and dually.
CheckReport chain_diag_identities(const ChainMap& m, const RunOptions& opts = {});

}  // namespace latmed
