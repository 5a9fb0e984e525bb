#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flda/error.hpp"

namespace flda {

/// Linear search: z = min{t : sum_{s<=t} w_s > u}. Theta(T) per sample,
/// no auxiliary structure.
int lsearch_sample(std::span<const double> weights, double u);

/// Inclusive prefix sums, optionally over a sparse support. When `support`
/// is non-empty, cum[k] sums the first k+1 listed weights and sampling maps
/// back through support[k].
struct Cdf {
  std::vector<double> cum;
  std::vector<std::int32_t> support;

  double total() const { return cum.empty() ? 0.0 : cum.back(); }
  bool sparse() const { return !support.empty(); }
  void clear() {
    cum.clear();
    support.clear();
  }
};

Cdf cumsum_build(std::span<const double> weights);
Cdf cumsum_build(std::span<const std::pair<std::int32_t, double>> entries);

/// Binary search for min{t : cum_t > u}, mapped through the support when
/// sparse. Boundary convention identical to lsearch_sample.
int bsearch_sample(const Cdf& cdf, double u);

/// Walker/Vose alias table: prob[j] in [0,1] plus a fallback outcome per
/// bucket. O(T) to build, O(1) per sample, but any weight change forces a
/// full rebuild.
struct AliasTable {
  std::vector<double> prob;
  std::vector<std::int32_t> alias;
  double total = 0.0;

  int size() const { return static_cast<int>(prob.size()); }
};

AliasTable alias_build(std::span<const double> weights);

/// u uniform in [0, T): bucket j = floor(u), keep j when the fractional part
/// is <= prob[j], otherwise take alias[j].
int alias_sample(const AliasTable& table, double u);

}  // namespace flda
