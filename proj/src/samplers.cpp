#include "flda/samplers.hpp"

#include <algorithm>
#include <cmath>

namespace flda {

int lsearch_sample(std::span<const double> weights, double u) {
  if (u < 0.0) throw ContractViolationError("lsearch_sample: u < 0");
  double prefix = 0.0;
  for (std::size_t t = 0; t < weights.size(); ++t) {
    if (weights[t] < 0.0)
      throw InvalidDistributionError("lsearch_sample: negative weight");
    prefix += weights[t];
    if (prefix > u) return static_cast<int>(t);
  }
  if (prefix <= 0.0)
    throw InvalidDistributionError("lsearch_sample: total mass <= 0");
  throw ContractViolationError("lsearch_sample: u >= total mass");
}

Cdf cumsum_build(std::span<const double> weights) {
  Cdf cdf;
  cdf.cum.reserve(weights.size());
  double prefix = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InvalidDistributionError("cumsum_build: negative weight");
    prefix += w;
    cdf.cum.push_back(prefix);
  }
  return cdf;
}

Cdf cumsum_build(std::span<const std::pair<std::int32_t, double>> entries) {
  Cdf cdf;
  cdf.cum.reserve(entries.size());
  cdf.support.reserve(entries.size());
  double prefix = 0.0;
  for (const auto& [index, w] : entries) {
    if (w < 0.0) throw InvalidDistributionError("cumsum_build: negative weight");
    prefix += w;
    cdf.cum.push_back(prefix);
    cdf.support.push_back(index);
  }
  return cdf;
}

int bsearch_sample(const Cdf& cdf, double u) {
  if (cdf.cum.empty() || u < 0.0 || u >= cdf.cum.back())
    throw ContractViolationError("bsearch_sample: u out of range");
  const auto it = std::upper_bound(cdf.cum.begin(), cdf.cum.end(), u);
  const auto slot = static_cast<std::size_t>(it - cdf.cum.begin());
  return cdf.sparse() ? cdf.support[slot] : static_cast<int>(slot);
}

AliasTable alias_build(std::span<const double> weights) {
  const int n = static_cast<int>(weights.size());
  if (n == 0) throw InvalidDistributionError("alias_build: empty weights");

  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InvalidDistributionError("alias_build: negative weight");
    total += w;
  }
  if (total <= 0.0)
    throw InvalidDistributionError("alias_build: total mass <= 0");

  AliasTable table;
  table.total = total;
  table.prob.assign(n, 0.0);
  table.alias.assign(n, 0);

  // Vose: scale to mean 1, then pair each under-full bucket with an
  // over-full donor.
  std::vector<double> scaled(n);
  std::vector<std::int32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  const double scale = static_cast<double>(n) / total;
  for (int t = 0; t < n; ++t) {
    scaled[t] = weights[t] * scale;
    (scaled[t] < 1.0 ? small : large).push_back(t);
  }
  while (!small.empty() && !large.empty()) {
    const int s = small.back();
    const int l = large.back();
    small.pop_back();
    large.pop_back();
    table.prob[s] = scaled[s];
    table.alias[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  // Leftovers are exactly-full buckets up to rounding.
  while (!large.empty()) {
    table.prob[large.back()] = 1.0;
    large.pop_back();
  }
  while (!small.empty()) {
    table.prob[small.back()] = 1.0;
    small.pop_back();
  }
  return table;
}

int alias_sample(const AliasTable& table, double u) {
  const int n = table.size();
  if (!(u >= 0.0) || !(u < static_cast<double>(n)))
    throw ContractViolationError("alias_sample: u out of range");
  const int j = static_cast<int>(u);
  return (u - j) <= table.prob[j] ? j : table.alias[j];
}

}  // namespace flda
