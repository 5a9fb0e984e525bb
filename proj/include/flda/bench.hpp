#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flda {

/// Median nanoseconds per operation for one sampler at one dimension.
struct BenchRecord {
  std::string sampler;  // lsearch | bsearch | alias | ftree
  int dimension = 0;
  double ns_build = 0.0;
  double ns_sample = 0.0;
  double ns_update = 0.0;
};

struct BenchConfig {
  std::vector<int> dimensions{64, 256, 1024, 4096};
  int trials = 5;           // medians taken over this many timed repeats
  int samples_per_trial = 20000;
  int updates_per_trial = 20000;
  std::uint64_t seed = 1;   // weight vectors: fixed power-law draws
};

/// Time build / sample / update for the four samplers. Weights are skewed
/// power-law draws standing in for topic-count profiles; one warm-up trial
/// is discarded. "Update" means the cheapest way each structure absorbs a
/// single-weight change: an O(1) adjustment for LSearch, a full rebuild for
/// BSearch and Alias, a leaf-to-root path for the F+tree.
std::vector<BenchRecord> bench_samplers(const BenchConfig& config);

}  // namespace flda
