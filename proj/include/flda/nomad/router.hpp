#pragma once

#include <cstdint>

#include "flda/error.hpp"
#include "flda/rng.hpp"

namespace flda::nomad {

enum class Routing { Ring, UniformRandom };

/// Picks the next worker for an outgoing token. Ring is deterministic
/// (l -> l+1 mod p); UniformRandom draws any worker other than the sender.
/// One Router per worker so no stream is shared.
class Router {
 public:
  Router(Routing policy, int num_workers, std::uint64_t seed, int owner)
      : policy_(policy),
        num_workers_(num_workers),
        rng_(seed, (std::uint64_t{1} << 32) + static_cast<std::uint64_t>(owner)) {
    if (num_workers < 1)
      throw ContractViolationError("Router: need at least one worker");
  }

  int next(int from) {
    if (num_workers_ == 1) return 0;
    if (policy_ == Routing::Ring) return (from + 1) % num_workers_;
    const int pick = static_cast<int>(
        rng_.uniform_below(static_cast<std::uint64_t>(num_workers_ - 1)));
    return pick >= from ? pick + 1 : pick;
  }

  Routing policy() const { return policy_; }
  int num_workers() const { return num_workers_; }

 private:
  Routing policy_;
  int num_workers_;
  RngStream rng_;
};

}  // namespace flda::nomad
