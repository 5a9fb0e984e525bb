#pragma once

#include "flda/error.hpp"

namespace flda {

/// Symmetric Dirichlet priors. beta_bar caches J * beta and must be kept in
/// step with the vocabulary size.
struct HyperParams {
  double alpha = 0.0;
  double beta = 0.0;
  double beta_bar = 0.0;
  int num_topics = 0;

  static HyperParams make(int num_topics, double alpha, double beta,
                          int vocab_size) {
    if (num_topics < 1 || alpha <= 0.0 || beta <= 0.0 || vocab_size < 0)
      throw ContractViolationError("HyperParams: invalid values");
    return {alpha, beta, beta * vocab_size, num_topics};
  }

  void set_vocab_size(int vocab_size) { beta_bar = beta * vocab_size; }

  bool operator==(const HyperParams&) const = default;
};

}  // namespace flda
