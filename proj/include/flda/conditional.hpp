#pragma once

#include <cstdint>
#include <vector>

#include "flda/counts.hpp"
#include "flda/ftree.hpp"
#include "flda/samplers.hpp"

namespace flda {

/// Full conditional of one token at (doc, word), which must already be
/// removed from the counts:
///   p_t = (n_td + alpha) * (n_tw + beta) / (n_t + beta_bar)
std::vector<double> conditional_weights(const CountModel& model,
                                        std::int32_t doc, std::int32_t word);

enum class DecompOrder { Doc, Word };

/// p = coef * q + r with q dense and r sparse.
///   Doc order:  coef = beta,  q_t = (n_td + alpha) / (n_t + beta_bar),
///               r_t = n_tw * q_t on the word's support.
///   Word order: coef = alpha, q_t = (n_tw + beta) / (n_t + beta_bar),
///               r_t = n_td * q_t on the document's support.
struct Decomposition {
  double coef = 0.0;
  std::vector<double> q;                                   // dense, length T
  std::vector<std::pair<std::int32_t, double>> r;          // sparse
  double r_total = 0.0;
};

Decomposition decompose(const CountModel& model, std::int32_t doc,
                        std::int32_t word, DecompOrder order);

/// Two-level draw over total mass coef * q_tree.total() + r_cdf.total():
/// u <= r mass goes to the sparse part by binary search, the rest to the
/// F+tree rescaled by 1/coef.
int two_level_sample(double coef, const FTree& q_tree, const Cdf& r_cdf,
                     double u);

}  // namespace flda
