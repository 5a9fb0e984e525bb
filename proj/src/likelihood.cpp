#include "flda/likelihood.hpp"

#include <cmath>

namespace flda {

double joint_log_likelihood(const CountModel& model) {
  const HyperParams& h = model.hyper;
  const double alpha_bar = h.alpha * h.num_topics;
  const double lg_alpha = std::lgamma(h.alpha);
  const double lg_beta = std::lgamma(h.beta);

  // Document side. The dense sum over topics collapses to the sparse support
  // because each zero-count topic contributes exactly lnG(alpha).
  double doc_part = 0.0;
  for (const SparseTopicCounts& row : model.doc_topic) {
    const std::int64_t n_d = row.total();
    double sum = 0.0;
    for (const auto& [t, c] : row.entries())
      sum += std::lgamma(c + h.alpha) - lg_alpha;
    doc_part += sum + std::lgamma(alpha_bar) - std::lgamma(n_d + alpha_bar);
  }

  // Word side, mirrored: zero-count (t, w) cells contribute lnG(beta). An
  // empty vocabulary has no word side at all (and lnG(0) would blow up).
  double word_part = 0.0;
  if (!model.word_topic.empty()) {
    for (const SparseTopicCounts& row : model.word_topic)
      for (const auto& [t, c] : row.entries())
        word_part += std::lgamma(c + h.beta) - lg_beta;
    for (int t = 0; t < h.num_topics; ++t)
      word_part += std::lgamma(h.beta_bar) -
                   std::lgamma(model.topic_total[t] + h.beta_bar);
  }

  return doc_part + word_part;
}

}  // namespace flda
