#include "flda/conditional.hpp"

#include <cmath>

namespace flda {

std::vector<double> conditional_weights(const CountModel& model,
                                        std::int32_t doc, std::int32_t word) {
  const HyperParams& h = model.hyper;
  std::vector<double> p(h.num_topics);
  const SparseTopicCounts& ntd = model.doc_topic[doc];
  const SparseTopicCounts& ntw = model.word_topic[word];
  for (int t = 0; t < h.num_topics; ++t)
    p[t] = (ntd.get(t) + h.alpha) * (ntw.get(t) + h.beta) /
           (model.topic_total[t] + h.beta_bar);
  return p;
}

Decomposition decompose(const CountModel& model, std::int32_t doc,
                        std::int32_t word, DecompOrder order) {
  const HyperParams& h = model.hyper;
  const SparseTopicCounts& ntd = model.doc_topic[doc];
  const SparseTopicCounts& ntw = model.word_topic[word];

  Decomposition out;
  out.q.resize(h.num_topics);
  if (order == DecompOrder::Word) {
    out.coef = h.alpha;
    for (int t = 0; t < h.num_topics; ++t)
      out.q[t] = (ntw.get(t) + h.beta) / (model.topic_total[t] + h.beta_bar);
    for (const auto& [t, c] : ntd.entries()) {
      const double r = c * out.q[t];
      out.r.emplace_back(t, r);
      out.r_total += r;
    }
  } else {
    out.coef = h.beta;
    for (int t = 0; t < h.num_topics; ++t)
      out.q[t] = (ntd.get(t) + h.alpha) / (model.topic_total[t] + h.beta_bar);
    for (const auto& [t, c] : ntw.entries()) {
      const double r = c * out.q[t];
      out.r.emplace_back(t, r);
      out.r_total += r;
    }
  }
  return out;
}

int two_level_sample(double coef, const FTree& q_tree, const Cdf& r_cdf,
                     double u) {
  const double r_total = r_cdf.total();
  const double total = coef * q_tree.total() + r_total;
  if (!(u >= 0.0) || !(u < total))
    throw ContractViolationError("two_level_sample: u out of range");
  if (u <= r_total && r_total > 0.0) {
    // u == r_total sits on the closed edge of the sparse bucket; it belongs
    // to the last support slot.
    if (u == r_total) return r_cdf.support.empty()
                                 ? static_cast<int>(r_cdf.cum.size()) - 1
                                 : r_cdf.support.back();
    return bsearch_sample(r_cdf, u);
  }
  double v = (u - r_total) / coef;
  const double q_total = q_tree.total();
  if (v >= q_total) v = std::nextafter(q_total, 0.0);
  return q_tree.sample(v);
}

}  // namespace flda
