#include "flda/trainer.hpp"

#include <algorithm>
#include <chrono>

namespace flda {

namespace {

void check_config(const TrainerConfig& config) {
  if (config.iterations < 1)
    throw ContractViolationError("train: iterations must be >= 1");
  if (config.mh_steps < 1)
    throw ContractViolationError("train: mh_steps must be >= 1");
  if (config.hyper.num_topics < 1 || config.hyper.alpha <= 0.0 ||
      config.hyper.beta <= 0.0)
    throw ContractViolationError("train: invalid hyperparameters");
}

// Sparse cumulative sum of r_t = count_t * tree.leaf(t) over a support,
// into reused buffers.
void build_r_cdf(const SparseTopicCounts& support, const FTree& tree,
                 Cdf& out) {
  out.clear();
  double prefix = 0.0;
  for (const auto& [t, c] : support.entries()) {
    prefix += c * tree.leaf(t);
    out.cum.push_back(prefix);
    out.support.push_back(t);
  }
}

void report_two_level_law(const StepObserver& observer, std::int64_t token_id,
                          double coef, const FTree& tree, const Cdf& r,
                          std::vector<double>& law) {
  law.assign(tree.size(), 0.0);
  for (int t = 0; t < tree.size(); ++t) law[t] = coef * tree.leaf(t);
  double prev = 0.0;
  for (std::size_t k = 0; k < r.cum.size(); ++k) {
    law[r.support[k]] += r.cum[k] - prev;
    prev = r.cum[k];
  }
  observer(token_id, law);
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::FldaWord: return "flda-word";
    case Algorithm::FldaDoc: return "flda-doc";
    case Algorithm::Sparse: return "sparse";
    case Algorithm::Alias: return "alias";
  }
  return "?";
}

void process_word_occurrences(std::span<const std::int64_t> occurrences,
                              const Corpus& corpus, TopicAssignment& z,
                              SparseTopicCounts& ntw,
                              std::vector<SparseTopicCounts>& doc_topic,
                              std::vector<std::int64_t>& nt, FTree& tree,
                              const HyperParams& hyper, RngStream& rng,
                              SweepScratch& scratch,
                              const StepObserver* observer) {
  if (occurrences.empty()) return;
  const double bb = hyper.beta_bar;

  // Stage this word's counts on top of the base leaves.
  for (const auto& [t, c] : ntw.entries()) tree.update(t, c / (nt[t] + bb));

  for (std::int64_t id : occurrences) {
    const std::int32_t d = corpus.token(id).doc;
    const std::int32_t t_old = z[id];
    SparseTopicCounts& ntd = doc_topic[d];

    ntd.decrement(t_old);
    ntw.decrement(t_old);
    if (nt[t_old] < 1)
      throw ConsistencyError("word sweep: global count underflow");
    --nt[t_old];
    tree.set_leaf(t_old, (ntw.get(t_old) + hyper.beta) / (nt[t_old] + bb));

    build_r_cdf(ntd, tree, scratch.r_cdf);
    if (observer)
      report_two_level_law(*observer, id, hyper.alpha, tree, scratch.r_cdf,
                           scratch.law);

    const double u =
        rng.uniform(hyper.alpha * tree.total() + scratch.r_cdf.total());
    const std::int32_t t_new =
        two_level_sample(hyper.alpha, tree, scratch.r_cdf, u);

    ntd.increment(t_new);
    ntw.increment(t_new);
    ++nt[t_new];
    tree.set_leaf(t_new, (ntw.get(t_new) + hyper.beta) / (nt[t_new] + bb));
    z[id] = t_new;
  }

  // Back to the base, with whatever counts the word now has.
  for (const auto& [t, c] : ntw.entries())
    tree.update(t, -static_cast<double>(c) / (nt[t] + bb));
}

void flda_word_epoch(const Corpus& corpus, TopicAssignment& z,
                     CountModel& model, RngStream& rng,
                     const StepObserver* observer) {
  const HyperParams& h = model.hyper;
  std::vector<double> base(h.num_topics);
  for (int t = 0; t < h.num_topics; ++t)
    base[t] = h.beta / (model.topic_total[t] + h.beta_bar);
  FTree tree{std::span<const double>(base)};

  SweepScratch scratch;
  for (std::int32_t w = 0; w < corpus.vocab_size(); ++w)
    process_word_occurrences(corpus.word_tokens(w), corpus, z,
                             model.word_topic[w], model.doc_topic,
                             model.topic_total, tree, h, rng, scratch,
                             observer);
}

void flda_doc_epoch(const Corpus& corpus, TopicAssignment& z,
                    CountModel& model, RngStream& rng,
                    const StepObserver* observer) {
  const HyperParams& h = model.hyper;
  const double bb = h.beta_bar;
  std::vector<std::int64_t>& nt = model.topic_total;

  std::vector<double> base(h.num_topics);
  for (int t = 0; t < h.num_topics; ++t) base[t] = h.alpha / (nt[t] + bb);
  FTree tree{std::span<const double>(base)};

  SweepScratch scratch;
  for (std::int32_t d = 0; d < corpus.num_docs(); ++d) {
    if (corpus.doc_length(d) == 0) continue;
    SparseTopicCounts& ntd = model.doc_topic[d];

    for (const auto& [t, c] : ntd.entries()) tree.update(t, c / (nt[t] + bb));

    for (std::int64_t id : corpus.doc_tokens(d)) {
      const std::int32_t w = corpus.token(id).word;
      const std::int32_t t_old = z[id];
      SparseTopicCounts& ntw = model.word_topic[w];

      ntd.decrement(t_old);
      ntw.decrement(t_old);
      if (nt[t_old] < 1)
        throw ConsistencyError("doc sweep: global count underflow");
      --nt[t_old];
      tree.set_leaf(t_old, (ntd.get(t_old) + h.alpha) / (nt[t_old] + bb));

      build_r_cdf(ntw, tree, scratch.r_cdf);
      if (observer)
        report_two_level_law(*observer, id, h.beta, tree, scratch.r_cdf,
                             scratch.law);

      const double u =
          rng.uniform(h.beta * tree.total() + scratch.r_cdf.total());
      const std::int32_t t_new =
          two_level_sample(h.beta, tree, scratch.r_cdf, u);

      ntd.increment(t_new);
      ntw.increment(t_new);
      ++nt[t_new];
      tree.set_leaf(t_new, (ntd.get(t_new) + h.alpha) / (nt[t_new] + bb));
      z[id] = t_new;
    }

    for (const auto& [t, c] : ntd.entries())
      tree.update(t, -static_cast<double>(c) / (nt[t] + bb));
  }
}

void sparse_lda_epoch(const Corpus& corpus, TopicAssignment& z,
                      CountModel& model, RngStream& rng,
                      const StepObserver* observer) {
  const HyperParams& h = model.hyper;
  const double bb = h.beta_bar;
  const int T = h.num_topics;
  std::vector<std::int64_t>& nt = model.topic_total;

  // Smoothing bucket, maintained incrementally as n_t moves.
  std::vector<double> smooth(T);
  double smooth_sum = 0.0;
  for (int t = 0; t < T; ++t) {
    smooth[t] = h.alpha * h.beta / (nt[t] + bb);
    smooth_sum += smooth[t];
  }
  auto refresh_smooth = [&](int t) {
    smooth_sum -= smooth[t];
    smooth[t] = h.alpha * h.beta / (nt[t] + bb);
    smooth_sum += smooth[t];
  };

  std::vector<double> word_bucket, doc_bucket, law;
  for (std::int32_t d = 0; d < corpus.num_docs(); ++d) {
    const SparseTopicCounts& ntd = model.doc_topic[d];
    for (std::int64_t id : corpus.doc_tokens(d)) {
      const std::int32_t w = corpus.token(id).word;
      const std::int32_t t_old = z[id];
      const SparseTopicCounts& ntw = model.word_topic[w];

      remove_token(model, d, w, t_old);
      refresh_smooth(t_old);

      word_bucket.clear();
      double word_sum = 0.0;
      for (const auto& [t, c] : ntw.entries()) {
        const double v = c * (ntd.get(t) + h.alpha) / (nt[t] + bb);
        word_bucket.push_back(v);
        word_sum += v;
      }
      doc_bucket.clear();
      double doc_sum = 0.0;
      for (const auto& [t, c] : ntd.entries()) {
        const double v = h.beta * c / (nt[t] + bb);
        doc_bucket.push_back(v);
        doc_sum += v;
      }

      if (observer) {
        law.assign(T, 0.0);
        for (int t = 0; t < T; ++t) law[t] = smooth[t];
        std::size_t k = 0;
        for (const auto& [t, c] : ntw.entries()) law[t] += word_bucket[k++];
        k = 0;
        for (const auto& [t, c] : ntd.entries()) law[t] += doc_bucket[k++];
        (*observer)(id, law);
      }

      double u = rng.uniform(word_sum + doc_sum + smooth_sum);
      std::int32_t t_new = -1;
      if (u < word_sum) {
        std::size_t k = 0;
        for (; k + 1 < word_bucket.size(); ++k) {
          u -= word_bucket[k];
          if (u < 0.0) break;
        }
        t_new = ntw.entries()[k].first;
      } else {
        u -= word_sum;
        if (u < doc_sum) {
          std::size_t k = 0;
          for (; k + 1 < doc_bucket.size(); ++k) {
            u -= doc_bucket[k];
            if (u < 0.0) break;
          }
          t_new = ntd.entries()[k].first;
        } else {
          u -= doc_sum;
          t_new = T - 1;
          for (int t = 0; t < T; ++t) {
            u -= smooth[t];
            if (u < 0.0) {
              t_new = t;
              break;
            }
          }
        }
      }

      add_token(model, d, w, t_new);
      refresh_smooth(t_new);
      z[id] = t_new;
    }
  }
}

void cache_force_build(AliasProposalCache& cache, const CountModel& model,
                       std::int32_t word, int budget) {
  auto& entry = cache.words_[word];
  const HyperParams& h = model.hyper;
  entry.weights.resize(h.num_topics);
  entry.total = 0.0;
  for (int t = 0; t < h.num_topics; ++t) {
    entry.weights[t] = h.alpha * (model.word_topic[word].get(t) + h.beta) /
                       (model.topic_total[t] + h.beta_bar);
    entry.total += entry.weights[t];
  }
  entry.table = alias_build(entry.weights);
  entry.draws_left = budget;
}

std::int32_t alias_mh_resample(const CountModel& model, std::int32_t doc,
                               std::int32_t word, std::int32_t t_cur,
                               AliasProposalCache& cache, int mh_steps,
                               RngStream& rng, SweepScratch& scratch) {
  const HyperParams& h = model.hyper;
  const double bb = h.beta_bar;
  const SparseTopicCounts& ntd = model.doc_topic[doc];
  const SparseTopicCounts& ntw = model.word_topic[word];
  const std::vector<std::int64_t>& nt = model.topic_total;

  // Fresh sparse proposal part on the doc support; constant over the chain
  // because the token is out of the counts.
  Cdf& fresh = scratch.r_cdf;
  fresh.clear();
  double prefix = 0.0;
  for (const auto& [t, c] : ntd.entries()) {
    prefix += c * (ntw.get(t) + h.beta) / (nt[t] + bb);
    fresh.cum.push_back(prefix);
    fresh.support.push_back(t);
  }
  const double fresh_total = fresh.total();

  auto& entry = cache.words_[word];
  const auto true_weight = [&](std::int32_t t) {
    return (ntd.get(t) + h.alpha) * (ntw.get(t) + h.beta) / (nt[t] + bb);
  };
  const auto proposal_weight = [&](std::int32_t t) {
    return entry.weights[t] +
           ntd.get(t) * (ntw.get(t) + h.beta) / (nt[t] + bb);
  };

  for (int step = 0; step < mh_steps; ++step) {
    if (entry.draws_left <= 0)
      cache_force_build(cache, model, word, cache.rebuild_budget_);

    const double u = rng.uniform(fresh_total + entry.total);
    std::int32_t t_prop;
    if (u < fresh_total) {
      t_prop = bsearch_sample(fresh, u);
    } else {
      t_prop = alias_sample(entry.table,
                            rng.uniform(static_cast<double>(h.num_topics)));
      --entry.draws_left;
    }

    if (t_prop == t_cur) continue;
    const double ratio = (true_weight(t_prop) * proposal_weight(t_cur)) /
                         (true_weight(t_cur) * proposal_weight(t_prop));
    if (rng.uniform01() < ratio) t_cur = t_prop;
  }
  return t_cur;
}

void alias_lda_epoch(const Corpus& corpus, TopicAssignment& z,
                     CountModel& model, RngStream& rng,
                     AliasProposalCache& cache, int mh_steps) {
  SweepScratch scratch;
  for (std::int32_t d = 0; d < corpus.num_docs(); ++d) {
    for (std::int64_t id : corpus.doc_tokens(d)) {
      const std::int32_t w = corpus.token(id).word;
      const std::int32_t t_old = z[id];
      remove_token(model, d, w, t_old);
      const std::int32_t t_new =
          alias_mh_resample(model, d, w, t_old, cache, mh_steps, rng, scratch);
      add_token(model, d, w, t_new);
      z[id] = t_new;
    }
  }
}

TrainResult train(const Corpus& corpus, const TrainerConfig& config) {
  check_config(config);
  HyperParams hyper = config.hyper;
  hyper.set_vocab_size(corpus.vocab_size());
  auto [z, model] = init_assignments(corpus, hyper, config.seed);
  return train_from(corpus, config, std::move(z), std::move(model));
}

TrainResult train_from(const Corpus& corpus, const TrainerConfig& config,
                       TopicAssignment z, CountModel model) {
  check_config(config);
  model.hyper.set_vocab_size(corpus.vocab_size());

  RngStream rng(config.seed, 1);
  AliasProposalCache cache(corpus.vocab_size(), config.hyper.num_topics);

  TrainResult out;
  out.trace.reserve(config.iterations);
  for (int iter = 1; iter <= config.iterations; ++iter) {
    const auto start = std::chrono::steady_clock::now();
    switch (config.algorithm) {
      case Algorithm::FldaWord:
        flda_word_epoch(corpus, z, model, rng);
        break;
      case Algorithm::FldaDoc:
        flda_doc_epoch(corpus, z, model, rng);
        break;
      case Algorithm::Sparse:
        sparse_lda_epoch(corpus, z, model, rng);
        break;
      case Algorithm::Alias:
        alias_lda_epoch(corpus, z, model, rng, cache, config.mh_steps);
        break;
    }
    const double dt = std::max(
        1e-9, std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count());
    out.trace.push_back({iter, joint_log_likelihood(model), dt,
                         static_cast<double>(corpus.num_tokens()) / dt});
  }
  out.z = std::move(z);
  out.model = std::move(model);
  return out;
}

}  // namespace flda
