#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "flda/conditional.hpp"
#include "flda/corpus.hpp"
#include "flda/counts.hpp"
#include "flda/ftree.hpp"
#include "flda/likelihood.hpp"
#include "flda/rng.hpp"
#include "flda/samplers.hpp"

namespace flda {

enum class Algorithm { FldaWord, FldaDoc, Sparse, Alias };

const char* algorithm_name(Algorithm a);

struct TrainerConfig {
  Algorithm algorithm = Algorithm::FldaWord;
  int iterations = 1;
  int mh_steps = 2;  // AliasLDA only
  std::uint64_t seed = 0;
  HyperParams hyper;
};

struct TraceRecord {
  int iteration = 0;
  double loglik = 0.0;
  double seconds = 0.0;
  double tokens_per_sec = 0.0;
};

using TrainTrace = std::vector<TraceRecord>;

struct TrainResult {
  TopicAssignment z;
  CountModel model;
  TrainTrace trace;
};

/// Test/diagnostic hook. Fires once per token right before the draw, with the
/// token's counts removed, reporting the exact per-topic measure of u-space
/// the pending draw realizes (dense, length T). Never fires for AliasLDA,
/// whose per-step law is approximate by design.
using StepObserver =
    std::function<void(std::int64_t token_id, const std::vector<double>& law)>;

/// Reusable per-sweep buffers.
struct SweepScratch {
  Cdf r_cdf;
  std::vector<double> law;
  std::vector<double> bucket;
};

/// Algorithm-3 inner loop over the given occurrences of one word. `tree`
/// must carry the word-order base leaves beta / (nt[t] + beta_bar) on entry
/// and is restored to the (updated) base on exit. Counts are passed as views
/// so the serial sweep and a nomad worker run the identical code path:
/// `ntw` is the word's topic counts (model row or token payload), `nt` the
/// global totals (model totals or the worker's local shadow).
void process_word_occurrences(std::span<const std::int64_t> occurrences,
                              const Corpus& corpus, TopicAssignment& z,
                              SparseTopicCounts& ntw,
                              std::vector<SparseTopicCounts>& doc_topic,
                              std::vector<std::int64_t>& nt, FTree& tree,
                              const HyperParams& hyper, RngStream& rng,
                              SweepScratch& scratch,
                              const StepObserver* observer = nullptr);

/// One full sweep in word-major order (F+LDA word). Builds its F+tree over
/// the base q_t = beta / (n_t + beta_bar) at entry, which doubles as the
/// once-per-iteration drift flush.
void flda_word_epoch(const Corpus& corpus, TopicAssignment& z,
                     CountModel& model, RngStream& rng,
                     const StepObserver* observer = nullptr);

/// One full sweep in document-major order (F+LDA doc); tree over
/// q_t = (n_td + alpha) / (n_t + beta_bar), sparse part on the word support.
void flda_doc_epoch(const Corpus& corpus, TopicAssignment& z,
                    CountModel& model, RngStream& rng,
                    const StepObserver* observer = nullptr);

/// SparseLDA three-bucket sweep (smoothing + doc + word), document order.
void sparse_lda_epoch(const Corpus& corpus, TopicAssignment& z,
                      CountModel& model, RngStream& rng,
                      const StepObserver* observer = nullptr);

/// Cached stale proposal tables for AliasLDA, one per word. A table serves
/// `rebuild_budget` draws before it is rebuilt from current counts.
class AliasProposalCache {
 public:
  AliasProposalCache(std::int32_t vocab_size, int rebuild_budget)
      : words_(vocab_size), rebuild_budget_(rebuild_budget) {}

  /// Stale unnormalized proposal value at `topic`, building on first use.
  double stale_weight(std::int32_t word, std::int32_t topic) const {
    return words_[word].weights.empty() ? 0.0 : words_[word].weights[topic];
  }

  double stale_total(std::int32_t word) const { return words_[word].total; }

 private:
  friend std::int32_t alias_mh_resample(const CountModel&, std::int32_t,
                                        std::int32_t, std::int32_t,
                                        AliasProposalCache&, int, RngStream&,
                                        SweepScratch&);
  friend void cache_force_build(AliasProposalCache&, const CountModel&,
                                std::int32_t, int);

  struct Entry {
    AliasTable table;
    std::vector<double> weights;  // alpha * (n_tw + beta) / (n_t + beta_bar)
    double total = 0.0;
    int draws_left = 0;
  };

  std::vector<Entry> words_;
  int rebuild_budget_;
};

/// Rebuild word's proposal now and pin its budget (test hook for forcing a
/// stale table).
void cache_force_build(AliasProposalCache& cache, const CountModel& model,
                       std::int32_t word, int budget);

/// One AliasLDA Metropolis-Hastings resample of a token at (doc, word) whose
/// counts are already removed; `t_cur` is its previous topic. Proposal mass
/// is the stale cached table plus a fresh sparse part on the doc support;
/// each of `mh_steps` proposals is accepted with
/// min(1, p(t') prop(t) / (p(t) prop(t'))) against the exact conditional p.
std::int32_t alias_mh_resample(const CountModel& model, std::int32_t doc,
                               std::int32_t word, std::int32_t t_cur,
                               AliasProposalCache& cache, int mh_steps,
                               RngStream& rng, SweepScratch& scratch);

/// AliasLDA sweep, document order.
void alias_lda_epoch(const Corpus& corpus, TopicAssignment& z,
                     CountModel& model, RngStream& rng,
                     AliasProposalCache& cache, int mh_steps);

/// Initialize from seed and run config.iterations epochs of the selected
/// algorithm, recording likelihood and throughput per iteration.
/// Deterministic given (corpus, config), timing columns aside.
TrainResult train(const Corpus& corpus, const TrainerConfig& config);

/// Same, but resuming from an existing state (checkpoint continuation).
TrainResult train_from(const Corpus& corpus, const TrainerConfig& config,
                       TopicAssignment z, CountModel model);

}  // namespace flda
