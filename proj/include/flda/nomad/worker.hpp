#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <vector>

#include "flda/corpus.hpp"
#include "flda/counts.hpp"
#include "flda/ftree.hpp"
#include "flda/nomad/queue.hpp"
#include "flda/nomad/router.hpp"
#include "flda/nomad/token.hpp"
#include "flda/trainer.hpp"

namespace flda::nomad {

/// Occurrence lists of one worker's document partition, word-major CSR:
/// token ids of word w owned by this worker are ids[begin[w] .. begin[w+1]),
/// ascending (doc, position).
struct WordIndex {
  std::vector<std::int64_t> begin;  // size J+1
  std::vector<std::int64_t> ids;
};

/// Channels and limits for one epoch run.
struct RunContext {
  std::vector<TokenQueue>* inboxes = nullptr;
  TokenQueue* collector = nullptr;
  std::atomic<bool>* stop = nullptr;
  int visits_target = 1;  // word token retires after this many visits
};

/// One sequential actor. Owns its document partition's n_td rows and z slots
/// (structurally: no other worker ever touches them), a local shadow s_l of
/// the global topic totals plus the snapshot from the sum token's last
/// visit, its RNG stream (seed stream 1+id, so worker 0 matches the serial
/// trainer), and the F+tree over the word-order base.
class Worker {
 public:
  Worker(int id, const Corpus& corpus, const HyperParams& hyper,
         WordIndex index, TopicAssignment* z,
         std::vector<SparseTopicCounts>* doc_topic,
         std::vector<std::int64_t> initial_totals, std::uint64_t seed,
         Routing routing, int num_workers);

  int id() const { return id_; }

  /// Rebuild the tree from the current shadow (epoch-boundary leaf refresh).
  void refresh_tree();

  /// Run this word's subtask over the locally owned occurrences: the exact
  /// serial word-order inner loop, with the token payload as n_tw and the
  /// local shadow as the global totals. Returns the mutated token.
  WordToken process_word_token(WordToken token);

  /// Fold unpublished local effort into the circulating totals:
  /// s += s_l - s_bar, then s_bar = s_l = s. Denominators that moved are
  /// refreshed in the tree lazily, on the next subtask.
  SumToken merge_sum_token(SumToken token);

  /// Adopt the quiesced totals as both shadow and snapshot.
  void sync_shadow(const std::vector<std::int64_t>& totals);

  const std::vector<std::int64_t>& local_shadow() const { return shadow_; }
  const std::vector<std::int64_t>& snapshot() const { return snapshot_; }

  /// Thread body: drain arrivals into the local job queue, pop one token,
  /// dispatch, send the result onward; on stop, flush owned tokens to the
  /// collector and exit.
  void run(const RunContext& ctx);

 private:
  void flush_dirty_leaves();

  int id_;
  const Corpus* corpus_;
  HyperParams hyper_;
  WordIndex index_;
  TopicAssignment* z_;
  std::vector<SparseTopicCounts>* doc_topic_;
  std::vector<std::int64_t> shadow_;    // s_l
  std::vector<std::int64_t> snapshot_;  // s-bar
  FTree tree_;
  RngStream rng_;
  Router router_;
  SweepScratch scratch_;
  std::vector<std::int32_t> dirty_;  // topics whose shadow moved at a merge
  std::vector<char> dirty_flag_;
};

}  // namespace flda::nomad
