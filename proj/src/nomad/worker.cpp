#include "flda/nomad/worker.hpp"

#include <algorithm>

namespace flda::nomad {

Worker::Worker(int id, const Corpus& corpus, const HyperParams& hyper,
               WordIndex index, TopicAssignment* z,
               std::vector<SparseTopicCounts>* doc_topic,
               std::vector<std::int64_t> initial_totals, std::uint64_t seed,
               Routing routing, int num_workers)
    : id_(id),
      corpus_(&corpus),
      hyper_(hyper),
      index_(std::move(index)),
      z_(z),
      doc_topic_(doc_topic),
      shadow_(std::move(initial_totals)),
      snapshot_(shadow_),
      tree_(hyper.num_topics),
      rng_(seed, 1 + static_cast<std::uint64_t>(id)),
      router_(routing, num_workers, seed, id),
      dirty_flag_(hyper.num_topics, 0) {
  refresh_tree();
}

void Worker::refresh_tree() {
  std::vector<double> base(hyper_.num_topics);
  for (int t = 0; t < hyper_.num_topics; ++t)
    base[t] = hyper_.beta / (shadow_[t] + hyper_.beta_bar);
  tree_.assign(base);
  dirty_.clear();
  std::fill(dirty_flag_.begin(), dirty_flag_.end(), 0);
}

void Worker::flush_dirty_leaves() {
  for (std::int32_t t : dirty_) {
    tree_.set_leaf(t, hyper_.beta / (shadow_[t] + hyper_.beta_bar));
    dirty_flag_[t] = 0;
  }
  dirty_.clear();
}

WordToken Worker::process_word_token(WordToken token) {
  flush_dirty_leaves();
  const std::int32_t w = token.word;
  const std::span<const std::int64_t> occ{
      index_.ids.data() + index_.begin[w],
      index_.ids.data() + index_.begin[w + 1]};
  process_word_occurrences(occ, *corpus_, *z_, token.counts, *doc_topic_,
                           shadow_, tree_, hyper_, rng_, scratch_);
  return token;
}

SumToken Worker::merge_sum_token(SumToken token) {
  const int T = hyper_.num_topics;
  if (static_cast<int>(token.totals.size()) != T)
    throw ConsistencyError("merge_sum_token: dimension mismatch");
  const std::vector<std::int64_t> before = shadow_;
  merge_totals(token.totals, shadow_, snapshot_);
  for (int t = 0; t < T; ++t)
    if (before[t] != shadow_[t] && !dirty_flag_[t]) {
      dirty_flag_[t] = 1;
      dirty_.push_back(t);
    }
  return token;
}

void Worker::sync_shadow(const std::vector<std::int64_t>& totals) {
  for (int t = 0; t < hyper_.num_topics; ++t) {
    if (shadow_[t] != totals[t] && !dirty_flag_[t]) {
      dirty_flag_[t] = 1;
      dirty_.push_back(t);
    }
  }
  shadow_ = totals;
  snapshot_ = totals;
}

void Worker::run(const RunContext& ctx) {
  TokenQueue& inbox = (*ctx.inboxes)[id_];
  std::deque<Token> jobs;

  for (;;) {
    // Algorithm discipline: fold every arrival into the local job queue
    // before popping one, so a circulating sum token is never starved.
    while (auto t = inbox.try_pop()) jobs.push_back(std::move(*t));
    if (ctx.stop->load()) break;
    if (jobs.empty()) {
      auto t = inbox.pop_wait(*ctx.stop);
      if (!t) break;  // stop raised while idle
      jobs.push_back(std::move(*t));
      continue;
    }

    Token token = std::move(jobs.front());
    jobs.pop_front();
    if (auto* sum = std::get_if<SumToken>(&token)) {
      SumToken out = merge_sum_token(std::move(*sum));
      (*ctx.inboxes)[router_.next(id_)].push(std::move(out));
    } else {
      WordToken word = process_word_token(std::move(std::get<WordToken>(token)));
      ++word.visits;
      if (word.visits >= ctx.visits_target)
        ctx.collector->push(std::move(word));
      else
        (*ctx.inboxes)[router_.next(id_)].push(std::move(word));
    }
  }

  // Stop: flush everything this worker still owns.
  while (!jobs.empty()) {
    ctx.collector->push(std::move(jobs.front()));
    jobs.pop_front();
  }
  while (auto t = inbox.try_pop()) ctx.collector->push(std::move(*t));
}

}  // namespace flda::nomad
