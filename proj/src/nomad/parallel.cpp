#include "flda/nomad/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <numeric>
#include <thread>

#include "flda/likelihood.hpp"

namespace flda::nomad {

std::vector<std::vector<std::int32_t>> partition_corpus(const Corpus& corpus,
                                                        int p) {
  if (p < 1) throw ContractViolationError("partition_corpus: p must be >= 1");

  std::vector<std::int32_t> order(corpus.num_docs());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int32_t a, std::int32_t b) {
                     return corpus.doc_length(a) > corpus.doc_length(b);
                   });

  std::vector<std::vector<std::int32_t>> bins(p);
  std::vector<std::int64_t> load(p, 0);
  for (std::int32_t d : order) {
    int best = 0;
    for (int l = 1; l < p; ++l)
      if (load[l] < load[best]) best = l;
    bins[best].push_back(d);
    load[best] += corpus.doc_length(d);
  }
  for (auto& bin : bins) std::sort(bin.begin(), bin.end());
  return bins;
}

std::vector<std::int32_t> partition_owners(
    const std::vector<std::vector<std::int32_t>>& partition,
    std::int32_t num_docs) {
  std::vector<std::int32_t> owners(num_docs, -1);
  for (std::size_t l = 0; l < partition.size(); ++l)
    for (std::int32_t d : partition[l]) {
      if (d < 0 || d >= num_docs || owners[d] != -1)
        throw ConsistencyError("partition_owners: not a disjoint cover");
      owners[d] = static_cast<std::int32_t>(l);
    }
  for (std::int32_t d = 0; d < num_docs; ++d)
    if (owners[d] == -1)
      throw ConsistencyError("partition_owners: uncovered document");
  return owners;
}

std::vector<WordIndex> build_word_indexes(
    const Corpus& corpus, const std::vector<std::int32_t>& owners, int p) {
  const std::int32_t J = corpus.vocab_size();
  std::vector<WordIndex> idx(p);
  for (auto& wi : idx) wi.begin.assign(J + 1, 0);

  for (std::int32_t w = 0; w < J; ++w)
    for (std::int64_t id : corpus.word_tokens(w))
      ++idx[owners[corpus.token(id).doc]].begin[w + 1];
  for (auto& wi : idx) {
    for (std::int32_t w = 0; w < J; ++w) wi.begin[w + 1] += wi.begin[w];
    wi.ids.resize(wi.begin[J]);
  }
  std::vector<std::vector<std::int64_t>> cursor(p);
  for (int l = 0; l < p; ++l)
    cursor[l].assign(idx[l].begin.begin(), idx[l].begin.end() - 1);
  for (std::int32_t w = 0; w < J; ++w)
    for (std::int64_t id : corpus.word_tokens(w)) {
      const int l = owners[corpus.token(id).doc];
      idx[l].ids[cursor[l][w]++] = id;
    }
  return idx;
}

CountModel snapshot_counts(const HyperParams& hyper,
                           const std::vector<SparseTopicCounts>& doc_topic,
                           const std::vector<WordToken>& word_tokens,
                           const SumToken& sum) {
  CountModel model;
  model.hyper = hyper;
  model.doc_topic = doc_topic;
  model.word_topic.resize(word_tokens.size());
  for (const WordToken& tok : word_tokens) {
    if (tok.word < 0 ||
        tok.word >= static_cast<std::int32_t>(word_tokens.size()))
      throw ConsistencyError("snapshot_counts: word id out of range");
    model.word_topic[tok.word] = tok.counts;
  }
  model.topic_total = sum.totals;

  const int T = hyper.num_topics;
  std::vector<std::int64_t> from_docs(T, 0), from_words(T, 0);
  for (const auto& row : model.doc_topic)
    for (const auto& [t, c] : row.entries()) from_docs[t] += c;
  for (const auto& row : model.word_topic)
    for (const auto& [t, c] : row.entries()) from_words[t] += c;
  for (int t = 0; t < T; ++t)
    if (from_docs[t] != sum.totals[t] || from_words[t] != sum.totals[t])
      throw ConsistencyError(
          "snapshot_counts: doc/word/sum columns disagree at quiescence");
  return model;
}

namespace {

// Deal order: descending global frequency balances the initial load; each
// worker's share is then queued ascending by word id, which is what makes
// the p = 1 run replay the serial sweep order.
std::vector<std::vector<std::int32_t>> deal_words(const Corpus& corpus,
                                                  int p) {
  std::vector<std::int32_t> order(corpus.vocab_size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int32_t a, std::int32_t b) {
                     return corpus.word_frequency(a) > corpus.word_frequency(b);
                   });
  std::vector<std::vector<std::int32_t>> hands(p);
  for (std::size_t i = 0; i < order.size(); ++i)
    hands[i % p].push_back(order[i]);
  for (auto& hand : hands) std::sort(hand.begin(), hand.end());
  return hands;
}

}  // namespace

TrainResult run_parallel(const Corpus& corpus, const TrainerConfig& config,
                         int p, Routing routing) {
  if (p < 1) throw ContractViolationError("run_parallel: p must be >= 1");
  if (config.iterations < 1)
    throw ContractViolationError("run_parallel: iterations must be >= 1");
  if (config.algorithm != Algorithm::FldaWord)
    throw ContractViolationError(
        "run_parallel: the nomad framework runs word-order F+LDA");

  HyperParams hyper = config.hyper;
  hyper.set_vocab_size(corpus.vocab_size());
  const std::int32_t J = corpus.vocab_size();

  auto [z, model] = init_assignments(corpus, hyper, config.seed);
  std::vector<SparseTopicCounts> doc_topic = std::move(model.doc_topic);

  std::vector<WordToken> tokens(J);
  for (std::int32_t w = 0; w < J; ++w)
    tokens[w] = WordToken{w, std::move(model.word_topic[w]), 0};
  SumToken sum{model.topic_total};

  const auto partition = partition_corpus(corpus, p);
  const auto owners = partition_owners(partition, corpus.num_docs());
  auto indexes = build_word_indexes(corpus, owners, p);

  std::vector<std::unique_ptr<Worker>> workers;
  workers.reserve(p);
  for (int l = 0; l < p; ++l)
    workers.push_back(std::make_unique<Worker>(
        l, corpus, hyper, std::move(indexes[l]), &z, &doc_topic,
        model.topic_total, config.seed, routing, p));

  const auto hands = deal_words(corpus, p);

  TrainResult out;
  out.trace.reserve(config.iterations);
  CountModel snapshot;

  for (int epoch = 1; epoch <= config.iterations; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    for (auto& w : workers) w->refresh_tree();

    std::vector<TokenQueue> inboxes(p);
    TokenQueue collector;
    std::atomic<bool> stop{false};

    // Sum token enters at worker 0, then each worker's hand in word order.
    inboxes[0].push(std::move(sum));
    {
      std::vector<WordToken> by_word(J);
      for (auto& tok : tokens) {
        tok.visits = 0;
        by_word[tok.word] = std::move(tok);
      }
      for (int l = 0; l < p; ++l)
        for (std::int32_t w : hands[l])
          inboxes[l].push(std::move(by_word[w]));
    }

    RunContext ctx{&inboxes, &collector, &stop, p};
    std::vector<std::thread> threads;
    threads.reserve(p);
    for (auto& w : workers)
      threads.emplace_back([&ctx, worker = w.get()] { worker->run(ctx); });

    collector.wait_size(static_cast<std::size_t>(J));
    stop.store(true);
    for (auto& q : inboxes) q.kick();
    for (auto& t : threads) t.join();

    // Reassemble: every word token exactly once plus the sum token.
    tokens.clear();
    tokens.resize(J);
    std::vector<char> seen(J, 0);
    bool have_sum = false;
    const auto absorb = [&](Token&& token) {
      if (auto* wt = std::get_if<WordToken>(&token)) {
        if (seen[wt->word])
          throw ConsistencyError("run_parallel: duplicate word token");
        seen[wt->word] = 1;
        tokens[wt->word] = std::move(*wt);
      } else {
        if (have_sum)
          throw ConsistencyError("run_parallel: duplicate sum token");
        have_sum = true;
        sum = std::move(std::get<SumToken>(token));
      }
    };
    while (auto t = collector.try_pop()) absorb(std::move(*t));
    for (auto& q : inboxes)
      while (auto t = q.try_pop()) absorb(std::move(*t));
    if (!have_sum) throw ConsistencyError("run_parallel: sum token lost");
    for (std::int32_t w = 0; w < J; ++w)
      if (!seen[w]) throw ConsistencyError("run_parallel: word token lost");

    // Quiesce: one merge lap publishes every shadow into the totals, one
    // sync lap hands the quiesced totals back.
    for (auto& w : workers) sum = w->merge_sum_token(std::move(sum));
    for (auto& w : workers) w->sync_shadow(sum.totals);

    snapshot = snapshot_counts(hyper, doc_topic, tokens, sum);
    const double dt = std::max(
        1e-9, std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count());
    out.trace.push_back({epoch, joint_log_likelihood(snapshot), dt,
                         static_cast<double>(corpus.num_tokens()) / dt});
  }

  out.z = std::move(z);
  out.model = std::move(snapshot);
  return out;
}

}  // namespace flda::nomad
