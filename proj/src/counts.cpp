#include "flda/counts.hpp"

#include "flda/rng.hpp"

namespace flda {

std::pair<TopicAssignment, CountModel> init_assignments(
    const Corpus& corpus, const HyperParams& hyper, std::uint64_t seed) {
  if (hyper.num_topics < 1)
    throw ContractViolationError("init_assignments: need at least one topic");

  RngStream rng(seed, 0);
  TopicAssignment z(corpus.num_tokens());
  for (std::int64_t i = 0; i < corpus.num_tokens(); ++i)
    z[i] = static_cast<std::int32_t>(
        rng.uniform_below(static_cast<std::uint64_t>(hyper.num_topics)));
  return {z, recount(corpus, z, hyper)};
}

void remove_token(CountModel& model, std::int32_t doc, std::int32_t word,
                  std::int32_t topic) {
  if (model.topic_total[topic] < 1)
    throw ConsistencyError("remove_token: global count underflow");
  model.doc_topic[doc].decrement(topic);
  model.word_topic[word].decrement(topic);
  --model.topic_total[topic];
}

void add_token(CountModel& model, std::int32_t doc, std::int32_t word,
               std::int32_t topic) {
  model.doc_topic[doc].increment(topic);
  model.word_topic[word].increment(topic);
  ++model.topic_total[topic];
}

CountModel recount(const Corpus& corpus, const TopicAssignment& z,
                   const HyperParams& hyper) {
  if (static_cast<std::int64_t>(z.size()) != corpus.num_tokens())
    throw ContractViolationError("recount: z length mismatch");

  CountModel model;
  model.hyper = hyper;
  model.hyper.set_vocab_size(corpus.vocab_size());
  model.doc_topic.resize(corpus.num_docs());
  model.word_topic.resize(corpus.vocab_size());
  model.topic_total.assign(hyper.num_topics, 0);

  for (std::int64_t i = 0; i < corpus.num_tokens(); ++i) {
    const Token& tok = corpus.token(i);
    const std::int32_t t = z[i];
    if (t < 0 || t >= hyper.num_topics)
      throw ContractViolationError("recount: topic out of range");
    model.doc_topic[tok.doc].increment(t);
    model.word_topic[tok.word].increment(t);
    ++model.topic_total[t];
  }
  return model;
}

void check_count_invariants(const CountModel& model, std::int64_t num_tokens) {
  const int T = model.hyper.num_topics;
  std::vector<std::int64_t> from_docs(T, 0), from_words(T, 0);
  for (const auto& row : model.doc_topic)
    for (const auto& [t, c] : row.entries()) {
      if (c <= 0) throw ConsistencyError("count invariant: empty doc entry");
      from_docs[t] += c;
    }
  for (const auto& row : model.word_topic)
    for (const auto& [t, c] : row.entries()) {
      if (c <= 0) throw ConsistencyError("count invariant: empty word entry");
      from_words[t] += c;
    }
  std::int64_t grand = 0;
  for (int t = 0; t < T; ++t) {
    if (from_docs[t] != model.topic_total[t] ||
        from_words[t] != model.topic_total[t])
      throw ConsistencyError("count invariant: column sums disagree");
    grand += model.topic_total[t];
  }
  if (grand != num_tokens)
    throw ConsistencyError("count invariant: token total mismatch");
}

}  // namespace flda
