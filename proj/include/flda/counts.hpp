#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flda/corpus.hpp"
#include "flda/error.hpp"
#include "flda/hyper.hpp"

namespace flda {

/// Per-topic counts for one document or one word, stored as a compact
/// (topic, count) list sorted by topic. Supports stay exact: a topic whose
/// count reaches zero is erased. |support| is small at desk scale, so linear
/// shifts on insert/erase beat any tree or hash here.
class SparseTopicCounts {
 public:
  using Entry = std::pair<std::int32_t, std::int32_t>;

  std::int32_t get(std::int32_t topic) const {
    for (const Entry& e : entries_) {
      if (e.first == topic) return e.second;
      if (e.first > topic) break;
    }
    return 0;
  }

  /// +1 on `topic`, inserting into the sorted list if absent.
  void increment(std::int32_t topic) {
    auto it = entries_.begin();
    while (it != entries_.end() && it->first < topic) ++it;
    if (it != entries_.end() && it->first == topic)
      ++it->second;
    else
      entries_.insert(it, {topic, 1});
  }

  /// -1 on `topic`; erases the entry at zero. Decrementing a missing topic is
  /// a corrupted-model condition.
  void decrement(std::int32_t topic) {
    auto it = entries_.begin();
    while (it != entries_.end() && it->first < topic) ++it;
    if (it == entries_.end() || it->first != topic)
      throw ConsistencyError("SparseTopicCounts: decrement of zero count");
    if (--it->second == 0) entries_.erase(it);
  }

  std::span<const Entry> entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::int64_t total() const {
    std::int64_t sum = 0;
    for (const Entry& e : entries_) sum += e.second;
    return sum;
  }

  bool operator==(const SparseTopicCounts& other) const = default;

  /// Adopt a ready-made (topic, count) list; must be sorted by topic with
  /// strictly positive counts.
  static SparseTopicCounts from_entries(std::vector<Entry> entries) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].second <= 0)
        throw ContractViolationError("SparseTopicCounts: count must be > 0");
      if (i > 0 && entries[i - 1].first >= entries[i].first)
        throw ContractViolationError("SparseTopicCounts: unsorted entries");
    }
    SparseTopicCounts out;
    out.entries_ = std::move(entries);
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

/// All CGS sufficient statistics: n_td per document, n_tw per word, dense
/// global n_t, plus the priors.
struct CountModel {
  HyperParams hyper;
  std::vector<SparseTopicCounts> doc_topic;   // indexed by doc
  std::vector<SparseTopicCounts> word_topic;  // indexed by word
  std::vector<std::int64_t> topic_total;      // dense, length T

  bool operator==(const CountModel&) const = default;
};

/// Draw every token's topic uniformly from the seeded stream (stream id 0)
/// and tally the counts.
std::pair<TopicAssignment, CountModel> init_assignments(
    const Corpus& corpus, const HyperParams& hyper, std::uint64_t seed);

/// Remove / restore one token's contribution at (doc, word, topic).
void remove_token(CountModel& model, std::int32_t doc, std::int32_t word,
                  std::int32_t topic);
void add_token(CountModel& model, std::int32_t doc, std::int32_t word,
               std::int32_t topic);

/// Tally a CountModel from scratch off the assignment vector. This is the
/// oracle route: it never goes through increment/decrement bookkeeping.
CountModel recount(const Corpus& corpus, const TopicAssignment& z,
                   const HyperParams& hyper);

/// Cheap integer identity checks (column sums match topic_total, totals match
/// token count). Throws ConsistencyError on violation.
void check_count_invariants(const CountModel& model, std::int64_t num_tokens);

}  // namespace flda
