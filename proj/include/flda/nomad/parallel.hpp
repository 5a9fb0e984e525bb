#pragma once

#include <cstdint>
#include <vector>

#include "flda/corpus.hpp"
#include "flda/nomad/router.hpp"
#include "flda/nomad/token.hpp"
#include "flda/nomad/worker.hpp"
#include "flda/trainer.hpp"

namespace flda::nomad {

/// Disjoint cover of the documents over p workers, balanced greedily by
/// token count (longest document first into the lightest bin). Bins come
/// back sorted ascending; p > #docs leaves trailing bins empty.
std::vector<std::vector<std::int32_t>> partition_corpus(const Corpus& corpus,
                                                        int p);

/// doc id -> owning worker, from a partition.
std::vector<std::int32_t> partition_owners(
    const std::vector<std::vector<std::int32_t>>& partition,
    std::int32_t num_docs);

/// Per-worker word-major occurrence lists.
std::vector<WordIndex> build_word_indexes(
    const Corpus& corpus, const std::vector<std::int32_t>& owners, int p);

/// Merge per-worker document counts, word-token payloads, and the circulated
/// totals into one CountModel. Callable only at quiescence (no token in
/// flight); the per-topic identity sum_d n_td = sum_w n_tw = s is enforced
/// integer-exactly.
CountModel snapshot_counts(const HyperParams& hyper,
                           const std::vector<SparseTopicCounts>& doc_topic,
                           const std::vector<WordToken>& word_tokens,
                           const SumToken& sum);

/// Asynchronous F+LDA (word order) over p in-process workers. Each iteration
/// circulates every word token through `p` visits, then quiesces (drain, one
/// final sum circulation, shadow sync) and snapshots the global model for the
/// trace. With p = 1 and Ring routing the run is bit-identical to serial
/// F+LDA(word) under the same seed.
TrainResult run_parallel(const Corpus& corpus, const TrainerConfig& config,
                         int p, Routing routing = Routing::Ring);

}  // namespace flda::nomad
