#pragma once

#include <cstdint>
#include <vector>

#include "flda/corpus.hpp"

namespace flda::io {

/// Generator knobs for a corpus drawn from the LDA generative process.
struct SyntheticSpec {
  std::int32_t num_docs = 0;
  std::int32_t vocab_size = 0;
  std::int32_t num_topics = 0;
  double mean_doc_length = 0.0;
  double alpha = 0.0;  // document-topic Dirichlet
  double beta = 0.0;   // topic-word Dirichlet
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  Corpus corpus;
  std::vector<std::vector<double>> topics;       // T x J, rows sum to 1
  std::vector<std::vector<double>> proportions;  // I x T, rows sum to 1
};

/// Draw T topics ~ Dirichlet(beta), per-document proportions ~
/// Dirichlet(alpha), per-token topic and word from the respective
/// discretes. Document lengths are Poisson(mean) floored at 1.
/// Deterministic given the seed.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

}  // namespace flda::io
