#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flda/error.hpp"

namespace flda {

/// One word occurrence. Ids are 0-based everywhere inside the library.
struct Token {
  std::int32_t doc;
  std::int32_t word;
};

/// Bag-of-words corpus as a flat token stream in document-major order
/// (documents ascending, positions ascending), plus a word-major index over
/// the same occurrences (words ascending, then documents ascending). Both
/// views enumerate the identical multiset; immutable once built.
class Corpus {
 public:
  Corpus() = default;

  /// `tokens` must be grouped by ascending doc id.
  Corpus(std::int32_t num_docs, std::int32_t vocab_size,
         std::vector<Token> tokens, std::vector<std::string> vocab = {});

  std::int32_t num_docs() const { return num_docs_; }
  std::int32_t vocab_size() const { return vocab_size_; }
  std::int64_t num_tokens() const {
    return static_cast<std::int64_t>(tokens_.size());
  }

  const Token& token(std::int64_t id) const { return tokens_[id]; }
  std::span<const Token> tokens() const { return tokens_; }

  /// Token ids of document d, in position order.
  std::span<const std::int64_t> doc_tokens(std::int32_t d) const {
    return {doc_order_.data() + doc_begin_[d],
            doc_order_.data() + doc_begin_[d + 1]};
  }

  std::int64_t doc_length(std::int32_t d) const {
    return doc_begin_[d + 1] - doc_begin_[d];
  }

  /// Token ids of every occurrence of word w, ascending (doc, position).
  std::span<const std::int64_t> word_tokens(std::int32_t w) const {
    return {word_order_.data() + word_begin_[w],
            word_order_.data() + word_begin_[w + 1]};
  }

  std::int64_t word_frequency(std::int32_t w) const {
    return word_begin_[w + 1] - word_begin_[w];
  }

  const std::vector<std::string>& vocab() const { return vocab_; }

 private:
  std::int32_t num_docs_ = 0;
  std::int32_t vocab_size_ = 0;
  std::vector<Token> tokens_;
  std::vector<std::int64_t> doc_begin_;   // size I+1
  std::vector<std::int64_t> doc_order_;   // identity permutation, kept for a
                                          // uniform span-based interface
  std::vector<std::int64_t> word_begin_;  // size J+1
  std::vector<std::int64_t> word_order_;  // token ids sorted by word
  std::vector<std::string> vocab_;
};

/// Topic of each token, aligned with Corpus token ids.
using TopicAssignment = std::vector<std::int32_t>;

}  // namespace flda
