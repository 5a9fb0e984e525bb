#include "flda/corpus.hpp"

namespace flda {

Corpus::Corpus(std::int32_t num_docs, std::int32_t vocab_size,
               std::vector<Token> tokens, std::vector<std::string> vocab)
    : num_docs_(num_docs),
      vocab_size_(vocab_size),
      tokens_(std::move(tokens)),
      vocab_(std::move(vocab)) {
  if (num_docs_ < 0 || vocab_size_ < 0)
    throw ValidationError("Corpus: negative dimensions");

  const std::int64_t n = static_cast<std::int64_t>(tokens_.size());
  doc_begin_.assign(num_docs_ + 1, 0);
  word_begin_.assign(vocab_size_ + 1, 0);

  std::int32_t prev_doc = 0;
  for (const Token& tok : tokens_) {
    if (tok.doc < 0 || tok.doc >= num_docs_ || tok.word < 0 ||
        tok.word >= vocab_size_)
      throw ValidationError("Corpus: token id out of range");
    if (tok.doc < prev_doc)
      throw ValidationError("Corpus: tokens not grouped by document");
    prev_doc = tok.doc;
    ++doc_begin_[tok.doc + 1];
    ++word_begin_[tok.word + 1];
  }
  for (std::int32_t d = 0; d < num_docs_; ++d)
    doc_begin_[d + 1] += doc_begin_[d];
  for (std::int32_t w = 0; w < vocab_size_; ++w)
    word_begin_[w + 1] += word_begin_[w];

  doc_order_.resize(n);
  for (std::int64_t i = 0; i < n; ++i) doc_order_[i] = i;

  // Counting sort by word over the doc-major stream is stable, so each
  // word's occurrence list comes out ascending in (doc, position).
  word_order_.resize(n);
  std::vector<std::int64_t> cursor(word_begin_.begin(), word_begin_.end() - 1);
  for (std::int64_t i = 0; i < n; ++i)
    word_order_[cursor[tokens_[i].word]++] = i;
}

}  // namespace flda
