#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "flda/corpus.hpp"

namespace flda::io {

/// UCI bag-of-words reader. Header is three integers on their own lines
/// (D documents, W vocabulary, NNZ triples), then NNZ lines of
/// "docID wordID count" with 1-based ids; any ASCII whitespace separates
/// fields and blank lines are tolerated. Each triple expands into `count`
/// tokens. Ids come out 0-based.
Corpus parse_uci_bow(std::istream& docword,
                     std::istream* vocab_names = nullptr);

Corpus parse_uci_bow_file(const std::string& docword_path,
                          const std::string& vocab_path = {});

/// Inverse of the parser: write a corpus back out as docword triples
/// (1-based, doc-major, counts merged per (doc, word) run).
void write_uci_bow(const Corpus& corpus, std::ostream& out);

}  // namespace flda::io
