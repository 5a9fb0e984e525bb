#include "flda/io/uci.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "flda/error.hpp"

namespace flda::io {

namespace {

// Pulls whitespace-separated fields line by line, tracking line numbers for
// error messages.
class FieldReader {
 public:
  explicit FieldReader(std::istream& in) : in_(in) {}

  std::optional<std::string> next_field() {
    for (;;) {
      if (pos_ < fields_.size()) return fields_[pos_++];
      if (!std::getline(in_, line_)) return std::nullopt;
      ++line_no_;
      fields_.clear();
      pos_ = 0;
      std::istringstream ss(line_);
      std::string f;
      while (ss >> f) fields_.push_back(f);
    }
  }

  std::int64_t next_int(const char* what) {
    const auto field = next_field();
    if (!field)
      throw ParseError(std::string("unexpected end of input, expected ") +
                       what);
    std::int64_t value = 0;
    const char* begin = field->data();
    const char* end = begin + field->size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
      throw ParseError("line " + std::to_string(line_no_) + ": bad " + what +
                       " '" + *field + "'");
    return value;
  }

  int line_no() const { return line_no_; }
  bool at_end() { return !peek_field(); }
  bool at_triple_end() { return !peek_field(); }

 private:
  bool peek_field() {
    if (pos_ < fields_.size()) return true;
    const auto f = next_field();
    if (!f) return false;
    --pos_;  // push back
    return true;
  }

  std::istream& in_;
  std::string line_;
  std::vector<std::string> fields_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

}  // namespace

Corpus parse_uci_bow(std::istream& docword, std::istream* vocab_names) {
  FieldReader reader(docword);
  const std::int64_t D = reader.next_int("document count");
  const std::int64_t W = reader.next_int("vocabulary size");
  const std::int64_t NNZ = reader.next_int("triple count");
  if (D < 0 || W < 0 || NNZ < 0)
    throw ValidationError("uci: negative header value");

  struct Triple {
    std::int32_t doc, word;
    std::int64_t count;
  };
  std::vector<Triple> triples;
  triples.reserve(NNZ);
  std::int64_t total_tokens = 0;
  for (std::int64_t i = 0; i < NNZ; ++i) {
    if (reader.at_triple_end())
      throw ValidationError("uci: header declares " + std::to_string(NNZ) +
                            " triples but only " + std::to_string(i) +
                            " are present");
    const std::int64_t d = reader.next_int("docID");
    const std::int64_t w = reader.next_int("wordID");
    const std::int64_t c = reader.next_int("count");
    if (d < 1 || d > D)
      throw ValidationError("line " + std::to_string(reader.line_no()) +
                            ": docID " + std::to_string(d) + " out of [1," +
                            std::to_string(D) + "]");
    if (w < 1 || w > W)
      throw ValidationError("line " + std::to_string(reader.line_no()) +
                            ": wordID " + std::to_string(w) + " out of [1," +
                            std::to_string(W) + "]");
    if (c < 1)
      throw ValidationError("line " + std::to_string(reader.line_no()) +
                            ": count must be >= 1");
    triples.push_back({static_cast<std::int32_t>(d - 1),
                       static_cast<std::int32_t>(w - 1), c});
    total_tokens += c;
  }
  if (!reader.at_end())
    throw ValidationError("uci: more data than the declared " +
                          std::to_string(NNZ) + " triples");

  // Bucket triples by document (input order preserved within a document).
  std::vector<std::int64_t> doc_count(D + 1, 0);
  for (const Triple& t : triples) doc_count[t.doc + 1] += t.count;
  for (std::int64_t d = 0; d < D; ++d) doc_count[d + 1] += doc_count[d];

  std::vector<Token> tokens(total_tokens);
  std::vector<std::int64_t> cursor(doc_count.begin(), doc_count.end() - 1);
  for (const Triple& t : triples)
    for (std::int64_t k = 0; k < t.count; ++k)
      tokens[cursor[t.doc]++] = Token{t.doc, t.word};

  std::vector<std::string> vocab;
  if (vocab_names) {
    vocab.reserve(W);
    std::string name;
    while (std::getline(*vocab_names, name)) {
      if (!name.empty() && name.back() == '\r') name.pop_back();
      vocab.push_back(name);
    }
    if (static_cast<std::int64_t>(vocab.size()) != W)
      throw ValidationError("uci: vocabulary file has " +
                            std::to_string(vocab.size()) + " entries, header says " +
                            std::to_string(W));
  }

  return Corpus(static_cast<std::int32_t>(D), static_cast<std::int32_t>(W),
                std::move(tokens), std::move(vocab));
}

Corpus parse_uci_bow_file(const std::string& docword_path,
                          const std::string& vocab_path) {
  std::ifstream docword(docword_path);
  if (!docword) throw ValidationError("cannot open " + docword_path);
  if (vocab_path.empty()) return parse_uci_bow(docword);
  std::ifstream vocab(vocab_path);
  if (!vocab) throw ValidationError("cannot open " + vocab_path);
  return parse_uci_bow(docword, &vocab);
}

void write_uci_bow(const Corpus& corpus, std::ostream& out) {
  // Merge each document's tokens into (word, count) runs.
  std::vector<std::pair<std::int64_t, std::int64_t>> triples;  // (doc*J+word)
  std::map<std::int64_t, std::int64_t> seen;
  for (std::int32_t d = 0; d < corpus.num_docs(); ++d) {
    seen.clear();
    for (std::int64_t id : corpus.doc_tokens(d))
      ++seen[corpus.token(id).word];
    for (const auto& [w, c] : seen)
      triples.emplace_back(static_cast<std::int64_t>(d) * corpus.vocab_size() + w, c);
  }
  out << corpus.num_docs() << "\n"
      << corpus.vocab_size() << "\n"
      << triples.size() << "\n";
  for (const auto& [key, c] : triples)
    out << (key / corpus.vocab_size() + 1) << ' '
        << (key % corpus.vocab_size() + 1) << ' ' << c << "\n";
}

}  // namespace flda::io
