#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "flda/io/checkpoint.hpp"
#include "flda/io/synthetic.hpp"
#include "flda/io/uci.hpp"
#include "flda/trainer.hpp"

using namespace flda;

namespace {

Corpus parse_string(const std::string& text) {
  std::istringstream in(text);
  return io::parse_uci_bow(in);
}

// (doc, word) multiset from either view; the two must coincide.
std::map<std::pair<int, int>, int> doc_view(const Corpus& c) {
  std::map<std::pair<int, int>, int> m;
  for (std::int32_t d = 0; d < c.num_docs(); ++d)
    for (std::int64_t id : c.doc_tokens(d))
      ++m[{c.token(id).doc, c.token(id).word}];
  return m;
}

std::map<std::pair<int, int>, int> word_view(const Corpus& c) {
  std::map<std::pair<int, int>, int> m;
  for (std::int32_t w = 0; w < c.vocab_size(); ++w)
    for (std::int64_t id : c.word_tokens(w))
      ++m[{c.token(id).doc, c.token(id).word}];
  return m;
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name)
      : path(std::string("io_test_") + name + ".bin") {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("uci parse: basic triples expand by count") {
  const Corpus c = parse_string("2\n3\n3\n1 1 2\n1 3 1\n2 2 1\n");
  CHECK(c.num_docs() == 2);
  CHECK(c.vocab_size() == 3);
  CHECK(c.num_tokens() == 4);
  CHECK(c.doc_length(0) == 3);
  CHECK(c.doc_length(1) == 1);
  CHECK(c.word_frequency(0) == 2);  // word 1 in the file
  CHECK(doc_view(c) == word_view(c));
}

TEST_CASE("uci parse: empty body with NNZ=0") {
  const Corpus c = parse_string("2\n3\n0\n");
  CHECK(c.num_docs() == 2);
  CHECK(c.num_tokens() == 0);
}

TEST_CASE("uci parse: whitespace tolerance") {
  const Corpus c = parse_string("2 3 2\r\n\n  1\t1 2\n2 3 1  \n\n");
  CHECK(c.num_tokens() == 3);
}

TEST_CASE("uci parse: malformed field reports the line") {
  try {
    parse_string("2\n3\n2\n1 1 2\n1 x 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
}

TEST_CASE("uci parse: id range and count validation") {
  CHECK_THROWS_AS(parse_string("2\n3\n1\n3 1 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_string("2\n3\n1\n1 4 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_string("2\n3\n1\n1 1 0\n"), ValidationError);
}

TEST_CASE("uci parse: NNZ mismatches") {
  CHECK_THROWS_AS(parse_string("2\n3\n3\n1 1 2\n1 3 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_string("2\n3\n1\n1 1 2\n1 3 1\n"), ValidationError);
}

TEST_CASE("uci parse: vocabulary names attach when provided") {
  std::istringstream docword("1\n2\n1\n1 2 1\n");
  std::istringstream vocab("alpha\nbeta\n");
  const Corpus c = io::parse_uci_bow(docword, &vocab);
  REQUIRE(c.vocab().size() == 2);
  CHECK(c.vocab()[1] == "beta");

  std::istringstream docword2("1\n2\n0\n");
  std::istringstream vocab2("alpha\n");
  CHECK_THROWS_AS(io::parse_uci_bow(docword2, &vocab2), ValidationError);
}

TEST_CASE("uci write/parse round trip") {
  const Corpus orig =
      io::generate_synthetic({9, 7, 3, 6.0, 0.4, 0.2, 13}).corpus;
  std::ostringstream out;
  io::write_uci_bow(orig, out);
  const Corpus back = parse_string(out.str());
  CHECK(back.num_docs() == orig.num_docs());
  CHECK(back.vocab_size() == orig.vocab_size());
  CHECK(back.num_tokens() == orig.num_tokens());
  CHECK(doc_view(back) == doc_view(orig));
}

TEST_CASE("synthetic: single topic forces a point-mass mixture") {
  const auto synth = io::generate_synthetic({3, 4, 1, 5.0, 0.5, 0.3, 7});
  REQUIRE(synth.proportions.size() == 3);
  for (const auto& theta : synth.proportions) {
    REQUIRE(theta.size() == 1);
    CHECK(theta[0] == 1.0);
  }
  CHECK(synth.topics.size() == 1);
}

TEST_CASE("synthetic: determinism per seed") {
  const io::SyntheticSpec spec{6, 5, 2, 8.0, 0.4, 0.2, 99};
  const auto a = io::generate_synthetic(spec);
  const auto b = io::generate_synthetic(spec);
  CHECK(a.corpus.num_tokens() == b.corpus.num_tokens());
  for (std::int64_t i = 0; i < a.corpus.num_tokens(); ++i) {
    CHECK(a.corpus.token(i).doc == b.corpus.token(i).doc);
    CHECK(a.corpus.token(i).word == b.corpus.token(i).word);
  }
  auto c = spec;
  c.seed = 100;
  const auto d = io::generate_synthetic(c);
  bool same = a.corpus.num_tokens() == d.corpus.num_tokens();
  if (same)
    for (std::int64_t i = 0; i < a.corpus.num_tokens(); ++i)
      same = same && a.corpus.token(i).word == d.corpus.token(i).word;
  CHECK_FALSE(same);
}

TEST_CASE("synthetic: long-document word law matches theta-weighted topics") {
  // LLN at length 10^4: the empirical word histogram of one long document
  // approaches sum_t theta_t * phi_t within TV 0.05.
  const auto synth = io::generate_synthetic({2, 12, 3, 10000.0, 0.5, 0.3, 5});
  for (std::int32_t d = 0; d < 2; ++d) {
    std::vector<double> expect(12, 0.0);
    for (int t = 0; t < 3; ++t)
      for (int w = 0; w < 12; ++w)
        expect[w] += synth.proportions[d][t] * synth.topics[t][w];

    std::vector<double> seen(12, 0.0);
    const auto ids = synth.corpus.doc_tokens(d);
    for (std::int64_t id : ids) seen[synth.corpus.token(id).word] += 1.0;
    double tv = 0.0;
    for (int w = 0; w < 12; ++w)
      tv += std::abs(seen[w] / ids.size() - expect[w]);
    CHECK(tv / 2 < 0.05);
  }
}

TEST_CASE("synthetic: invalid specs are rejected") {
  CHECK_THROWS_AS(io::generate_synthetic({0, 5, 2, 8.0, 0.4, 0.2, 1}),
                  ContractViolationError);
  CHECK_THROWS_AS(io::generate_synthetic({5, 5, 2, 0.0, 0.4, 0.2, 1}),
                  ContractViolationError);
}

TEST_CASE("checkpoint: round trip is bitwise") {
  const Corpus c = parse_string("2\n3\n3\n1 1 2\n1 3 1\n2 2 1\n");
  const auto [z, model] = init_assignments(c, HyperParams::make(4, 0.5, 0.1, 3), 11);

  TempFile file("roundtrip");
  io::save_state(file.path, z, model);
  const auto [z2, model2] = io::load_state(file.path);
  CHECK(z2 == z);
  CHECK(model2 == model);
}

TEST_CASE("checkpoint: corruption fails loudly, not by crashing") {
  const Corpus c = parse_string("2\n3\n3\n1 1 2\n1 3 1\n2 2 1\n");
  const auto [z, model] = init_assignments(c, HyperParams::make(4, 0.5, 0.1, 3), 11);
  TempFile file("corrupt");
  io::save_state(file.path, z, model);

  // truncation
  {
    std::ifstream in(file.path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    std::ofstream out(file.path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
  }
  CHECK_THROWS_AS(io::load_state(file.path), LoadError);

  // bad magic
  {
    std::ofstream out(file.path, std::ios::binary | std::ios::trunc);
    out << "NOTACKPT" << std::string(64, '\0');
  }
  CHECK_THROWS_AS(io::load_state(file.path), LoadError);

  // implausible length field
  io::save_state(file.path, z, model);
  {
    std::fstream f(file.path,
                   std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(8 + 1 + 12 + 24);  // token-count field
    const char huge[8] = {'\xff', '\xff', '\xff', '\xff',
                          '\xff', '\xff', '\xff', '\x7f'};
    f.write(huge, 8);
  }
  CHECK_THROWS_AS(io::load_state(file.path), LoadError);
}

TEST_CASE("checkpoint: resumed training continues the same trajectory") {
  const Corpus corpus =
      io::generate_synthetic({10, 8, 3, 6.0, 0.5, 0.2, 31}).corpus;
  TrainerConfig config;
  config.hyper = HyperParams::make(3, 0.4, 0.1, corpus.vocab_size());
  config.iterations = 10;
  config.seed = 2;
  const auto trained = train(corpus, config);

  TempFile file("resume");
  io::save_state(file.path, trained.z, trained.model);
  auto [z2, model2] = io::load_state(file.path);

  TrainerConfig cont = config;
  cont.iterations = 5;
  cont.seed = 77;  // both continuations share this stream
  const auto from_memory = train_from(corpus, cont, trained.z, trained.model);
  const auto from_disk =
      train_from(corpus, cont, std::move(z2), std::move(model2));
  CHECK(from_memory.z == from_disk.z);
  CHECK(from_memory.model == from_disk.model);
  for (std::size_t i = 0; i < from_memory.trace.size(); ++i)
    CHECK(from_memory.trace[i].loglik == from_disk.trace[i].loglik);
}
