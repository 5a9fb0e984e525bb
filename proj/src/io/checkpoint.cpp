#include "flda/io/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <type_traits>

#include "flda/error.hpp"

namespace flda::io {

namespace {

constexpr char kMagic[8] = {'F', 'L', 'D', 'A', 'C', 'K', 'P', 'T'};
constexpr std::uint8_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
  std::uint64_t v;
  if constexpr (std::is_same_v<T, double>)
    v = std::bit_cast<std::uint64_t>(value);
  else
    v = static_cast<std::uint64_t>(static_cast<std::int64_t>(value));
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<char>(v >> (8 * i));
  out.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw LoadError("checkpoint: truncated file");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[i]))
         << (8 * i);
  if constexpr (std::is_same_v<T, double>)
    return std::bit_cast<double>(v);
  else
    return static_cast<T>(v);
}

void put_sparse(std::ostream& out, const SparseTopicCounts& row) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(row.support_size()));
  for (const auto& [t, c] : row.entries()) {
    put<std::int32_t>(out, t);
    put<std::int32_t>(out, c);
  }
}

SparseTopicCounts get_sparse(std::istream& in, std::int64_t remaining_budget) {
  const auto n = get<std::uint32_t>(in);
  if (static_cast<std::int64_t>(n) > remaining_budget)
    throw LoadError("checkpoint: implausible support length");
  std::vector<SparseTopicCounts::Entry> entries;
  entries.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto t = get<std::int32_t>(in);
    const auto c = get<std::int32_t>(in);
    entries.emplace_back(t, c);
  }
  try {
    return SparseTopicCounts::from_entries(std::move(entries));
  } catch (const ContractViolationError& e) {
    throw LoadError(std::string("checkpoint: corrupt counts: ") + e.what());
  }
}

}  // namespace

void save_state(const std::string& path, const TopicAssignment& z,
                const CountModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path + " for writing");

  out.write(kMagic, sizeof(kMagic));
  put<std::uint8_t>(out, kVersion);
  put<std::int32_t>(out, static_cast<std::int32_t>(model.doc_topic.size()));
  put<std::int32_t>(out, static_cast<std::int32_t>(model.word_topic.size()));
  put<std::int32_t>(out, model.hyper.num_topics);
  put<double>(out, model.hyper.alpha);
  put<double>(out, model.hyper.beta);
  put<double>(out, model.hyper.beta_bar);
  put<std::int64_t>(out, static_cast<std::int64_t>(z.size()));
  for (std::int32_t t : z) put<std::int32_t>(out, t);
  for (const auto& row : model.doc_topic) put_sparse(out, row);
  for (const auto& row : model.word_topic) put_sparse(out, row);
  for (std::int64_t v : model.topic_total) put<std::int64_t>(out, v);
  if (!out) throw ValidationError("write failed: " + path);
}

std::pair<TopicAssignment, CountModel> load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path);
  in.seekg(0, std::ios::end);
  const std::int64_t file_size = in.tellg();
  in.seekg(0, std::ios::beg);

  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw LoadError("checkpoint: bad magic");
  if (get<std::uint8_t>(in) != kVersion)
    throw LoadError("checkpoint: unsupported version");

  const auto num_docs = get<std::int32_t>(in);
  const auto vocab = get<std::int32_t>(in);
  const auto num_topics = get<std::int32_t>(in);
  if (num_docs < 0 || vocab < 0 || num_topics < 1)
    throw LoadError("checkpoint: corrupt header");

  CountModel model;
  model.hyper.num_topics = num_topics;
  model.hyper.alpha = get<double>(in);
  model.hyper.beta = get<double>(in);
  model.hyper.beta_bar = get<double>(in);

  const auto n_tokens = get<std::int64_t>(in);
  // every stored token is 4 bytes; a count the file cannot hold is garbage
  if (n_tokens < 0 || n_tokens > file_size / 4)
    throw LoadError("checkpoint: corrupt token count");
  if (static_cast<std::int64_t>(num_docs) + vocab > file_size / 4)
    throw LoadError("checkpoint: corrupt dimensions");
  TopicAssignment z;
  z.reserve(n_tokens);
  for (std::int64_t i = 0; i < n_tokens; ++i) {
    const auto t = get<std::int32_t>(in);
    if (t < 0 || t >= num_topics)
      throw LoadError("checkpoint: topic out of range");
    z.push_back(t);
  }

  model.doc_topic.reserve(num_docs);
  for (std::int32_t d = 0; d < num_docs; ++d)
    model.doc_topic.push_back(get_sparse(in, n_tokens));
  model.word_topic.reserve(vocab);
  for (std::int32_t w = 0; w < vocab; ++w)
    model.word_topic.push_back(get_sparse(in, n_tokens));
  model.topic_total.reserve(num_topics);
  for (std::int32_t t = 0; t < num_topics; ++t)
    model.topic_total.push_back(get<std::int64_t>(in));

  char extra;
  if (in.read(&extra, 1)) throw LoadError("checkpoint: trailing bytes");
  return {std::move(z), std::move(model)};
}

}  // namespace flda::io
