#include "flda/nomad/token.hpp"

#include <cstring>

namespace flda::nomad {

namespace {

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.push_back(static_cast<std::uint8_t>(
        static_cast<std::uint64_t>(value) >> (8 * i)));
}

template <typename T>
T get(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size())
    throw LoadError("token: truncated payload");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
  pos += sizeof(T);
  return static_cast<T>(v);
}

}  // namespace

std::vector<std::uint8_t> serialize_token(const Token& token) {
  std::vector<std::uint8_t> out;
  if (const auto* wt = std::get_if<WordToken>(&token)) {
    out.push_back('W');
    put<std::int32_t>(out, wt->word);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(
                                wt->counts.support_size()));
    for (const auto& [t, c] : wt->counts.entries()) {
      put<std::int32_t>(out, t);
      put<std::int32_t>(out, c);
    }
  } else {
    const auto& st = std::get<SumToken>(token);
    out.push_back('S');
    put<std::uint32_t>(out, static_cast<std::uint32_t>(st.totals.size()));
    for (std::int64_t v : st.totals) put<std::int64_t>(out, v);
  }
  return out;
}

Token deserialize_token(const std::vector<std::uint8_t>& bytes) {
  if (bytes.empty()) throw LoadError("token: empty payload");
  std::size_t pos = 1;
  if (bytes[0] == 'W') {
    WordToken wt;
    wt.word = get<std::int32_t>(bytes, pos);
    const auto n = get<std::uint32_t>(bytes, pos);
    std::vector<SparseTopicCounts::Entry> entries;
    entries.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto t = get<std::int32_t>(bytes, pos);
      const auto c = get<std::int32_t>(bytes, pos);
      entries.emplace_back(t, c);
    }
    wt.counts = SparseTopicCounts::from_entries(std::move(entries));
    if (pos != bytes.size()) throw LoadError("token: trailing bytes");
    return wt;
  }
  if (bytes[0] == 'S') {
    SumToken st;
    const auto n = get<std::uint32_t>(bytes, pos);
    st.totals.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
      st.totals.push_back(get<std::int64_t>(bytes, pos));
    if (pos != bytes.size()) throw LoadError("token: trailing bytes");
    return st;
  }
  throw LoadError("token: unknown kind byte");
}

void merge_totals(std::vector<std::int64_t>& totals,
                  std::vector<std::int64_t>& shadow,
                  std::vector<std::int64_t>& snapshot) {
  if (totals.size() != shadow.size() || totals.size() != snapshot.size())
    throw ConsistencyError("merge_totals: dimension mismatch");
  for (std::size_t t = 0; t < totals.size(); ++t) {
    totals[t] += shadow[t] - snapshot[t];
    shadow[t] = totals[t];
    snapshot[t] = totals[t];
  }
}

}  // namespace flda::nomad
