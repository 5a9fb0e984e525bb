#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "flda/counts.hpp"

namespace flda::nomad {

/// Movable owner of one word's topic counts. Whoever holds the token may
/// process that word's occurrences; the payload is always the freshest (and
/// only) copy of n_tw.
struct WordToken {
  std::int32_t word = 0;
  SparseTopicCounts counts;
  std::int32_t visits = 0;  // runtime bookkeeping, not part of the payload
};

/// The unique circulating carrier of the global topic totals.
struct SumToken {
  std::vector<std::int64_t> totals;
};

using Token = std::variant<WordToken, SumToken>;

/// Wire format (little-endian), so an out-of-process transport stays
/// bit-compatible:
///   word token: u8 'W', i32 word, u32 n, n x (i32 topic, i32 count)
///   sum token:  u8 'S', u32 T, T x i64
std::vector<std::uint8_t> serialize_token(const Token& token);
Token deserialize_token(const std::vector<std::uint8_t>& bytes);

/// The sum-token merge arithmetic, integer-exact:
///   totals += shadow - snapshot;  snapshot = shadow = totals.
/// shadow - snapshot is exactly the holder's unpublished effort.
void merge_totals(std::vector<std::int64_t>& totals,
                  std::vector<std::int64_t>& shadow,
                  std::vector<std::int64_t>& snapshot);

}  // namespace flda::nomad
