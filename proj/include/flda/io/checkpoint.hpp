#pragma once

#include <string>

#include "flda/corpus.hpp"
#include "flda/counts.hpp"

namespace flda::io {

/// Persist assignments plus counts as little-endian fixed-width binary with
/// a magic string and version byte. load(save(x)) is bitwise x.
void save_state(const std::string& path, const TopicAssignment& z,
                const CountModel& model);

std::pair<TopicAssignment, CountModel> load_state(const std::string& path);

}  // namespace flda::io
