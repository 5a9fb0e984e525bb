#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "flda/trainer.hpp"

namespace flda {

enum class MetricsFormat { Csv, JsonLines };

/// Run identity attached to every emitted record.
struct RunInfo {
  std::string algorithm;
  int workers = 1;
  std::uint64_t seed = 0;
};

/// Stream a trace as CSV (header
/// `iter,loglik,seconds,tokens_per_sec,algorithm,workers,seed`) or as JSON
/// lines with the same keys. Flushes after every record so a live run can be
/// tailed.
void emit_metrics(const TrainTrace& trace, MetricsFormat format,
                  std::ostream& sink, const RunInfo& info);

/// Parse-back of the CSV form (header required); used by round-trip checks.
TrainTrace parse_metrics_csv(std::istream& in);

}  // namespace flda
