#include "flda/metrics.hpp"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace flda {

namespace {

constexpr const char* kCsvHeader =
    "iter,loglik,seconds,tokens_per_sec,algorithm,workers,seed";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void emit_metrics(const TrainTrace& trace, MetricsFormat format,
                  std::ostream& sink, const RunInfo& info) {
  if (format == MetricsFormat::Csv) {
    sink << kCsvHeader << '\n';
    sink.flush();
    for (const TraceRecord& r : trace) {
      sink << r.iteration << ',' << fmt_double(r.loglik) << ','
           << fmt_double(r.seconds) << ',' << fmt_double(r.tokens_per_sec)
           << ',' << info.algorithm << ',' << info.workers << ',' << info.seed
           << '\n';
      sink.flush();
    }
  } else {
    for (const TraceRecord& r : trace) {
      nlohmann::json line{{"iter", r.iteration},
                          {"loglik", r.loglik},
                          {"seconds", r.seconds},
                          {"tokens_per_sec", r.tokens_per_sec},
                          {"algorithm", info.algorithm},
                          {"workers", info.workers},
                          {"seed", info.seed}};
      sink << line.dump() << '\n';
      sink.flush();
    }
  }
}

TrainTrace parse_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      (line != kCsvHeader && line != std::string(kCsvHeader) + "\r"))
    throw ParseError("metrics csv: missing header");

  TrainTrace trace;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    TraceRecord r;
    try {
      std::getline(ss, field, ',');
      r.iteration = std::stoi(field);
      std::getline(ss, field, ',');
      r.loglik = std::stod(field);
      std::getline(ss, field, ',');
      r.seconds = std::stod(field);
      std::getline(ss, field, ',');
      r.tokens_per_sec = std::stod(field);
    } catch (const std::exception&) {
      throw ParseError("metrics csv: bad record at line " +
                       std::to_string(line_no));
    }
    trace.push_back(r);
  }
  return trace;
}

}  // namespace flda
