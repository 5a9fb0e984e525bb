// flda: train LDA topic models with F+tree Gibbs sampling (serial or the
// nomad token-passing parallel runtime) and micro-benchmark the competing
// samplers.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "flda/bench.hpp"
#include "flda/io/checkpoint.hpp"
#include "flda/io/synthetic.hpp"
#include "flda/io/uci.hpp"
#include "flda/metrics.hpp"
#include "flda/nomad/parallel.hpp"
#include "flda/trainer.hpp"

namespace {

struct TrainArgs {
  std::string corpus_path;
  std::string vocab_path;
  bool synthetic = false;
  std::int32_t docs = 500;
  std::int32_t vocab = 200;
  double mean_len = 50.0;
  double gen_alpha = 0.1;
  double gen_beta = 0.05;

  std::string algo = "flda-word";
  int topics = 1024;
  std::optional<double> alpha;
  double beta = 0.01;
  int iters = 10;
  int mh_steps = 2;
  int workers = 1;
  std::string routing = "ring";
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
  std::string save_state_path;
  std::string load_state_path;
};

// --out is joined onto FLDA_OUT_DIR when set and the path is relative.
std::string resolve_out_path(const std::string& path) {
  const char* dir = std::getenv("FLDA_OUT_DIR");
  if (!dir || !*dir || path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

flda::Algorithm parse_algo(const std::string& name) {
  if (name == "flda-word") return flda::Algorithm::FldaWord;
  if (name == "flda-doc") return flda::Algorithm::FldaDoc;
  if (name == "sparse") return flda::Algorithm::Sparse;
  if (name == "alias") return flda::Algorithm::Alias;
  throw CLI::ValidationError("--algo", "unknown algorithm '" + name + "'");
}

int cmd_train(const TrainArgs& args) {
  flda::Corpus corpus;
  if (args.synthetic) {
    corpus = flda::io::generate_synthetic({args.docs, args.vocab, args.topics,
                                           args.mean_len, args.gen_alpha,
                                           args.gen_beta, args.seed})
                 .corpus;
  } else {
    corpus = flda::io::parse_uci_bow_file(args.corpus_path, args.vocab_path);
  }

  flda::TrainerConfig config;
  config.algorithm = parse_algo(args.algo);
  config.iterations = args.iters;
  config.mh_steps = args.mh_steps;
  config.seed = args.seed;
  const double alpha = args.alpha ? *args.alpha : 50.0 / args.topics;
  config.hyper = flda::HyperParams::make(args.topics, alpha, args.beta,
                                         corpus.vocab_size());

  flda::TrainResult result;
  if (args.workers > 1) {
    const auto routing = args.routing == "random"
                             ? flda::nomad::Routing::UniformRandom
                             : flda::nomad::Routing::Ring;
    result = flda::nomad::run_parallel(corpus, config, args.workers, routing);
  } else if (!args.load_state_path.empty()) {
    auto [z, model] = flda::io::load_state(args.load_state_path);
    result = flda::train_from(corpus, config, std::move(z), std::move(model));
  } else {
    result = flda::train(corpus, config);
  }

  const flda::RunInfo info{args.algo, args.workers, args.seed};
  const auto format = args.format == "jsonl" ? flda::MetricsFormat::JsonLines
                                             : flda::MetricsFormat::Csv;
  if (args.out_path.empty()) {
    flda::emit_metrics(result.trace, format, std::cout, info);
  } else {
    const std::string path = resolve_out_path(args.out_path);
    std::ofstream out(path);
    if (!out) throw flda::ValidationError("cannot open " + path);
    flda::emit_metrics(result.trace, format, out, info);
  }

  if (!args.save_state_path.empty())
    flda::io::save_state(resolve_out_path(args.save_state_path), result.z,
                         result.model);
  return 0;
}

int cmd_bench(const flda::BenchConfig& config, const std::string& out_path) {
  const auto records = flda::bench_samplers(config);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    const std::string path = resolve_out_path(out_path);
    file.open(path);
    if (!file) throw flda::ValidationError("cannot open " + path);
    out = &file;
  }
  *out << "sampler,T,ns_build,ns_sample,ns_update\n";
  for (const auto& r : records)
    *out << r.sampler << ',' << r.dimension << ',' << r.ns_build << ','
         << r.ns_sample << ',' << r.ns_update << '\n';
  return 0;
}

int cmd_gen(const flda::io::SyntheticSpec& spec, const std::string& out_path) {
  const auto synth = flda::io::generate_synthetic(spec);
  if (out_path.empty()) {
    flda::io::write_uci_bow(synth.corpus, std::cout);
  } else {
    const std::string path = resolve_out_path(out_path);
    std::ofstream out(path);
    if (!out) throw flda::ValidationError("cannot open " + path);
    flda::io::write_uci_bow(synth.corpus, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"F+LDA: topic models via F+tree collapsed Gibbs sampling"};
  app.require_subcommand(1);

  TrainArgs targs;
  auto* train = app.add_subcommand("train", "Run a training job");
  train->add_option("--corpus", targs.corpus_path,
                    "UCI bag-of-words docword file");
  train->add_option("--vocab", targs.vocab_path, "vocabulary file (optional)");
  train->add_flag("--synthetic", targs.synthetic,
                  "generate a synthetic corpus instead of reading one");
  train->add_option("--docs", targs.docs, "synthetic: documents");
  train->add_option("--gen-vocab", targs.vocab, "synthetic: vocabulary size");
  train->add_option("--mean-len", targs.mean_len,
                    "synthetic: mean document length");
  train->add_option("--gen-alpha", targs.gen_alpha,
                    "synthetic: generator document Dirichlet");
  train->add_option("--gen-beta", targs.gen_beta,
                    "synthetic: generator topic Dirichlet");
  train->add_option("--algo", targs.algo,
                    "flda-word | flda-doc | sparse | alias")
      ->capture_default_str();
  train->add_option("--topics", targs.topics, "number of topics T")
      ->capture_default_str();
  train->add_option("--alpha", targs.alpha,
                    "document-topic prior (default 50/T)");
  train->add_option("--beta", targs.beta, "topic-word prior")
      ->capture_default_str();
  train->add_option("--iters", targs.iters, "training iterations")
      ->capture_default_str();
  train->add_option("--mh-steps", targs.mh_steps,
                    "Metropolis-Hastings steps (alias only)")
      ->capture_default_str();
  train->add_option("--workers,--threads", targs.workers,
                    "worker count; >1 runs the nomad parallel trainer")
      ->capture_default_str();
  train->add_option("--routing", targs.routing, "ring | random")
      ->capture_default_str();
  train->add_option("--seed", targs.seed, "RNG seed")->capture_default_str();
  train->add_option("--out", targs.out_path,
                    "trace output path (default stdout; relative paths join "
                    "FLDA_OUT_DIR when set)");
  train->add_option("--format", targs.format, "csv | jsonl")
      ->capture_default_str();
  train->add_option("--save-state", targs.save_state_path,
                    "write a checkpoint of the final state");
  train->add_option("--load-state", targs.load_state_path,
                    "resume from a checkpoint (serial only)");

  flda::BenchConfig bconfig;
  std::string bench_out;
  auto* bench =
      app.add_subcommand("bench-samplers", "Micro-benchmark the samplers");
  bench->add_option("--topics", bconfig.dimensions, "dimensions to test")
      ->capture_default_str();
  bench->add_option("--trials", bconfig.trials, "timed repeats per cell")
      ->capture_default_str();
  bench->add_option("--samples", bconfig.samples_per_trial,
                    "draws per timed repeat")
      ->capture_default_str();
  bench->add_option("--updates", bconfig.updates_per_trial,
                    "updates per timed repeat")
      ->capture_default_str();
  bench->add_option("--seed", bconfig.seed, "weight-vector seed")
      ->capture_default_str();
  bench->add_option("--out", bench_out, "output path (default stdout)");

  flda::io::SyntheticSpec gspec{500, 200, 5, 50.0, 0.1, 0.05, 0};
  std::string gen_out;
  auto* gen = app.add_subcommand(
      "gen", "Write a synthetic corpus as a UCI docword file");
  gen->add_option("--docs", gspec.num_docs)->capture_default_str();
  gen->add_option("--gen-vocab", gspec.vocab_size)->capture_default_str();
  gen->add_option("--topics", gspec.num_topics)->capture_default_str();
  gen->add_option("--mean-len", gspec.mean_doc_length)->capture_default_str();
  gen->add_option("--gen-alpha", gspec.alpha)->capture_default_str();
  gen->add_option("--gen-beta", gspec.beta)->capture_default_str();
  gen->add_option("--seed", gspec.seed)->capture_default_str();
  gen->add_option("--out", gen_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (train->parsed()) {
      if (!targs.synthetic && targs.corpus_path.empty()) {
        std::cerr << "train: need --corpus or --synthetic\n";
        return 1;
      }
      if (targs.workers > 1 && targs.algo != "flda-word") {
        std::cerr << "train: --workers > 1 supports --algo flda-word only\n";
        return 1;
      }
      if (targs.workers < 1) {
        std::cerr << "train: --workers must be >= 1\n";
        return 1;
      }
      if (targs.workers > 1 && !targs.load_state_path.empty()) {
        std::cerr << "train: --load-state requires --workers 1\n";
        return 1;
      }
      return cmd_train(targs);
    }
    if (bench->parsed()) return cmd_bench(bconfig, bench_out);
    if (gen->parsed()) return cmd_gen(gspec, gen_out);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const flda::ContractViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
