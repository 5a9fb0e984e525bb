#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_out_" + std::to_string(counter) + ".txt";
  const std::string err_path = "cli_err_" + std::to_string(counter) + ".txt";
  ++counter;
  const std::string cmd = std::string(FLDA_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());

  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream out(out_path), err(err_path);
  r.out.assign(std::istreambuf_iterator<char>(out), {});
  r.err.assign(std::istreambuf_iterator<char>(err), {});
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

// CSV rows with the timing columns blanked out.
std::vector<std::string> stable_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (fields.size() == 7) {
      fields[2] = "-";
      fields[3] = "-";
    }
    std::string joined;
    for (const auto& x : fields) joined += x + ",";
    rows.push_back(joined);
  }
  return rows;
}

const char* kTrainFlags =
    "train --synthetic --docs 8 --gen-vocab 6 --topics 3 --iters 2 --seed 9";

}  // namespace

TEST_CASE("train: deterministic trace modulo timing columns") {
  const auto a = run_cli(kTrainFlags);
  const auto b = run_cli(kTrainFlags);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(stable_rows(a.out) == stable_rows(b.out));
  CHECK(stable_rows(a.out).size() == 3);  // header + 2 iterations
}

TEST_CASE("train: --workers dispatches to the parallel runtime") {
  const auto r = run_cli(std::string(kTrainFlags) + " --workers 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find(",2,9") != std::string::npos);  // workers column

  // p = 1 nomad determinism against itself
  const auto a = run_cli(std::string(kTrainFlags) + " --workers 1");
  const auto b = run_cli(std::string(kTrainFlags) + " --workers 1");
  CHECK(stable_rows(a.out) == stable_rows(b.out));
}

TEST_CASE("train: omitted alpha defaults to 50/T") {
  // 50/1024 is exactly representable, so the two runs must agree bitwise.
  const char* base =
      "train --synthetic --docs 5 --gen-vocab 5 --topics 1024 --iters 1 "
      "--seed 3";
  const auto implicit = run_cli(base);
  const auto explicit_alpha = run_cli(std::string(base) + " --alpha 0.048828125");
  const auto other_alpha = run_cli(std::string(base) + " --alpha 0.5");
  CHECK(implicit.exit_code == 0);
  CHECK(stable_rows(implicit.out) == stable_rows(explicit_alpha.out));
  CHECK(stable_rows(implicit.out) != stable_rows(other_alpha.out));
}

TEST_CASE("train: jsonl format") {
  const auto r = run_cli(std::string(kTrainFlags) + " --format jsonl");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"loglik\"") != std::string::npos);
}

TEST_CASE("usage errors exit 1 with a diagnostic") {
  for (const char* bad : {
           "train",                            // no corpus source
           "train --synthetic --algo wat",     // unknown algorithm
           "train --synthetic --workers 0",    // bad worker count
           "train --synthetic --workers 2 --algo sparse",  // nomad is word order
           "wat",                              // unknown subcommand
           "train --no-such-flag",
       }) {
    CAPTURE(bad);
    const auto r = run_cli(bad);
    CHECK(r.exit_code == 1);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("runtime errors exit 2 with a diagnostic") {
  const auto r = run_cli("train --corpus does_not_exist.txt");
  CHECK(r.exit_code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("bench-samplers emits the full sampler x dimension grid") {
  const auto r = run_cli(
      "bench-samplers --topics 8 16 --trials 1 --samples 400 --updates 400");
  CHECK(r.exit_code == 0);
  const auto rows = stable_rows(r.out);
  REQUIRE_FALSE(rows.empty());
  int data_rows = 0;
  for (const char* s : {"lsearch,8,", "bsearch,8,", "alias,8,", "ftree,8,",
                        "lsearch,16,", "bsearch,16,", "alias,16,",
                        "ftree,16,"}) {
    CAPTURE(s);
    CHECK(r.out.find(s) != std::string::npos);
    ++data_rows;
  }
  CHECK(data_rows == 8);
}

TEST_CASE("gen writes a parseable UCI file and train consumes it") {
  const auto gen = run_cli(
      "gen --docs 6 --gen-vocab 5 --topics 2 --mean-len 4 --seed 1 --out "
      "cli_gen_corpus.txt");
  CHECK(gen.exit_code == 0);
  const auto train = run_cli(
      "train --corpus cli_gen_corpus.txt --topics 2 --iters 1 --seed 1");
  CHECK(train.exit_code == 0);
  CHECK(stable_rows(train.out).size() == 2);
  std::remove("cli_gen_corpus.txt");
}

TEST_CASE("FLDA_OUT_DIR redirects relative output paths") {
  const std::string cmd = std::string("mkdir -p cli_outdir && FLDA_OUT_DIR=cli_outdir ") +
                          FLDA_CLI_PATH + " " + kTrainFlags +
                          " --out trace.csv >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream f("cli_outdir/trace.csv");
  CHECK(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "iter,loglik,seconds,tokens_per_sec,algorithm,workers,seed");
  const int rc = std::system("rm -rf cli_outdir");
  (void)rc;
}
