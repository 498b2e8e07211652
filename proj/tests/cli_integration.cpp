// SPDX-License-Identifier: Apache-2.0
//
// End-to-end runs of the qfdt binary: exit codes, stdout contents, and
// byte-determinism across repeated invocations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "common.hpp"

#ifndef QFDT_CLI_PATH
#error "QFDT_CLI_PATH must point at the built qfdt binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const testutil::TempDir& tmp,
                  const std::string& tag) {
  std::string out_file = tmp.path("out_" + tag + ".txt");
  std::string command = std::string("\"") + QFDT_CLI_PATH + "\" " + args + " > \"" +
                        out_file + "\" 2>&1";
  int status = std::system(command.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = testutil::read_file(out_file);
  return r;
}

}  // namespace

TEST_CASE("train on the toy table reports the fidelity root and scores") {
  testutil::TempDir tmp("cli_train");
  std::string csv = tmp.write("toy.csv", testutil::table1_csv());

  RunResult r = run_cli("train --data \"" + csv + "\" --criterion fidelity --out \"" +
                            tmp.path("model.json") + "\"",
                        tmp, "train");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("root: X1") != std::string::npos);
  CHECK(r.output.find("0.971825316") != std::string::npos);
  CHECK(r.output.find("balanced") != std::string::npos);

  RunResult cig = run_cli("train --data \"" + csv + "\" --criterion cig --out \"" +
                              tmp.path("model_cig.json") + "\"",
                          tmp, "train_cig");
  CHECK(cig.exit_code == 0);
  CHECK(cig.output.find("root: X3") != std::string::npos);

  RunResult inspect =
      run_cli("inspect --model \"" + tmp.path("model.json") + "\"", tmp, "inspect");
  CHECK(inspect.exit_code == 0);
  CHECK(inspect.output.find("X1") != std::string::npos);
  CHECK(inspect.output.find("leaf") != std::string::npos);

  RunResult predict = run_cli("predict --model \"" + tmp.path("model.json") +
                                  "\" --value X1=1 --value X2=1",
                              tmp, "predict");
  CHECK(predict.exit_code == 0);
  CHECK(predict.output == "1\n");

  RunResult predict0 = run_cli("predict --model \"" + tmp.path("model.json") +
                                   "\" --value X1=0 --value X2=1",
                               tmp, "predict0");
  CHECK(predict0.output == "0\n");
}

TEST_CASE("exit codes partition the error classes") {
  testutil::TempDir tmp("cli_err");
  RunResult missing = run_cli("train --data /no/such/file.csv", tmp, "missing");
  CHECK(missing.exit_code == 3);

  RunResult badflag = run_cli("train --no-such-flag", tmp, "badflag");
  CHECK(badflag.exit_code == 2);

  RunResult badcrit = run_cli("bench --criteria entropy", tmp, "badcrit");
  CHECK(badcrit.exit_code == 2);

  std::string truncated = tmp.write("broken.json", "{\"version\":1,");
  RunResult broken = run_cli("inspect --model \"" + truncated + "\"", tmp, "broken");
  CHECK(broken.exit_code == 3);

  RunResult help = run_cli("--help", tmp, "help");
  CHECK(help.exit_code == 0);
}

TEST_CASE("bench emits the full matrix deterministically") {
  testutil::TempDir tmp("cli_bench");
  std::string args = "bench --dataset all --criteria all --seed 42 --format csv";
  RunResult first = run_cli(args, tmp, "bench1");
  RunResult second = run_cli(args, tmp, "bench2");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);

  // header + 3 datasets x 4 criteria
  CHECK(std::count(first.output.begin(), first.output.end(), '\n') == 13);
  CHECK(first.output.find("haberman,fidelity,42,2,") != std::string::npos);
  CHECK(first.output.find("seeds,gini,42,2,") != std::string::npos);

  RunResult pair = run_cli("bench --dataset seeds --criteria fidelity,qig --format csv",
                           tmp, "bench_pair");
  CHECK(std::count(pair.output.begin(), pair.output.end(), '\n') == 3);
}

TEST_CASE("train + eval reproduces the matching bench row") {
  testutil::TempDir tmp("cli_parity");
  std::string model = tmp.path("haberman.json");

  RunResult train = run_cli(
      "train --builtin haberman --criterion fidelity --train-fraction 0.9 --seed 42 "
      "--out \"" + model + "\"",
      tmp, "train");
  REQUIRE(train.exit_code == 0);

  RunResult eval = run_cli(
      "eval --model \"" + model + "\" --builtin haberman --train-fraction 0.9 --seed 42 "
      "--format csv",
      tmp, "eval");
  REQUIRE(eval.exit_code == 0);

  RunResult bench = run_cli(
      "bench --dataset haberman --criteria fidelity --seed 42 --format csv", tmp,
      "bench");
  REQUIRE(bench.exit_code == 0);

  // both documents are header + one row; the rows must match byte for byte
  auto second_line = [](const std::string& text) {
    std::size_t first_nl = text.find('\n');
    return text.substr(first_nl + 1);
  };
  CHECK(second_line(eval.output) == second_line(bench.output));
}
