// Copyright 2026 The QCT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the qct binary end to end.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "qct/dk_protocol.hpp"
#include "qct/io.hpp"

using namespace qct;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Result run(const std::string& args) {
  const std::string err_path = std::string(QCT_TMP_DIR) + "/cli_stderr.txt";
  const std::string cmd = std::string(QCT_CLI_PATH) + " " + args + " 2>" + err_path;
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err_path);
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string(QCT_TMP_DIR) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("list builtins") {
  const Result r = run("--list-builtins");
  CHECK(r.status == 0);
  CHECK(r.out.find("dk-honest") != std::string::npos);
  CHECK(r.out.find("xor") != std::string::npos);
}

TEST_CASE("run on the honest builtin") {
  const Result r = run("run dk-honest");
  REQUIRE(r.status == 0);
  const io::Json j = io::parse(r.out);
  CHECK(j["kind"] == "run_report");
  CHECK(j["correct"] == true);
  CHECK(std::abs(j["distribution"]["table"]["0"]["0"].get<double>() - 0.5) < 1e-10);
}

TEST_CASE("run on a protocol file") {
  const std::string path = write_temp("honest.json", io::to_json(dk::build_dk_honest()).dump());
  const Result r = run("run " + path);
  REQUIRE(r.status == 0);
  CHECK(io::parse(r.out)["correct"] == true);
}

TEST_CASE("output is byte-identical across runs") {
  const Result a = run("sample dk-honest -n 2000 --seed 9");
  const Result b = run("sample dk-honest -n 2000 --seed 9");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const Result c = run("cheat dk-honest --party bob --family measure-respond --restarts 2 --budget 300 --seed 1");
  const Result d = run("cheat dk-honest --party bob --family measure-respond --restarts 2 --budget 300 --seed 1");
  REQUIRE(c.status == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("--output writes to a file") {
  const std::string path = std::string(QCT_TMP_DIR) + "/run_out.json";
  std::remove(path.c_str());
  const Result r = run("run dk-honest --output " + path);
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  CHECK(io::parse(slurp(path))["kind"] == "run_report");
}

TEST_CASE("malformed JSON exits with 2") {
  const std::string path = write_temp("bad.json", "{\"schema\": ");
  const Result r = run("run " + path);
  CHECK(r.status == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("unknown options exit with 2") {
  CHECK(run("run dk-honest --frobnicate").status == 2);
  CHECK(run("cheat dk-honest").status == 2);
}

TEST_CASE("a channel with a Kraus sum defect exits with 3") {
  io::Json j = io::to_json(dk::build_dk_honest());
  auto& k = j["alice"]["moves"][0]["kraus"][0];
  for (auto& row : k) {
    for (auto& z : row) {
      z[0] = z[0].get<double>() * 0.5;
      z[1] = z[1].get<double>() * 0.5;
    }
  }
  const std::string path = write_temp("non_tp.json", j.dump());
  const Result r = run("run " + path);
  CHECK(r.status == 3);
  CHECK(r.err.find("Kraus") != std::string::npos);
}

TEST_CASE("an incorrect classical protocol exits with 3") {
  ClassicalProtocol c = classical_dictator();
  c.bob_output[0] = {0.0, 1.0, 0.0};
  const std::string path = write_temp("incorrect.json", io::to_json(c).dump());
  const Result r = run("classical " + path);
  CHECK(r.status == 3);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("classical games on xor") {
  const Result r = run("classical xor");
  REQUIRE(r.status == 0);
  const io::Json j = io::parse(r.out);
  REQUIRE(j["games"].size() == 2);
  CHECK(j["games"][0]["winner"] == "bob");
}

TEST_CASE("cheat on the published attacks") {
  for (const char* party : {"alice", "bob"}) {
    const Result r = run(std::string("cheat dk-honest --party ") + party + " --target 1");
    REQUIRE(r.status == 0);
    const io::Json j = io::parse(r.out);
    CHECK(j["kind"] == "cheat_report");
    CHECK(std::abs(j["search"]["best_value"].get<double>() - 0.75) < 1e-10);
  }
}

TEST_CASE("dilate reports one deviation per opponent") {
  const Result r = run("dilate dk-honest --party bob --opponents 50 --seed 2");
  REQUIRE(r.status == 0);
  const io::Json j = io::parse(r.out);
  CHECK(j["verification"]["deviations"].size() == 50);
  CHECK(j["verification"]["max_deviation"].get<double>() < 1e-6);
}
