// Copyright 2026 The qncg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the installed command surface: subcommands, file
// formats and exit codes. Drives the real binary.

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "qncg/serialization.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() {
#ifdef QNCG_CLI_PATH
  return QNCG_CLI_PATH;
#else
  return "qncg";
#endif
}

struct Sandbox {
  fs::path dir;
  Sandbox() : dir(fs::temp_directory_path() / "qncg-cli-test") {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const {
    return (dir / name).string();
  }
};

int run(const std::string& args) {
  const std::string cmd =
      std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("construct then verify round-trips through the profile format") {
  Sandbox box;
  CHECK(run("construct --game sum --n 5 --price reciprocal:alpha=4,lo=1,hi=10 "
            "--which ne --out " + (box / "ne")) == 0);
  const std::string profile = box / "ne/ne-profile.ncg";
  CHECK(fs::exists(profile));
  CHECK(run("verify --profile " + profile + " --family exhaustive") == 0);
  CHECK(run("verify --profile " + profile +
            " --family exhaustive --all-bounds") == 0);
}

TEST_CASE("verify exits 1 on an unstable profile") {
  Sandbox box;
  const std::string profile = box / "clique.ncg";
  // Fixed price 2: dropping one clique edge gains 1.
  qncg::write_file(profile,
                   "ncg 3 sum constant:alpha=2,lo=1,hi=1\n"
                   "0 1 1\n0 2 1\n1 2 1\n");
  CHECK(run("verify --profile " + profile + " --family exhaustive") == 1);
}

TEST_CASE("verify exits 2 on malformed input and 4 on missing files") {
  Sandbox box;
  const std::string bad = box / "bad.ncg";
  qncg::write_file(bad, "not a profile\n");
  CHECK(run("verify --profile " + bad + " --family exhaustive") == 2);
  CHECK(run("verify --profile " + (box / "missing.ncg") +
            " --family exhaustive") == 4);
}

TEST_CASE("worst-case construction reports failed preconditions") {
  Sandbox box;
  CHECK(run("construct --game sum --n 4 --price reciprocal:alpha=4,lo=1,hi=10 "
            "--which worst --out " + (box / "w")) == 2);
  CHECK(run("construct --game sum --n 4 "
            "--price table:points=1:1.75\\;2.5:0.125 --which worst --out " +
            (box / "w2")) == 0);
}

TEST_CASE("br-dynamics writes a trace and a final profile") {
  Sandbox box;
  CHECK(run("br-dynamics --init empty --game sum --n 4 "
            "--price constant:alpha=1,lo=1,hi=1 --family exhaustive "
            "--max-rounds 50 --out " + (box / "dyn")) == 0);
  CHECK(fs::exists(box / "dyn/trace.jsonl"));
  const std::string final_profile = box / "dyn/final-profile.ncg";
  REQUIRE(fs::exists(final_profile));
  CHECK(run("verify --profile " + final_profile + " --family exhaustive") ==
        0);
}

TEST_CASE("sweep produces csv, json record and svg") {
  Sandbox box;
  CHECK(run("sweep --game sum --price reciprocal:lo=1,hi=10 --alpha 1,4 "
            "--n 3,4 --grid 8 --out " + (box / "sweep") + " --svg " +
            (box / "sweep/ratios.svg")) == 0);
  CHECK(fs::exists(box / "sweep/rows.csv"));
  CHECK(fs::exists(box / "sweep/rows.jsonl"));
  CHECK(fs::exists(box / "sweep/ratios.svg"));
  const std::string record = box / "sweep/record.json";
  REQUIRE(fs::exists(record));
  CHECK(run("report --record " + record + " --format csv --out-file " +
            (box / "again.csv")) == 0);
  CHECK(fs::exists(box / "again.csv"));
  CHECK(run("report --record " + record + " --format svg --out-file " +
            (box / "again.svg")) == 0);
}

TEST_CASE("sweep runs from a config file") {
  Sandbox box;
  const std::string config = box / "exp.cfg";
  qncg::write_file(config,
                   "game = sum\n"
                   "price = constant\n"
                   "alpha = 1,2\n"
                   "lo = 1\n"
                   "hi = 1\n"
                   "n = 3,4\n"
                   "grid = 2\n"
                   "family = exhaustive\n"
                   "out = " + (box / "cfg-out") + "\n");
  CHECK(run("sweep --config " + config) == 0);
  CHECK(fs::exists(box / "cfg-out/rows.csv"));
}

TEST_CASE("opt cross-checks the closed-form optimum") {
  CHECK(run("opt --game sum --n 3 --price constant:alpha=1,lo=1,hi=1 "
            "--out " + (Sandbox{} / "opt")) == 0);
}

TEST_CASE("invalid price specs exit 2") {
  CHECK(run("construct --game sum --n 4 --price linear:alpha=10,eps=0.1,lo=1,"
            "hi=9.8 --which ne") == 2);
  CHECK(run("construct --game sum --n 4 --price nope:alpha=1 --which ne") ==
        2);
}
