// Copyright 2026 The GallinaC Authors.
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

#ifndef GALLINAC_TESTS_TESTUTIL_HPP_
#define GALLINAC_TESTS_TESTUTIL_HPP_

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gallinac/memory.hpp"
#include "gallinac/values.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(GALLINAC_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with the given argument string, capturing stdout only.
inline CliResult run_cli(const std::string& args,
                         const std::string& env = "") {
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string(GALLINAC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed: " + cmd);
  CliResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
    r.out.append(buf, n);
  }
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) {
    r.exit_code = WEXITSTATUS(status);
  }
  return r;
}

// Expected cell contents after reversing an in-place list of k nodes
// holding vals[0..k-1], where node i was allocated as block first + i
// with the payload at offset 0 and the next link at offset 1.  After
// reversal node i points at node i - 1 and the first node ends at null.
inline std::map<gallinac::Cell, gallinac::Value> reversed_list_cells(
    const std::vector<gallinac::Word>& vals, gallinac::BlockId first = 1) {
  std::map<gallinac::Cell, gallinac::Value> cells;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const gallinac::BlockId b = first + static_cast<gallinac::BlockId>(i);
    cells[{b, 0}] = gallinac::Value::nat(vals[i]);
    cells[{b, 1}] = i == 0 ? gallinac::Value::null()
                           : gallinac::Value::pointer({b - 1, 0});
  }
  return cells;
}

}  // namespace testutil

#endif  // GALLINAC_TESTS_TESTUTIL_HPP_
