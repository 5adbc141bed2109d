// Copyright 2026 The Seedguard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared helpers for the unit tests.

#ifndef SEEDGUARD_TESTS_SUPPORT_HPP_
#define SEEDGUARD_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "seedguard/frontend.hpp"

namespace seedguard::testing {

inline std::filesystem::path corpus_dir() { return SEEDGUARD_CORPUS_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program load_corpus(const std::string& file) {
  return parse_program(read_text(corpus_dir() / file));
}

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
    if (e.path().extension() == ".mpl") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace seedguard::testing

#endif  // SEEDGUARD_TESTS_SUPPORT_HPP_
