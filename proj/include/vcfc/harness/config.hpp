// include/vcfc/harness/config.hpp

// Copyright 2026  The vcfc authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "vcfc/core/types.hpp"

namespace vcfc::harness {

// Flat "section.key = value" configuration with a fixed key registry.
// Unknown keys are rejected; values are canonicalized by type, so the config
// hash identifies the effective settings regardless of formatting.
class Config {
 public:
  Config();  // all defaults

  static Config from_file(const std::string& path);
  void apply_line(const std::string& line);         // "key = value"
  void set(const std::string& key, const std::string& value);

  long get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  bool get_bool(const std::string& key) const;  // int key, nonzero = true
  std::uint64_t get_seed(const std::string& key) const;

  // Sorted "key = value" lines with canonical number formatting.
  std::string canonical_text() const;
  // FNV-1a 64-bit digest of the canonical text, as 16 hex digits.
  std::string hash() const;

  void save(const std::string& path) const;

 private:
  enum class Kind { integer, real, text };
  struct Entry {
    Kind kind;
    std::string value;  // canonical
  };
  const Entry& find(const std::string& key) const;
  std::map<std::string, Entry> entries_;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace vcfc::harness
