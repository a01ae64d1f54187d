// src/harness/manifest.cc

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

#include "vcfc/harness/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace vcfc::harness {

std::vector<ManifestRow> Manifest::rows_for(const std::string& speaker,
                                            const std::string& split) const {
  std::vector<ManifestRow> out;
  for (const ManifestRow& r : rows) {
    if (r.speaker_id == speaker && r.split == split) out.push_back(r);
  }
  return out;
}

std::vector<ManifestRow> Manifest::rows_with_split(const std::string& split) const {
  std::vector<ManifestRow> out;
  for (const ManifestRow& r : rows) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

std::string Manifest::sex_of(const std::string& speaker) const {
  for (const ManifestRow& r : rows) {
    if (r.speaker_id == speaker) return r.sex;
  }
  throw Error("speaker not in manifest: " + speaker);
}

namespace {

std::vector<std::string> ordered_unique_speakers(const Manifest& m) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const ManifestRow& r : m.rows) {
    if (seen.insert(r.speaker_id).second) out.push_back(r.speaker_id);
  }
  return out;
}

}  // namespace

std::vector<std::string> Manifest::target_speakers() const {
  std::vector<std::string> out;
  for (const std::string& s : ordered_unique_speakers(*this)) {
    if (!rows_for(s, "train").empty() && !rows_for(s, "validation").empty()) {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<std::string> Manifest::background_speakers() const {
  std::vector<std::string> out;
  for (const std::string& s : ordered_unique_speakers(*this)) {
    if (!rows_for(s, "train").empty() && rows_for(s, "validation").empty()) {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<std::string> Manifest::imposter_speakers() const {
  std::vector<std::string> out;
  for (const std::string& s : ordered_unique_speakers(*this)) {
    if (!rows_for(s, "trial").empty()) out.push_back(s);
  }
  return out;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open manifest: " + path);
  Manifest m;
  std::set<std::string> seen;
  std::vector<std::string> missing;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ManifestRow r;
    if (!(std::getline(ls, r.utt_id, '\t') && std::getline(ls, r.speaker_id, '\t') &&
          std::getline(ls, r.sex, '\t') && std::getline(ls, r.path, '\t') &&
          std::getline(ls, r.split))) {
      throw Error("malformed manifest line in " + path + ": " + line);
    }
    if (r.split != "train" && r.split != "validation" && r.split != "trial") {
      throw Error("manifest row " + r.utt_id + " has unknown split " + r.split);
    }
    if (!seen.insert(r.utt_id).second) {
      throw Error("duplicate utterance id in manifest: " + r.utt_id);
    }
    if (!std::filesystem::exists(r.path)) missing.push_back(r.path);
    m.rows.push_back(std::move(r));
  }
  if (!missing.empty()) {
    std::string msg = "manifest references missing audio:";
    for (const std::string& p : missing) msg += " " + p;
    throw Error(msg);
  }
  return m;
}

void save_manifest(const std::string& path, const Manifest& manifest) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write manifest: " + path);
  for (const ManifestRow& r : manifest.rows) {
    os << r.utt_id << '\t' << r.speaker_id << '\t' << r.sex << '\t' << r.path
       << '\t' << r.split << '\n';
  }
  if (!os) throw Error("short write to manifest: " + path);
}

}  // namespace vcfc::harness
