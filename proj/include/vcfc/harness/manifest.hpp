// include/vcfc/harness/manifest.hpp

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

#include <string>
#include <vector>

#include "vcfc/core/types.hpp"

namespace vcfc::harness {

// One audio file. split is "train", "validation" or "trial".
struct ManifestRow {
  std::string utt_id;
  std::string speaker_id;
  std::string sex;  // "m" or "f"
  std::string path;
  std::string split;
};

struct Manifest {
  std::vector<ManifestRow> rows;

  std::vector<ManifestRow> rows_for(const std::string& speaker,
                                    const std::string& split) const;
  std::vector<ManifestRow> rows_with_split(const std::string& split) const;
  std::string sex_of(const std::string& speaker) const;

  // Speaker roles are implied by splits: targets have both train and
  // validation rows, background speakers have train rows only, imposters
  // have trial rows.
  std::vector<std::string> target_speakers() const;
  std::vector<std::string> background_speakers() const;
  std::vector<std::string> imposter_speakers() const;
};

// Tab-separated "utt_id speaker_id sex path split". Loading checks utterance
// id uniqueness and that every referenced path exists.
Manifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const Manifest& manifest);

}  // namespace vcfc::harness
