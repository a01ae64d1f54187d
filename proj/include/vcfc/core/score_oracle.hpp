// include/vcfc/core/score_oracle.hpp

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

#include "vcfc/core/types.hpp"

namespace vcfc {

// Raised by an oracle when it cannot score an input (e.g. nothing survives
// voice activity detection). Callers may drop the query and continue.
class OracleFailure : public Error {
 public:
  explicit OracleFailure(const std::string& msg) : Error(msg) {}
};

// The one surface the attacker side sees of a verifier: waveform in, scalar
// score out. The target identity is fixed when the oracle is constructed.
// Implementations must be stateless per call (safe for concurrent callers).
class ScoreOracle {
 public:
  virtual ~ScoreOracle() = default;
  virtual double score(const Waveform& w) const = 0;
};

}  // namespace vcfc
