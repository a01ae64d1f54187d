// include/vcfc/vcnet/checkpoint.hpp

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

#include "vcfc/vcnet/net.hpp"

namespace vcfc::vcnet {

// Versioned text checkpoint; values round-trip bit exactly. Loading rejects
// dimension mismatches.
void save_net(const std::string& path, const RecurrentConversionNet& net);
RecurrentConversionNet load_net(const std::string& path);

}  // namespace vcfc::vcnet
