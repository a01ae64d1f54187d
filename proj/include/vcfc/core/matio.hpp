// include/vcfc/core/matio.hpp

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

#include <iosfwd>
#include <string>

#include "vcfc/core/types.hpp"

namespace vcfc {

// Doubles are written with 17 significant digits so that text checkpoints
// round-trip bit exactly.
std::string format_double(double v);

void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is, Eigen::Index rows, Eigen::Index cols,
                   const std::string& what);

void write_vector(std::ostream& os, const Vector& v);
Vector read_vector(std::istream& is, Eigen::Index size,
                   const std::string& what);

std::string read_token(std::istream& is, const std::string& what);
long read_long(std::istream& is, const std::string& what);
double read_double(std::istream& is, const std::string& what);
void expect_token(std::istream& is, const std::string& expected,
                  const std::string& what);

}  // namespace vcfc
