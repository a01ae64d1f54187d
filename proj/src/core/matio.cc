// src/core/matio.cc

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

#include "vcfc/core/matio.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

namespace vcfc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& os, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << format_double(m(r, c));
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is, Eigen::Index rows, Eigen::Index cols,
                   const std::string& what) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!(is >> m(r, c))) {
        throw Error("truncated or malformed matrix while reading " + what);
      }
    }
  }
  return m;
}

void write_vector(std::ostream& os, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << format_double(v(i));
  }
  os << '\n';
}

Vector read_vector(std::istream& is, Eigen::Index size,
                   const std::string& what) {
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!(is >> v(i))) {
      throw Error("truncated or malformed vector while reading " + what);
    }
  }
  return v;
}

std::string read_token(std::istream& is, const std::string& what) {
  std::string tok;
  if (!(is >> tok)) throw Error("unexpected end of file while reading " + what);
  return tok;
}

long read_long(std::istream& is, const std::string& what) {
  long v = 0;
  if (!(is >> v)) throw Error("expected integer while reading " + what);
  return v;
}

double read_double(std::istream& is, const std::string& what) {
  double v = 0;
  if (!(is >> v)) throw Error("expected number while reading " + what);
  return v;
}

void expect_token(std::istream& is, const std::string& expected,
                  const std::string& what) {
  const std::string tok = read_token(is, what);
  if (tok != expected) {
    throw Error("while reading " + what + ": expected '" + expected +
                "', got '" + tok + "'");
  }
}

}  // namespace vcfc
