// src/dsp/matrix_io.cc

// Copyright 2026  The f0vc Authors

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

#include "f0vc/dsp/matrix_io.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "f0vc/common/error.h"

namespace f0vc {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

namespace {
constexpr char kMagic[8] = {'F', '0', 'V', 'C', 'M', 'A', 'T', '\0'};
constexpr uint32_t kVersion = 1;
}  // namespace

void WriteMatrix(const std::string &path, const Matrix &m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write matrix file: " + path);
  const uint64_t rows = m.rows(), cols = m.cols();
  os.write(kMagic, sizeof kMagic);
  os.write(reinterpret_cast<const char *>(&kVersion), sizeof kVersion);
  os.write(reinterpret_cast<const char *>(&rows), sizeof rows);
  os.write(reinterpret_cast<const char *>(&cols), sizeof cols);
  os.write(reinterpret_cast<const char *>(m.data()),
           static_cast<std::streamsize>(rows * cols * sizeof(double)));
  if (!os) throw DataError("write failed: " + path);
}

Matrix ReadMatrix(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open matrix file: " + path);
  char magic[8];
  uint32_t version = 0;
  uint64_t rows = 0, cols = 0;
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw DataError("bad magic in matrix file: " + path);
  is.read(reinterpret_cast<char *>(&version), sizeof version);
  is.read(reinterpret_cast<char *>(&rows), sizeof rows);
  is.read(reinterpret_cast<char *>(&cols), sizeof cols);
  if (!is) throw DataError("truncated matrix header: " + path);
  if (version != kVersion)
    throw DataError("unsupported matrix version " + std::to_string(version) + " in " + path);
  if (rows > (1u << 28) || cols > (1u << 16)) throw DataError("implausible matrix size in " + path);
  Matrix m(rows, cols);
  is.read(reinterpret_cast<char *>(m.data()),
          static_cast<std::streamsize>(rows * cols * sizeof(double)));
  if (!is) throw DataError("truncated matrix data: " + path);
  return m;
}

void WriteMatrixCsv(const std::string &path, const Matrix &m) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot write CSV file: " + path);
  os << std::setprecision(10);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
    os << '\n';
  }
}

Matrix ContourToMatrix(const F0Contour &contour) {
  Matrix m(static_cast<Eigen::Index>(contour.size()), 2);
  for (size_t t = 0; t < contour.size(); ++t) {
    m(t, 0) = contour[t].voiced ? contour[t].f0_hz : 0.0;
    m(t, 1) = contour[t].voiced ? 1.0 : 0.0;
  }
  return m;
}

F0Contour MatrixToContour(const Matrix &m) {
  if (m.cols() != 2) throw DataError("F0 matrix must have two columns (f0_hz, voiced)");
  F0Contour c(m.rows());
  for (Eigen::Index t = 0; t < m.rows(); ++t) {
    c[t].voiced = m(t, 1) > 0.5;
    c[t].f0_hz = c[t].voiced ? m(t, 0) : 0.0;
    if (c[t].voiced && !(std::isfinite(c[t].f0_hz) && c[t].f0_hz > 0.0))
      throw DataError("voiced frame with invalid f0 at row " + std::to_string(t));
  }
  return c;
}

}  // namespace f0vc
