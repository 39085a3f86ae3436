// src/nn/serialize.cc

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

#include "f0vc/nn/serialize.h"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "f0vc/common/error.h"

namespace f0vc::nn {

static_assert(std::endian::native == std::endian::little,
              "tensor container assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'F', '0', 'V', 'C', 'T', 'E', 'N', 'S'};
constexpr uint32_t kVersion = 1;

template <typename T>
void WritePod(std::ostream &os, T v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof v);
}

template <typename T>
T ReadPod(std::istream &is) {
  T v{};
  is.read(reinterpret_cast<char *>(&v), sizeof v);
  if (!is) throw DataError("unexpected end of stream (truncated file)");
  return v;
}
}  // namespace

void WriteU32(std::ostream &os, uint32_t v) {
  WritePod(os, v);
}
void WriteU64(std::ostream &os, uint64_t v) {
  WritePod(os, v);
}
void WriteF64(std::ostream &os, double v) {
  WritePod(os, v);
}
void WriteString(std::ostream &os, const std::string &s) {
  WriteU32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}
uint32_t ReadU32(std::istream &is) {
  return ReadPod<uint32_t>(is);
}
uint64_t ReadU64(std::istream &is) {
  return ReadPod<uint64_t>(is);
}
double ReadF64(std::istream &is) {
  return ReadPod<double>(is);
}
std::string ReadString(std::istream &is) {
  const uint32_t len = ReadU32(is);
  if (len > (1u << 20)) throw DataError("implausible string length in stream");
  std::string s(len, '\0');
  is.read(s.data(), len);
  if (!is) throw DataError("unexpected end of stream (truncated file)");
  return s;
}

void WriteTensors(std::ostream &os, const std::vector<NamedTensor> &tensors) {
  os.write(kMagic, sizeof kMagic);
  WriteU32(os, kVersion);
  WriteU64(os, tensors.size());
  for (const auto &nt : tensors) {
    WriteString(os, nt.name);
    WriteU32(os, nt.trainable ? 1u : 0u);
    WriteU32(os, static_cast<uint32_t>(nt.tensor.rank()));
    for (int64_t d : nt.tensor.shape()) WriteU64(os, static_cast<uint64_t>(d));
    const auto v = nt.tensor.values();
    os.write(reinterpret_cast<const char *>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
  }
  if (!os) throw DataError("failed writing tensor container");
}

std::vector<NamedTensor> ReadTensors(std::istream &is) {
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw DataError("bad magic: not a tensor container");
  const uint32_t version = ReadU32(is);
  if (version != kVersion)
    throw DataError("unsupported tensor container version " + std::to_string(version));
  const uint64_t count = ReadU64(is);
  if (count > (1u << 20)) throw DataError("implausible tensor count");
  std::vector<NamedTensor> out;
  for (uint64_t i = 0; i < count; ++i) {
    NamedTensor nt;
    nt.name = ReadString(is);
    nt.trainable = ReadU32(is) != 0;
    const uint32_t rank = ReadU32(is);
    if (rank > 8) throw DataError("implausible tensor rank for " + nt.name);
    Shape shape(rank);
    for (auto &d : shape) {
      d = static_cast<int64_t>(ReadU64(is));
      if (d < 0 || d > (1 << 28)) throw DataError("implausible dimension for " + nt.name);
    }
    std::vector<double> values(NumElements(shape));
    is.read(reinterpret_cast<char *>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!is) throw DataError("truncated tensor data for " + nt.name);
    nt.tensor = Tensor(shape, std::move(values), nt.trainable);
    out.push_back(std::move(nt));
  }
  return out;
}

void RestoreInto(const ParameterStore &store, const std::vector<NamedTensor> &loaded) {
  for (const auto &e : store.entries()) {
    const NamedTensor *src = nullptr;
    for (const auto &l : loaded)
      if (l.name == e.name) src = &l;
    if (src == nullptr) throw DataError("missing tensor in container: " + e.name);
    if (src->tensor.shape() != e.tensor.shape())
      throw DataError("shape mismatch for " + e.name + ": stored " +
                      ShapeString(src->tensor.shape()) + ", expected " +
                      ShapeString(e.tensor.shape()));
    Tensor dst = e.tensor;
    std::copy(src->tensor.values().begin(), src->tensor.values().end(), dst.values().begin());
  }
}

}  // namespace f0vc::nn
