// include/f0vc/nn/serialize.h

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

#ifndef F0VC_NN_SERIALIZE_H_
#define F0VC_NN_SERIALIZE_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "f0vc/nn/layers.h"

namespace f0vc::nn {

// Named-tensor container:
//   "F0VCTENS" u32 version u64 count
//   per tensor: u32 name_len, name bytes, u32 rank, rank x u64 dims,
//               little-endian float64 values.
void WriteTensors(std::ostream &os, const std::vector<NamedTensor> &tensors);

// Reads a container written by WriteTensors. Throws DataError on a bad
// magic, version or truncated stream.
std::vector<NamedTensor> ReadTensors(std::istream &is);

// Copies values from `loaded` into the store's tensors, matching by name and
// shape. Every store entry must be present.
void RestoreInto(const ParameterStore &store, const std::vector<NamedTensor> &loaded);

// Little-endian scalar helpers shared by the container formats.
void WriteU32(std::ostream &os, uint32_t v);
void WriteU64(std::ostream &os, uint64_t v);
void WriteF64(std::ostream &os, double v);
void WriteString(std::ostream &os, const std::string &s);
uint32_t ReadU32(std::istream &is);
uint64_t ReadU64(std::istream &is);
double ReadF64(std::istream &is);
std::string ReadString(std::istream &is);

}  // namespace f0vc::nn

#endif  // F0VC_NN_SERIALIZE_H_
