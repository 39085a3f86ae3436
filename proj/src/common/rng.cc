// src/common/rng.cc

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

#include "f0vc/common/rng.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "f0vc/common/error.h"

namespace f0vc {

int64_t Rng::UniformInt(int64_t lo, int64_t hi) {
  if (hi < lo) throw UsageError("Rng::UniformInt: empty range");
  const unsigned __int128 span = static_cast<unsigned __int128>(hi - lo) + 1;
  const unsigned __int128 scaled = span * engine_();
  return lo + static_cast<int64_t>(scaled >> 64);
}

double Rng::Normal() {
  double u1 = Uniform();
  const double u2 = Uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string Rng::SaveState() const {
  std::ostringstream os;
  os << engine_;
  return os.str();
}

void Rng::LoadState(const std::string &state) {
  std::istringstream is(state);
  is >> engine_;
  if (is.fail()) throw DataError("Rng::LoadState: malformed generator state");
}

}  // namespace f0vc
