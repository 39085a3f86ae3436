// include/f0vc/train/train_config.h

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

#ifndef F0VC_TRAIN_TRAIN_CONFIG_H_
#define F0VC_TRAIN_TRAIN_CONFIG_H_

#include <cstdint>
#include <string>

namespace f0vc {

struct TrainConfig {
  double lr = 1e-4;
  int batch_size = 2;
  int64_t iterations = 20000;
  double lambda = 1.0;  // weight of the content-code term
  double crop_min_s = 1.0;
  double crop_max_s = 3.0;
  double stretch_min = 0.7;
  double stretch_max = 1.35;
  double gain_min = 0.1;
  double gain_max = 1.0;
  double clip_norm = 1.0;
  uint64_t seed = 1;
  int64_t checkpoint_every = 0;  // 0 writes only the final checkpoint

  void Validate() const;
  std::string ToText() const;
  static TrainConfig FromText(const std::string &text);
  void Set(const std::string &key, const std::string &value);

  bool operator==(const TrainConfig &) const = default;
};

}  // namespace f0vc

#endif  // F0VC_TRAIN_TRAIN_CONFIG_H_
