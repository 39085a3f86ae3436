// include/f0vc/model/model_config.h

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

#ifndef F0VC_MODEL_MODEL_CONFIG_H_
#define F0VC_MODEL_MODEL_CONFIG_H_

#include <map>
#include <string>

namespace f0vc {

// Architecture of the F0-conditioned autoencoder. The defaults are the
// full-size network; desk-scale runs shrink the widths through the config.
struct ModelConfig {
  int mel_dim = 80;
  int conv_channels = 512;
  int n_enc_conv = 3;
  int enc_cell = 16;  // bottleneck width per direction
  int downsample = 16;
  int n_dec_lstm = 3;
  int dec_cell = 512;
  int postnet_layers = 5;
  int n_speakers = 0;
  int f0_bins = 257;
  bool use_f0 = true;
  // Fixed affine feature scaling: the network sees (mel - mel_mean) / mel_std.
  double mel_mean = 0.0;
  double mel_std = 1.0;

  void Validate() const;

  int CodeDim() const { return 2 * enc_cell; }
  int DecoderInputDim() const { return CodeDim() + n_speakers + (use_f0 ? f0_bins : 0); }

  // key=value lines, stable order.
  std::string ToText() const;
  static ModelConfig FromText(const std::string &text);
  // Applies recognised keys (without a section prefix); throws UsageError on
  // unknown ones.
  void Set(const std::string &key, const std::string &value);

  bool operator==(const ModelConfig &) const = default;
};

}  // namespace f0vc

#endif  // F0VC_MODEL_MODEL_CONFIG_H_
