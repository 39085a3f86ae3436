// include/f0vc/model/autoencoder.h

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

#ifndef F0VC_MODEL_AUTOENCODER_H_
#define F0VC_MODEL_AUTOENCODER_H_

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "f0vc/codec/f0_codec.h"
#include "f0vc/common/matrix.h"
#include "f0vc/dsp/types.h"
#include "f0vc/model/model_config.h"
#include "f0vc/nn/layers.h"

namespace f0vc {

// One-hot speaker identity.
struct SpeakerEmbedding {
  int index = 0;
  int n_speakers = 0;

  Vector AsVector() const;
};

// T' x (2 * enc_cell): forward half in columns [0, B), backward half in
// [B, 2B). Row k summarizes frames [16k, 16k + 16).
struct ContentCode {
  Matrix codes;
};

struct DecodeOutput {
  MelSpectrogram mel_pre;
  MelSpectrogram mel_post;
};

// Batched tensors flowing through a forward pass.
struct DecodeTensors {
  nn::Tensor mel_pre;   // [B, T, 80]
  nn::Tensor mel_post;  // [B, T, 80]
};

namespace f0mode {
struct Natural {};
struct Flat {
  int bin = 128;
};
struct External {
  QuantizedF0 bins;
};
}  // namespace f0mode
using F0Mode = std::variant<f0mode::Natural, f0mode::Flat, f0mode::External>;

// Encoder: concat(mel, speaker) -> n_enc_conv x (conv5x1, ReLU, batchnorm)
// -> 2 x BiLSTM(enc_cell) -> downsample (forward state at frame 16k + 15,
// backward state at frame 16k).
// Decoder: concat(upsampled code, speaker, F0 one-hot) -> linear(dec_cell)
// -> n_dec_lstm x LSTM(dec_cell) -> linear(80) = mel_pre; postnet residual
// of postnet_layers convs gives mel_post = mel_pre + residual.
//
// Parameter names start with "encoder." or "decoder.".
class Autoencoder {
 public:
  Autoencoder(const ModelConfig &config, uint64_t seed);

  const ModelConfig &config() const { return config_; }
  nn::ParameterStore &params() { return store_; }
  const nn::ParameterStore &params() const { return store_; }

  bool trained() const { return trained_; }
  void set_trained(bool on) { trained_ = on; }

  // Marks encoder parameters as constants; the encoder then always runs
  // with its running batchnorm statistics.
  void FreezeEncoder();
  bool encoder_frozen() const { return encoder_frozen_; }

  // ---- batched, differentiable API ----
  // mel [B, T, 80], speakers [B, T, S] constant one-hots. T % downsample == 0.
  nn::Tensor EncodeBatch(nn::Tape &tape, const nn::Tensor &mel, const nn::Tensor &speakers,
                         bool training);
  nn::Tensor UpsampleBatch(nn::Tape &tape, const nn::Tensor &code, int64_t frames) const;
  // f0 is [B, T, 257] or undefined when use_f0 is false.
  DecodeTensors DecodeBatch(nn::Tape &tape, const nn::Tensor &code, const nn::Tensor &speakers,
                            const nn::Tensor &f0, bool training);

  // ---- single-utterance inference API ----
  ContentCode Encode(const MelSpectrogram &mel, const SpeakerEmbedding &spk);
  Matrix Upsample(const ContentCode &code, int frames) const;
  DecodeOutput Decode(const ContentCode &code, const SpeakerEmbedding &spk,
                      const std::optional<QuantizedF0> &f0);

  // Source mel -> target speaker. Natural mode quantizes the source contour
  // with the source speaker's statistics; flat mode forces voiced frames to
  // one bin; external mode uses caller bins. Inputs of any length are padded
  // to a multiple of `downsample` by repeating the last frame and the output
  // is cut back to the input length. Throws UsageError on an untrained model.
  MelSpectrogram Convert(const MelSpectrogram &src_mel, const F0Contour &src_contour,
                         const SpeakerF0Stats *src_stats, const SpeakerEmbedding &src_spk,
                         const SpeakerEmbedding &tgt_spk, const F0Mode &mode);

  // Constant input tensors.
  nn::Tensor SpeakerFrames(const std::vector<int> &speakers, int64_t frames) const;
  static nn::Tensor F0Frames(const std::vector<QuantizedF0> &bins);
  static nn::Tensor MelBatch(const std::vector<const Matrix *> &mels);

 private:
  void CheckSpeaker(const SpeakerEmbedding &spk) const;

  ModelConfig config_;
  nn::ParameterStore store_;
  std::vector<std::unique_ptr<nn::Layer>> enc_convs_;  // conv, relu, bn triples
  std::unique_ptr<nn::Layer> enc_lstm1_, enc_lstm2_;
  std::unique_ptr<nn::Layer> dec_in_;
  std::vector<std::unique_ptr<nn::Layer>> dec_lstms_;
  std::unique_ptr<nn::Layer> dec_out_;
  std::vector<std::unique_ptr<nn::Layer>> postnet_;  // conv, bn, [relu]
  bool trained_ = false;
  bool encoder_frozen_ = false;
};

// Pads T up to a multiple of `multiple` by repeating the last row.
Matrix PadFrames(const Matrix &m, int multiple);

}  // namespace f0vc

#endif  // F0VC_MODEL_AUTOENCODER_H_
