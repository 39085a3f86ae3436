// src/model/autoencoder.cc

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

#include "f0vc/model/autoencoder.h"

#include "f0vc/common/error.h"
#include "f0vc/common/rng.h"

namespace f0vc {

using nn::Layer;
using nn::LayerKind;
using nn::LayerSpec;
using nn::Tape;
using nn::Tensor;

Vector SpeakerEmbedding::AsVector() const {
  if (index < 0 || index >= n_speakers)
    throw UsageError("speaker index " + std::to_string(index) + " outside [0, " +
                     std::to_string(n_speakers) + ")");
  Vector v = Vector::Zero(n_speakers);
  v[index] = 1.0;
  return v;
}

Matrix PadFrames(const Matrix &m, int multiple) {
  if (m.rows() == 0) throw DataError("cannot pad an empty frame matrix");
  const Eigen::Index padded = (m.rows() + multiple - 1) / multiple * multiple;
  Matrix out(padded, m.cols());
  out.topRows(m.rows()) = m;
  for (Eigen::Index r = m.rows(); r < padded; ++r) out.row(r) = m.row(m.rows() - 1);
  return out;
}

Autoencoder::Autoencoder(const ModelConfig &config, uint64_t seed) : config_(config) {
  config_.Validate();
  Rng rng(seed);
  const int s = config_.n_speakers;
  const int c = config_.conv_channels;
  auto make = [&](const LayerSpec &spec, const std::string &name) {
    return std::make_unique<Layer>(spec, store_, name, rng);
  };

  int width = config_.mel_dim + s;
  for (int i = 0; i < config_.n_enc_conv; ++i) {
    const std::string p = "encoder.conv" + std::to_string(i);
    enc_convs_.push_back(make({LayerKind::kConv5x1, width, 0, c, 0}, p));
    enc_convs_.push_back(make({LayerKind::kRelu, c}, p + ".relu"));
    enc_convs_.push_back(make({LayerKind::kBatchNorm, c}, p + ".bn"));
    width = c;
  }
  enc_lstm1_ = make({LayerKind::kBiLstm, c, 0, 0, config_.enc_cell}, "encoder.lstm0");
  enc_lstm2_ =
      make({LayerKind::kBiLstm, config_.CodeDim(), 0, 0, config_.enc_cell}, "encoder.lstm1");

  dec_in_ =
      make({LayerKind::kLinear, config_.DecoderInputDim(), config_.dec_cell}, "decoder.input");
  for (int i = 0; i < config_.n_dec_lstm; ++i)
    dec_lstms_.push_back(make({LayerKind::kLstm, config_.dec_cell, 0, 0, config_.dec_cell},
                              "decoder.lstm" + std::to_string(i)));
  dec_out_ = make({LayerKind::kLinear, config_.dec_cell, config_.mel_dim}, "decoder.output");

  width = config_.mel_dim;
  for (int i = 0; i < config_.postnet_layers; ++i) {
    const bool last = i + 1 == config_.postnet_layers;
    const int out = last ? config_.mel_dim : c;
    const std::string p = "decoder.postnet" + std::to_string(i);
    postnet_.push_back(make({LayerKind::kConv5x1, width, 0, out, 0}, p));
    postnet_.push_back(make({LayerKind::kBatchNorm, out}, p + ".bn"));
    if (!last) postnet_.push_back(make({LayerKind::kRelu, out}, p + ".relu"));
    width = out;
  }
}

void Autoencoder::FreezeEncoder() {
  for (const auto &e : store_.entries())
    if (e.name.rfind("encoder.", 0) == 0) {
      Tensor t = e.tensor;
      t.set_requires_grad(false);
    }
  encoder_frozen_ = true;
}

Tensor Autoencoder::SpeakerFrames(const std::vector<int> &speakers, int64_t frames) const {
  const int64_t b = static_cast<int64_t>(speakers.size());
  Tensor t({b, frames, config_.n_speakers});
  auto m = t.AsMatrix();
  for (int64_t n = 0; n < b; ++n) {
    if (speakers[n] < 0 || speakers[n] >= config_.n_speakers)
      throw UsageError("speaker index " + std::to_string(speakers[n]) + " outside the model's " +
                       std::to_string(config_.n_speakers) + " speakers");
    for (int64_t f = 0; f < frames; ++f) m(n * frames + f, speakers[n]) = 1.0;
  }
  return t;
}

Tensor Autoencoder::F0Frames(const std::vector<QuantizedF0> &bins) {
  const int64_t b = static_cast<int64_t>(bins.size());
  const int64_t frames = b ? static_cast<int64_t>(bins[0].size()) : 0;
  Tensor t({b, frames, kF0Classes});
  auto m = t.AsMatrix();
  for (int64_t n = 0; n < b; ++n) {
    if (static_cast<int64_t>(bins[n].size()) != frames)
      throw DataError("F0 sequences in a batch must share a length");
    for (int64_t f = 0; f < frames; ++f) {
      const int k = bins[n][f];
      if (k < 0 || k >= kF0Classes) throw DataError("F0 bin out of range: " + std::to_string(k));
      m(n * frames + f, k) = 1.0;
    }
  }
  return t;
}

Tensor Autoencoder::MelBatch(const std::vector<const Matrix *> &mels) {
  const int64_t b = static_cast<int64_t>(mels.size());
  if (b == 0) throw DataError("empty mel batch");
  const int64_t frames = mels[0]->rows(), dim = mels[0]->cols();
  Tensor t({b, frames, dim});
  auto m = t.AsMatrix();
  for (int64_t n = 0; n < b; ++n) {
    if (mels[n]->rows() != frames || mels[n]->cols() != dim)
      throw DataError("mel matrices in a batch must share a shape");
    m.middleRows(n * frames, frames) = *mels[n];
  }
  return t;
}

Tensor Autoencoder::EncodeBatch(Tape &tape, const Tensor &mel, const Tensor &speakers,
                                bool training) {
  if (mel.rank() != 3 || mel.dim(2) != config_.mel_dim)
    throw DataError("EncodeBatch: mel must be [B, T, " + std::to_string(config_.mel_dim) +
                    "], got " + nn::ShapeString(mel.shape()));
  const int64_t frames = mel.dim(1);
  if (frames == 0 || frames % config_.downsample != 0)
    throw DataError("EncodeBatch: frame count " + std::to_string(frames) +
                    " is not a positive multiple of " + std::to_string(config_.downsample));
  if (speakers.rank() != 3 || speakers.dim(2) != config_.n_speakers || speakers.dim(1) != frames ||
      speakers.dim(0) != mel.dim(0))
    throw DataError("EncodeBatch: speaker input " + nn::ShapeString(speakers.shape()) +
                    " does not match mel " + nn::ShapeString(mel.shape()) + " and " +
                    std::to_string(config_.n_speakers) + " speakers");
  const bool bn_training = training && !encoder_frozen_;
  const Tensor scaled =
      nn::Affine(tape, mel, 1.0 / config_.mel_std, -config_.mel_mean / config_.mel_std);
  Tensor h = nn::Concat(tape, {scaled, speakers});
  for (auto &layer : enc_convs_) h = layer->Forward(tape, h, bn_training);
  h = enc_lstm1_->Forward(tape, h, bn_training);
  h = enc_lstm2_->Forward(tape, h, bn_training);

  const int64_t ds = config_.downsample;
  const int64_t rows = frames / ds;
  std::vector<int64_t> fwd_idx(rows), bwd_idx(rows);
  for (int64_t k = 0; k < rows; ++k) {
    fwd_idx[k] = k * ds + ds - 1;
    bwd_idx[k] = k * ds;
  }
  const int64_t b = config_.enc_cell;
  Tensor fwd = nn::SelectFrames(tape, h, fwd_idx, 0, b);
  Tensor bwd = nn::SelectFrames(tape, h, bwd_idx, b, 2 * b);
  return nn::Concat(tape, {fwd, bwd});
}

Tensor Autoencoder::UpsampleBatch(Tape &tape, const Tensor &code, int64_t frames) const {
  if (code.rank() != 3 || code.dim(2) != config_.CodeDim())
    throw DataError("UpsampleBatch: bad code shape " + nn::ShapeString(code.shape()));
  if (frames != code.dim(1) * config_.downsample)
    throw DataError("UpsampleBatch: " + std::to_string(frames) + " frames requested for " +
                    std::to_string(code.dim(1)) + " code rows x " +
                    std::to_string(config_.downsample));
  return nn::RepeatFrames(tape, code, config_.downsample);
}

DecodeTensors Autoencoder::DecodeBatch(Tape &tape, const Tensor &code, const Tensor &speakers,
                                       const Tensor &f0, bool training) {
  const int64_t frames = code.dim(1) * config_.downsample;
  if (config_.use_f0 != f0.defined())
    throw DataError(config_.use_f0 ? "DecodeBatch: model is F0-conditioned but no F0 was given"
                                   : "DecodeBatch: model has no F0 input but F0 was given");
  if (speakers.rank() != 3 || speakers.dim(1) != frames || speakers.dim(0) != code.dim(0))
    throw DataError("DecodeBatch: speaker input " + nn::ShapeString(speakers.shape()) +
                    " does not match " + std::to_string(frames) + " frames");
  std::vector<Tensor> parts = {UpsampleBatch(tape, code, frames), speakers};
  if (f0.defined()) {
    if (f0.rank() != 3 || f0.dim(1) != frames || f0.dim(0) != code.dim(0) ||
        f0.dim(2) != kF0Classes)
      throw DataError("DecodeBatch: F0 input " + nn::ShapeString(f0.shape()) + " does not match " +
                      std::to_string(frames) + " frames of " + std::to_string(kF0Classes) +
                      " bins");
    parts.push_back(f0);
  }
  Tensor h = dec_in_->Forward(tape, nn::Concat(tape, parts), training);
  for (auto &lstm : dec_lstms_) h = lstm->Forward(tape, h, training);
  const Tensor pre_scaled = dec_out_->Forward(tape, h, training);
  Tensor r = pre_scaled;
  for (auto &layer : postnet_) r = layer->Forward(tape, r, training);
  const Tensor post_scaled = nn::Add(tape, pre_scaled, r);
  DecodeTensors out;
  out.mel_pre = nn::Affine(tape, pre_scaled, config_.mel_std, config_.mel_mean);
  out.mel_post = nn::Affine(tape, post_scaled, config_.mel_std, config_.mel_mean);
  return out;
}

void Autoencoder::CheckSpeaker(const SpeakerEmbedding &spk) const {
  if (spk.n_speakers != config_.n_speakers)
    throw DataError("speaker embedding has dimension " + std::to_string(spk.n_speakers) +
                    ", model expects " + std::to_string(config_.n_speakers));
  spk.AsVector();
}

ContentCode Autoencoder::Encode(const MelSpectrogram &mel, const SpeakerEmbedding &spk) {
  CheckSpeaker(spk);
  Tape tape(false);
  const Tensor m = MelBatch({&mel.frames});
  const Tensor code = EncodeBatch(tape, m, SpeakerFrames({spk.index}, mel.NumFrames()), false);
  ContentCode out;
  out.codes = code.AsMatrix();
  return out;
}

Matrix Autoencoder::Upsample(const ContentCode &code, int frames) const {
  Tape tape(false);
  Tensor c({1, code.codes.rows(), code.codes.cols()});
  c.AsMatrix() = code.codes;
  return UpsampleBatch(tape, c, frames).AsMatrix();
}

DecodeOutput Autoencoder::Decode(const ContentCode &code, const SpeakerEmbedding &spk,
                                 const std::optional<QuantizedF0> &f0) {
  CheckSpeaker(spk);
  const int64_t frames = code.codes.rows() * config_.downsample;
  if (f0 && static_cast<int64_t>(f0->size()) != frames)
    throw DataError("Decode: F0 has " + std::to_string(f0->size()) + " frames, code implies " +
                    std::to_string(frames));
  Tape tape(false);
  Tensor c({1, code.codes.rows(), code.codes.cols()});
  c.AsMatrix() = code.codes;
  const Tensor f0_frames = f0 ? F0Frames({*f0}) : Tensor();
  DecodeTensors t = DecodeBatch(tape, c, SpeakerFrames({spk.index}, frames), f0_frames, false);
  DecodeOutput out;
  out.mel_pre.frames = t.mel_pre.AsMatrix();
  out.mel_post.frames = t.mel_post.AsMatrix();
  return out;
}

MelSpectrogram Autoencoder::Convert(const MelSpectrogram &src_mel, const F0Contour &src_contour,
                                    const SpeakerF0Stats *src_stats,
                                    const SpeakerEmbedding &src_spk,
                                    const SpeakerEmbedding &tgt_spk, const F0Mode &mode) {
  if (!trained_) throw UsageError("Convert: model has not been trained");
  const int frames = src_mel.NumFrames();
  if (static_cast<int>(src_contour.size()) != frames)
    throw DataError("Convert: F0 contour has " + std::to_string(src_contour.size()) +
                    " frames, mel has " + std::to_string(frames));

  std::optional<QuantizedF0> bins;
  if (config_.use_f0) {
    if (std::holds_alternative<f0mode::Natural>(mode)) {
      if (src_stats == nullptr) throw DataError("Convert: natural F0 mode needs source statistics");
      bins = QuantizeContour(src_contour, *src_stats);
    } else if (const auto *flat = std::get_if<f0mode::Flat>(&mode)) {
      bins = FlatContour(src_contour, flat->bin);
    } else {
      bins = std::get<f0mode::External>(mode).bins;
      if (static_cast<int>(bins->size()) != frames)
        throw DataError("Convert: external F0 has " + std::to_string(bins->size()) +
                        " frames, source has " + std::to_string(frames));
    }
    // Pad with unvoiced frames, matching the training-time padding.
    const int padded = (frames + config_.downsample - 1) / config_.downsample * config_.downsample;
    bins->resize(padded, kUnvoicedBin);
  }
  MelSpectrogram padded;
  padded.frames = PadFrames(src_mel.frames, config_.downsample);
  const ContentCode code = Encode(padded, src_spk);
  DecodeOutput out = Decode(code, tgt_spk, bins);
  MelSpectrogram result;
  result.frames = out.mel_post.frames.topRows(frames);
  return result;
}

}  // namespace f0vc
