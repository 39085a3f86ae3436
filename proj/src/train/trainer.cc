// src/train/trainer.cc

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

#include "f0vc/train/trainer.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "f0vc/common/error.h"
#include "f0vc/nn/serialize.h"
#include "f0vc/train/augment.h"
#include "f0vc/train/loss.h"

namespace f0vc {

namespace {

constexpr char kMagic[8] = {'F', '0', 'V', 'C', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

nn::AdamOptions MakeAdamOptions(const TrainConfig &c) {
  nn::AdamOptions o;
  o.lr = c.lr;
  o.clip_norm = c.clip_norm;
  return o;
}

// Names of the tensors handed to Adam, in the same order.
std::vector<std::string> TrainableNames(const nn::ParameterStore &store) {
  std::vector<std::string> names;
  for (const auto &e : store.entries())
    if (e.trainable && e.tensor.requires_grad()) names.push_back(e.name);
  return names;
}

struct CheckpointHeader {
  ModelConfig model;
  TrainConfig train;
  int64_t iteration = 0;
  std::string rng_state;
  int64_t adam_step = 0;
  bool encoder_frozen = false;
  std::string speaker_table;
};

CheckpointHeader ReadHeader(std::istream &is) {
  char magic[sizeof kMagic];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw DataError("not a checkpoint file (bad magic bytes)");
  const uint32_t version = nn::ReadU32(is);
  if (version != kVersion)
    throw DataError("unsupported checkpoint version " + std::to_string(version) + " (expected " +
                    std::to_string(kVersion) + ")");
  CheckpointHeader h;
  h.model = ModelConfig::FromText(nn::ReadString(is));
  h.train = TrainConfig::FromText(nn::ReadString(is));
  h.iteration = static_cast<int64_t>(nn::ReadU64(is));
  h.rng_state = nn::ReadString(is);
  h.adam_step = static_cast<int64_t>(nn::ReadU64(is));
  h.encoder_frozen = nn::ReadU32(is) != 0;
  h.speaker_table = nn::ReadString(is);
  return h;
}

}  // namespace

void MelMoments(const TrainingSet &data, double *mean, double *stddev) {
  double sum = 0.0, sum_sq = 0.0, n = 0.0;
  for (const auto &u : data.utterances) {
    sum += u.mel.sum();
    sum_sq += u.mel.squaredNorm();
    n += static_cast<double>(u.mel.size());
  }
  if (n == 0) throw DataError("no mel frames in the training set");
  *mean = sum / n;
  *stddev = std::sqrt(std::max(sum_sq / n - *mean * *mean, 1e-12));
}

std::string ModelConfigDifference(const ModelConfig &a, const ModelConfig &b) {
  std::istringstream sa(a.ToText()), sb(b.ToText());
  std::string la, lb;
  while (std::getline(sa, la) && std::getline(sb, lb))
    if (la != lb) return la.substr(0, la.find('=')) + " (" + la + " vs " + lb + ")";
  return "";
}

Trainer::Trainer(std::unique_ptr<Autoencoder> model, const TrainConfig &config,
                 const AudioConfig &audio, const TrainingSet *data)
    : model_(std::move(model)),
      config_(config),
      audio_(audio),
      data_(data),
      adam_(model_->params().Trainable(), MakeAdamOptions(config)),
      rng_(config.seed) {
  config_.Validate();
  if (data_ == nullptr || data_->utterances.empty()) throw DataError("training set is empty");
  if (data_->NumSpeakers() != model_->config().n_speakers)
    throw DataError("training set has " + std::to_string(data_->NumSpeakers()) +
                    " speakers, model expects " + std::to_string(model_->config().n_speakers));
  for (const auto &u : data_->utterances) {
    if (u.mel.cols() != model_->config().mel_dim ||
        u.mel.rows() != static_cast<Eigen::Index>(u.f0.size()))
      throw DataError("utterance " + u.path + " has inconsistent features");
    if (u.speaker < 0 || u.speaker >= data_->NumSpeakers())
      throw DataError("utterance " + u.path + " has an invalid speaker index");
  }
}

std::unique_ptr<Autoencoder> Trainer::NewModel(ModelConfig config, const TrainingSet &data,
                                               uint64_t seed) {
  config.n_speakers = data.NumSpeakers();
  if (config.mel_mean == 0.0 && config.mel_std == 1.0)
    MelMoments(data, &config.mel_mean, &config.mel_std);
  return std::make_unique<Autoencoder>(config, seed);
}

LossRecord Trainer::Step() {
  const ModelConfig &mc = model_->config();
  const int batch = config_.batch_size;
  std::vector<AugmentedExample> examples;
  std::vector<int> speakers;
  int frames = 0;
  for (int n = 0; n < batch; ++n) {
    const int64_t pick = rng_.UniformInt(0, static_cast<int64_t>(data_->utterances.size()) - 1);
    const UtteranceFeatures &u = data_->utterances[pick];
    const AugmentParams p =
        SampleAugment(static_cast<int>(u.mel.rows()), audio_.FramesPerSecond(), config_, rng_);
    examples.push_back(ApplyAugment(u.mel, u.f0, p, mc.downsample));
    speakers.push_back(u.speaker);
    frames = std::max(frames, static_cast<int>(examples.back().mel.rows()));
  }

  // Pad every example to the batch length; padded frames are masked out.
  std::vector<const Matrix *> mel_ptrs;
  std::vector<QuantizedF0> f0_bins;
  nn::Tensor mask({batch, frames});
  auto mask_m = mask.AsMatrix();
  for (int n = 0; n < batch; ++n) {
    AugmentedExample &ex = examples[n];
    const int have = static_cast<int>(ex.mel.rows());
    if (have < frames) {
      Matrix padded(frames, ex.mel.cols());
      padded.topRows(have) = ex.mel;
      for (int r = have; r < frames; ++r) padded.row(r) = ex.mel.row(have - 1);
      ex.mel = std::move(padded);
      ex.f0.resize(frames, F0Frame{0.0, false});
    }
    for (int t = 0; t < ex.valid_frames; ++t) mask_m(n, t) = 1.0;
    mel_ptrs.push_back(&ex.mel);
    if (mc.use_f0) f0_bins.push_back(QuantizeContour(ex.f0, data_->stats[speakers[n]]));
  }

  nn::Tape tape;
  const nn::Tensor mel = Autoencoder::MelBatch(mel_ptrs);
  // Self-reconstruction: the decoder receives the same speaker identity as
  // the encoder.
  const nn::Tensor spk = model_->SpeakerFrames(speakers, frames);
  const nn::Tensor f0 = mc.use_f0 ? Autoencoder::F0Frames(f0_bins) : nn::Tensor();
  const nn::Tensor code = model_->EncodeBatch(tape, mel, spk, true);
  const DecodeTensors out = model_->DecodeBatch(tape, code, spk, f0, true);
  const nn::Tensor code_recon = model_->EncodeBatch(tape, out.mel_post, spk, true);
  const LossTerms loss =
      ReconLoss(tape, mel, out.mel_pre, out.mel_post, code, code_recon, config_.lambda, mask);

  LossRecord rec;
  rec.iteration = iteration_ + 1;
  rec.total = loss.total.item();
  rec.mel_pre = loss.mel_pre.item();
  rec.mel_post = loss.mel_post.item();
  rec.code = loss.code.item();
  if (!std::isfinite(rec.total))
    throw NumericError("non-finite loss at iteration " + std::to_string(rec.iteration));
  tape.Backward(loss.total);
  adam_.Step();
  ++iteration_;
  model_->set_trained(true);
  return rec;
}

void Trainer::Run(int64_t until, const std::function<void(const LossRecord &)> &on_step) {
  while (iteration_ < until) {
    const LossRecord r = Step();
    if (on_step) on_step(r);
  }
}

std::unique_ptr<Autoencoder> Trainer::ReleaseModel() {
  return std::move(model_);
}

void Trainer::Save(std::ostream &os) const {
  os.write(kMagic, sizeof kMagic);
  nn::WriteU32(os, kVersion);
  nn::WriteString(os, model_->config().ToText());
  nn::WriteString(os, config_.ToText());
  nn::WriteU64(os, static_cast<uint64_t>(iteration_));
  nn::WriteString(os, rng_.SaveState());
  nn::WriteU64(os, static_cast<uint64_t>(adam_.step_count()));
  nn::WriteU32(os, model_->encoder_frozen() ? 1 : 0);
  nn::WriteString(os, speaker_table_);
  nn::WriteTensors(os, model_->params().entries());

  const std::vector<std::string> names = TrainableNames(model_->params());
  auto &adam = const_cast<nn::Adam &>(adam_);
  std::vector<nn::NamedTensor> moments;
  for (size_t i = 0; i < names.size(); ++i) {
    moments.push_back({"m." + names[i], adam.first_moments()[i], true});
    moments.push_back({"v." + names[i], adam.second_moments()[i], true});
  }
  nn::WriteTensors(os, moments);
  if (!os) throw DataError("checkpoint write failed");
}

void Trainer::SaveFile(const std::string &path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("cannot write " + tmp);
    Save(os);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw DataError("cannot rename " + tmp);
}

void Trainer::Load(std::istream &is) {
  const CheckpointHeader h = ReadHeader(is);
  const std::string diff = ModelConfigDifference(model_->config(), h.model);
  if (!diff.empty()) throw DataError("checkpoint model config mismatch in " + diff);
  if (h.encoder_frozen != model_->encoder_frozen())
    throw DataError("checkpoint encoder-frozen flag does not match the model");
  nn::RestoreInto(model_->params(), nn::ReadTensors(is));

  const std::vector<std::string> names = TrainableNames(model_->params());
  const std::vector<nn::NamedTensor> moments = nn::ReadTensors(is);
  if (moments.size() != 2 * names.size())
    throw DataError("checkpoint optimizer state has " + std::to_string(moments.size()) +
                    " tensors, expected " + std::to_string(2 * names.size()));
  nn::ParameterStore adam_store;
  for (size_t i = 0; i < names.size(); ++i) {
    adam_store.Add("m." + names[i], adam_.first_moments()[i]);
    adam_store.Add("v." + names[i], adam_.second_moments()[i]);
  }
  nn::RestoreInto(adam_store, moments);
  adam_.set_step_count(h.adam_step);
  rng_.LoadState(h.rng_state);
  iteration_ = h.iteration;
  speaker_table_ = h.speaker_table;
  model_->set_trained(iteration_ > 0);
}

void Trainer::LoadFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open checkpoint " + path);
  Load(is);
}

LoadedModel LoadModelFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open checkpoint " + path);
  const CheckpointHeader h = ReadHeader(is);
  LoadedModel out;
  out.model = std::make_unique<Autoencoder>(h.model, 0);
  nn::RestoreInto(out.model->params(), nn::ReadTensors(is));
  if (h.encoder_frozen) out.model->FreezeEncoder();
  out.model->set_trained(h.iteration > 0);
  out.train_config = h.train;
  out.iteration = h.iteration;
  out.speaker_table = h.speaker_table;
  return out;
}

std::string LossCsvHeader() {
  return "iteration,loss_total,loss_mel_pre,loss_mel_post,loss_code";
}

std::string LossCsvRow(const LossRecord &r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%.17g",
                static_cast<long long>(r.iteration), r.total, r.mel_pre, r.mel_post, r.code);
  return buf;
}

}  // namespace f0vc
