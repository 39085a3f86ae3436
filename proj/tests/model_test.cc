// tests/model_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "f0vc/common/error.h"
#include "f0vc/common/rng.h"
#include "f0vc/model/autoencoder.h"

using namespace f0vc;

namespace {

ModelConfig SmallConfig(bool use_f0 = true) {
  ModelConfig c;
  c.conv_channels = 24;
  c.dec_cell = 32;
  c.n_speakers = 3;
  c.use_f0 = use_f0;
  c.mel_mean = -5.0;
  c.mel_std = 2.0;
  return c;
}

MelSpectrogram RandomMel(int frames, uint64_t seed) {
  Rng rng(seed);
  MelSpectrogram m;
  m.frames.resize(frames, 80);
  for (Eigen::Index i = 0; i < m.frames.size(); ++i) m.frames.data()[i] = rng.Uniform(-9.0, -1.0);
  return m;
}

QuantizedF0 RampBins(int frames) {
  QuantizedF0 q(frames);
  for (int i = 0; i < frames; ++i) q[i] = (i % 5 == 4) ? kUnvoicedBin : (40 + 3 * i) % 256;
  return q;
}

F0Contour VoicedContour(int frames) {
  F0Contour c(frames);
  for (int i = 0; i < frames; ++i) c[i] = {120.0 + i, i % 4 != 3};
  return c;
}

SpeakerEmbedding Spk(int i) {
  return {i, 3};
}

}  // namespace

TEST_CASE("encode: T=32 gives a 2 x 32 code") {
  Autoencoder model(SmallConfig(), 1);
  const ContentCode c = model.Encode(RandomMel(32, 2), Spk(0));
  CHECK(c.codes.rows() == 2);
  CHECK(c.codes.cols() == 32);
}

TEST_CASE("encode: speaker identity changes the code") {
  Autoencoder model(SmallConfig(), 1);
  const MelSpectrogram mel = RandomMel(32, 3);
  const Matrix a = model.Encode(mel, Spk(0)).codes;
  const Matrix b = model.Encode(mel, Spk(2)).codes;
  CHECK((a - b).cwiseAbs().maxCoeff() > 1e-9);
}

TEST_CASE("encode: all-zero 16-frame mel gives a finite 1 x 32 code") {
  Autoencoder model(SmallConfig(), 1);
  MelSpectrogram mel;
  mel.frames = Matrix::Zero(16, 80);
  const Matrix c = model.Encode(mel, Spk(1)).codes;
  CHECK(c.rows() == 1);
  CHECK(c.cols() == 32);
  CHECK(c.allFinite());
}

TEST_CASE("encode errors") {
  Autoencoder model(SmallConfig(), 1);
  CHECK_THROWS_AS(model.Encode(RandomMel(20, 1), Spk(0)), DataError);
  CHECK_THROWS_AS(model.Encode(RandomMel(32, 1), SpeakerEmbedding{0, 4}), DataError);
  CHECK_THROWS_AS(model.Encode(RandomMel(32, 1), Spk(3)), UsageError);
}

TEST_CASE("upsample examples") {
  Autoencoder model(SmallConfig(), 1);
  Rng rng(7);
  ContentCode one;
  one.codes.resize(1, 32);
  for (Eigen::Index i = 0; i < 32; ++i) one.codes(0, i) = rng.Normal();
  const Matrix u1 = model.Upsample(one, 16);
  REQUIRE(u1.rows() == 16);
  for (int r = 0; r < 16; ++r) CHECK((u1.row(r) - one.codes.row(0)).cwiseAbs().maxCoeff() == 0.0);

  ContentCode two;
  two.codes.resize(2, 32);
  for (Eigen::Index i = 0; i < two.codes.size(); ++i) two.codes.data()[i] = rng.Normal();
  const Matrix u2 = model.Upsample(two, 32);
  for (int r = 0; r < 32; ++r)
    CHECK((u2.row(r) - two.codes.row(r / 16)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(model.Upsample(two, 31), DataError);
}

TEST_CASE("upsample of an encoded code is piecewise constant with breaks at multiples of 16") {
  Autoencoder model(SmallConfig(), 2);
  const int frames = 64;
  const Matrix u = model.Upsample(model.Encode(RandomMel(frames, 8), Spk(1)), frames);
  for (int r = 1; r < frames; ++r) {
    const bool same = (u.row(r) - u.row(r - 1)).cwiseAbs().maxCoeff() == 0.0;
    CHECK(same == (r % 16 != 0));
  }
}

TEST_CASE("decode shapes and F0 sensitivity") {
  Autoencoder model(SmallConfig(), 3);
  const ContentCode code = model.Encode(RandomMel(32, 9), Spk(0));
  QuantizedF0 f0 = RampBins(32);
  const DecodeOutput a = model.Decode(code, Spk(1), f0);
  CHECK(a.mel_pre.NumFrames() == 32);
  CHECK(a.mel_pre.NumBins() == 80);
  CHECK(a.mel_post.NumFrames() == 32);
  CHECK(a.mel_post.NumBins() == 80);
  f0[10] = (f0[10] + 17) % 256;
  const DecodeOutput b = model.Decode(code, Spk(1), f0);
  CHECK((a.mel_post.frames - b.mel_post.frames).cwiseAbs().maxCoeff() > 1e-12);
  // The decoder LSTMs are causal: frames before the change are untouched in
  // mel_pre.
  CHECK((a.mel_pre.frames.topRows(10) - b.mel_pre.frames.topRows(10)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decode errors") {
  Autoencoder model(SmallConfig(), 3);
  const ContentCode code = model.Encode(RandomMel(32, 9), Spk(0));
  CHECK_THROWS_AS(model.Decode(code, Spk(0), RampBins(31)), DataError);
  CHECK_THROWS_AS(model.Decode(code, Spk(0), std::nullopt), DataError);
}

TEST_CASE("baseline model decodes without F0") {
  Autoencoder model(SmallConfig(false), 3);
  const ContentCode code = model.Encode(RandomMel(32, 9), Spk(0));
  const DecodeOutput out = model.Decode(code, Spk(2), std::nullopt);
  CHECK(out.mel_post.NumFrames() == 32);
  CHECK(out.mel_post.NumBins() == 80);
  CHECK_THROWS_AS(model.Decode(code, Spk(2), RampBins(32)), DataError);
}

TEST_CASE("F0 and baseline models differ only in the decoder input width") {
  Autoencoder with(SmallConfig(true), 11);
  Autoencoder without(SmallConfig(false), 11);
  const auto &a = with.params().entries();
  const auto &b = without.params().entries();
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    if (a[i].name == "decoder.input.weight") {
      CHECK(a[i].tensor.dim(0) == b[i].tensor.dim(0) + kF0Classes);
      CHECK(a[i].tensor.dim(1) == b[i].tensor.dim(1));
    } else {
      CHECK(a[i].tensor.shape() == b[i].tensor.shape());
    }
  }
  CHECK(with.config().DecoderInputDim() - without.config().DecoderInputDim() == kF0Classes);
}

TEST_CASE("code size per utterance") {
  ModelConfig c = SmallConfig();
  CHECK(c.CodeDim() == 32);
  Autoencoder model(c, 4);
  const Matrix code = model.Encode(RandomMel(160, 1), Spk(0)).codes;
  CHECK(code.rows() == 10);
  CHECK(code.cols() == 32);
}

TEST_CASE("convert refuses an untrained model") {
  Autoencoder model(SmallConfig(), 3);
  const MelSpectrogram mel = RandomMel(32, 1);
  const SpeakerF0Stats stats{std::log(130.0), 0.2, 500};
  CHECK_THROWS_AS(model.Convert(mel, VoicedContour(32), &stats, Spk(0), Spk(1), f0mode::Natural{}),
                  UsageError);
}

TEST_CASE("convert modes") {
  Autoencoder model(SmallConfig(), 3);
  model.set_trained(true);
  const int frames = 37;
  const MelSpectrogram mel = RandomMel(frames, 1);
  const F0Contour contour = VoicedContour(frames);
  const SpeakerF0Stats stats{std::log(130.0), 0.2, 500};

  const MelSpectrogram natural =
      model.Convert(mel, contour, &stats, Spk(0), Spk(1), f0mode::Natural{});
  CHECK(natural.NumFrames() == frames);
  CHECK(natural.NumBins() == 80);
  CHECK(natural.frames.allFinite());

  // Natural mode equals external mode with the source-normalized bins.
  const MelSpectrogram ext = model.Convert(mel, contour, nullptr, Spk(0), Spk(1),
                                           f0mode::External{QuantizeContour(contour, stats)});
  CHECK((natural.frames - ext.frames).cwiseAbs().maxCoeff() == 0.0);

  const MelSpectrogram flat =
      model.Convert(mel, contour, nullptr, Spk(0), Spk(1), f0mode::Flat{128});
  CHECK(flat.NumFrames() == frames);
  CHECK((flat.frames - natural.frames).cwiseAbs().maxCoeff() > 0.0);

  const MelSpectrogram silent = model.Convert(mel, contour, nullptr, Spk(0), Spk(1),
                                              f0mode::External{QuantizedF0(frames, kUnvoicedBin)});
  CHECK(silent.NumFrames() == frames);
  CHECK(silent.frames.allFinite());

  CHECK_THROWS_AS(model.Convert(mel, contour, nullptr, Spk(0), Spk(1), f0mode::Natural{}),
                  DataError);
  CHECK_THROWS_AS(model.Convert(mel, contour, nullptr, Spk(0), Spk(1),
                                f0mode::External{QuantizedF0(frames - 1, 3)}),
                  DataError);
  CHECK_THROWS_AS(
      model.Convert(mel, VoicedContour(frames - 1), &stats, Spk(0), Spk(1), f0mode::Natural{}),
      DataError);
}

TEST_CASE("flat mode conditions every voiced frame on the same bin") {
  const F0Contour contour = VoicedContour(40);
  const QuantizedF0 bins = FlatContour(contour, 128);
  const nn::Tensor onehot = Autoencoder::F0Frames({bins});
  const auto m = onehot.AsMatrix();
  int first_voiced = -1;
  for (int i = 0; i < 40; ++i) {
    if (!contour[i].voiced) {
      CHECK(m(i, kUnvoicedBin) == 1.0);
      continue;
    }
    if (first_voiced < 0) first_voiced = i;
    CHECK((m.row(i) - m.row(first_voiced)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("convert output length equals input length for any length") {
  Autoencoder model(SmallConfig(false), 3);
  model.set_trained(true);
  for (int frames : {1, 15, 16, 17, 50}) {
    const MelSpectrogram out = model.Convert(RandomMel(frames, frames), VoicedContour(frames),
                                             nullptr, Spk(2), Spk(0), f0mode::Natural{});
    CHECK(out.NumFrames() == frames);
  }
}

TEST_CASE("PadFrames repeats the last row") {
  Matrix m(3, 2);
  m << 1, 2, 3, 4, 5, 6;
  const Matrix p = PadFrames(m, 4);
  REQUIRE(p.rows() == 4);
  CHECK(p(3, 0) == 5);
  CHECK(p(3, 1) == 6);
  CHECK(PadFrames(p, 4).rows() == 4);
}

TEST_CASE("frozen encoder parameters stop requiring gradients") {
  Autoencoder model(SmallConfig(), 3);
  model.FreezeEncoder();
  for (const auto &e : model.params().entries()) {
    if (e.name.rfind("encoder.", 0) == 0) CHECK_FALSE(e.tensor.requires_grad());
  }
  CHECK_FALSE(model.params().TrainableWithPrefix("decoder.").empty());
  CHECK(model.params().TrainableWithPrefix("encoder.").empty());
}

TEST_CASE("model config text round trip and validation") {
  ModelConfig c = SmallConfig();
  c.mel_mean = -4.123456789012345;
  CHECK(ModelConfig::FromText(c.ToText()) == c);
  CHECK_THROWS_AS(c.Set("bogus", "1"), UsageError);
  CHECK_THROWS_AS(c.Set("enc_cell", "x"), UsageError);
  ModelConfig bad = SmallConfig();
  bad.downsample = 0;
  CHECK_THROWS_AS(bad.Validate(), UsageError);
  bad = SmallConfig();
  bad.f0_bins = 256;
  CHECK_THROWS_AS(bad.Validate(), UsageError);
}
