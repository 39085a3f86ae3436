// tests/eval_test.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "f0vc/common/error.h"
#include "f0vc/common/rng.h"
#include "f0vc/eval/metrics.h"
#include "f0vc/eval/report.h"
#include "f0vc/eval/study.h"
#include "f0vc/train/corpus.h"

using namespace f0vc;
namespace fs = std::filesystem;

namespace {

const HistogramEdges kEdges = HistogramEdges::FromAudio(AudioConfig{});

F0Contour Constant(double hz, int frames, bool voiced = true) {
  return F0Contour(frames, F0Frame{voiced ? hz : 0.0, voiced});
}

F0Contour RandomContour(int frames, double center, Rng &rng) {
  F0Contour c(frames);
  for (auto &f : c) {
    f.voiced = rng.Uniform() < 0.8;
    f.f0_hz = f.voiced ? center * std::exp(0.2 * rng.Normal()) : 0.0;
  }
  return c;
}

}  // namespace

TEST_CASE("histogram of a constant 200 Hz set") {
  const F0Histogram h = BuildHistogram({Constant(200.0, 50), Constant(0.0, 20, false)}, kEdges);
  const int bin = kEdges.BinOf(std::log(200.0));
  CHECK(h.mass[bin] == 1.0);
  CHECK(h.total == 50);
  double sum = 0;
  for (double m : h.mass) sum += m;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("histogram of two equal sets at 150 and 300 Hz") {
  const F0Histogram h = BuildHistogram({Constant(150.0, 40), Constant(300.0, 40)}, kEdges);
  CHECK(h.mass[kEdges.BinOf(std::log(150.0))] == 0.5);
  CHECK(h.mass[kEdges.BinOf(std::log(300.0))] == 0.5);
}

TEST_CASE("histogram of a set is the count-weighted merge of per-utterance histograms") {
  Rng rng(1);
  std::vector<F0Contour> set;
  std::vector<F0Histogram> parts;
  for (int i = 0; i < 7; ++i) {
    set.push_back(RandomContour(30 + 10 * i, 120.0 + 20 * i, rng));
    parts.push_back(BuildHistogram({set.back()}, kEdges));
  }
  const F0Histogram whole = BuildHistogram(set, kEdges);
  const F0Histogram merged = MergeHistograms(parts);
  for (int b = 0; b < kEdges.bins; ++b)
    CHECK(merged.mass[b] == doctest::Approx(whole.mass[b]).epsilon(1e-14));
}

TEST_CASE("histogram errors") {
  CHECK_THROWS_AS(BuildHistogram({Constant(0.0, 10, false)}, kEdges), DataError);
  HistogramEdges other = kEdges;
  other.bins = 32;
  const F0Histogram a = BuildHistogram({Constant(200.0, 5)}, kEdges);
  const F0Histogram b = BuildHistogram({Constant(200.0, 5)}, other);
  CHECK_THROWS_AS(MergeHistograms({a, b}), DataError);
  CHECK_THROWS_AS(JsDivergence(a, b), DataError);
}

TEST_CASE("js divergence examples") {
  const F0Histogram a = BuildHistogram({Constant(120.0, 10), Constant(240.0, 30)}, kEdges);
  const F0Histogram b = BuildHistogram({Constant(300.0, 10)}, kEdges);
  const F0Histogram c = BuildHistogram({Constant(120.0, 10)}, kEdges);
  CHECK(JsDivergence(a, a) == 0.0);
  CHECK(JsDivergence(c, b) == doctest::Approx(std::log(2.0)));
  CHECK(JsDivergence(a, b) == JsDivergence(b, a));
  // Oracle: 0.5 KL(p||m) + 0.5 KL(q||m) with p = (1/4, 3/4, 0), q = (1, 0, 0).
  const double m0 = 0.625, m1 = 0.375;
  const double expect = 0.5 * (0.25 * std::log(0.25 / m0) + 0.75 * std::log(0.75 / m1)) +
                        0.5 * (1.0 * std::log(1.0 / m0));
  CHECK(JsDivergence(a, c) == doctest::Approx(expect));
}

TEST_CASE("js divergence is bounded and symmetric on random histograms") {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const F0Histogram a = BuildHistogram({RandomContour(80, rng.Uniform(80, 300), rng)}, kEdges);
    const F0Histogram b = BuildHistogram({RandomContour(80, rng.Uniform(80, 300), rng)}, kEdges);
    const double js = JsDivergence(a, b);
    CHECK(js >= 0.0);
    CHECK(js <= std::log(2.0) + 1e-12);
    CHECK(js == doctest::Approx(JsDivergence(b, a)).epsilon(1e-14));
  }
}

TEST_CASE("consistency of identical contours") {
  Rng rng(3);
  const F0Contour c = RandomContour(100, 150.0, rng);
  const ConsistencyReport r = ConsistencyError(c, c);
  CHECK(r.voicing_mismatch == 0);
  CHECK(r.MismatchRate() == 0.0);
  for (double e : r.errors) CHECK(e == 0.0);
  CHECK(r.voiced_in_both == CountVoiced(c));
}

TEST_CASE("consistency with a constant log offset") {
  Rng rng(4);
  const F0Contour ref = RandomContour(100, 150.0, rng);
  F0Contour conv = ref;
  for (auto &f : conv) f.f0_hz *= std::exp(0.1);
  const ErrorSummary s = Summarize({ConsistencyError(conv, ref)});
  CHECK(s.mean == doctest::Approx(0.1));
  CHECK(s.stddev == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(s.median_abs == doctest::Approx(0.1));
}

TEST_CASE("consistency with an all-unvoiced reference and voicing mismatches") {
  const ConsistencyReport r = ConsistencyError(Constant(200.0, 10), Constant(0.0, 10, false));
  CHECK(r.empty());
  CHECK(r.voicing_mismatch == 10);
  CHECK(r.MismatchRate() == 1.0);
  CHECK(Summarize({r}).count == 0);
  CHECK_THROWS_AS(ConsistencyError(Constant(200.0, 10), Constant(200.0, 9)), DataError);
}

TEST_CASE("pearson correlation") {
  Rng rng(5);
  std::vector<double> x(300), y(300);
  for (auto &v : x) v = rng.Normal();
  CHECK(PearsonCorrelation(x, x) == doctest::Approx(1.0));
  for (size_t i = 0; i < x.size(); ++i) y[i] = -2.0 * x[i] + 3.0;
  CHECK(PearsonCorrelation(x, y) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(PearsonCorrelation(x, std::vector<double>(300, 1.0)), DataError);
  CHECK_THROWS_AS(PearsonCorrelation({1.0}, {2.0}), DataError);
  CHECK_THROWS_AS(PearsonCorrelation(x, {1.0, 2.0}), DataError);
}

TEST_CASE("correlation with a shuffled copy is near zero") {
  // Permutation oracle: shuffling one series destroys the pairing, so the
  // correlation is O(1/sqrt(n)).
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(100 + seed);
    std::vector<double> x(400);
    double phase = 0;
    for (auto &v : x) {
      phase += 0.05;
      v = std::sin(phase) + 0.3 * rng.Normal();
    }
    std::vector<double> y = x;
    for (size_t i = y.size() - 1; i > 0; --i) std::swap(y[i], y[rng.UniformInt(0, i)]);
    CHECK(std::abs(PearsonCorrelation(x, y)) <= 0.2);
  }
}

TEST_CASE("voiced log-F0 std") {
  CHECK(VoicedLogF0Std(Constant(200.0, 30)) == doctest::Approx(0.0).epsilon(1e-12));
  F0Contour c = {{100.0, true}, {0.0, false}, {400.0, true}};
  CHECK(VoicedLogF0Std(c) == doctest::Approx(std::log(2.0)));
  CHECK(VoicedLogF0Std(Constant(0.0, 5, false)) == 0.0);
}

TEST_CASE("median") {
  CHECK(Median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(Median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(Median({}), DataError);
}

TEST_CASE("speaker groups and conversion plans") {
  const std::vector<SpeakerF0Stats> stats = {
      {5.3, 0.1, 500}, {4.6, 0.1, 500}, {5.5, 0.1, 500}, {4.8, 0.1, 500}};
  const SpeakerGroups g = SpeakerGroups::FromStats(stats);
  CHECK(g.group == std::vector<int>{1, 0, 1, 0});
  CHECK(g.Direction(1, 0) == "low->high");

  TrainingSet held;
  held.stats = stats;
  for (int s = 0; s < 4; ++s)
    for (int u = 0; u < 3; ++u) held.utterances.push_back({s, "x", Matrix(), F0Contour()});
  const auto cross = PlanConversions(held, g, PairSet::kCrossGroup);
  CHECK(cross.size() == 12 * 2);
  for (const auto &p : cross) CHECK(g.group[p.src] != g.group[p.tgt]);
  CHECK(PlanConversions(held, g, PairSet::kAll).size() == 12 * 4);
  TrainingSet empty;
  empty.stats = stats;
  CHECK(PlanConversions(empty, g, PairSet::kAll).empty());
}

TEST_CASE("direction aggregates do not depend on outcome order") {
  Rng rng(6);
  std::vector<std::vector<F0Contour>> gt(4);
  for (int s = 0; s < 4; ++s)
    for (int u = 0; u < 3; ++u) gt[s].push_back(RandomContour(60, 100.0 + 50 * s, rng));
  std::vector<ConversionOutcome> outcomes;
  for (int k = 0; k < 30; ++k) {
    ConversionOutcome o;
    o.pair.src = static_cast<int>(rng.UniformInt(0, 1));
    o.pair.tgt = static_cast<int>(rng.UniformInt(2, 3));
    o.pair.direction = k % 2 ? "low->high" : "high->low";
    o.input = RandomContour(50, 120.0, rng);
    o.pseudo = RandomContour(50, 200.0, rng);
    o.converted = RandomContour(50, 210.0, rng);
    o.consistency = ConsistencyError(o.converted, o.pseudo);
    outcomes.push_back(o);
  }
  const auto a = AggregateByDirection(outcomes, gt, kEdges);
  std::reverse(outcomes.begin(), outcomes.end());
  std::swap(outcomes[3], outcomes[17]);
  const auto b = AggregateByDirection(outcomes, gt, kEdges);
  REQUIRE(a.size() == 2);
  REQUIRE(b.size() == 2);
  for (size_t d = 0; d < 2; ++d) {
    CHECK(a[d].direction == b[d].direction);
    CHECK(a[d].js == b[d].js);
    CHECK(a[d].consistency.mean == b[d].consistency.mean);
    CHECK(a[d].consistency.median_abs == b[d].consistency.median_abs);
    CHECK(a[d].consistency.stddev == b[d].consistency.stddev);
    CHECK(a[d].median_voiced_std == b[d].median_voiced_std);
    CHECK(a[d].converted.mass == b[d].converted.mass);
  }
}

TEST_CASE("correlation rows") {
  Rng rng(7);
  ConversionOutcome o;
  o.input = RandomContour(200, 120.0, rng);
  o.pseudo = PseudoF0Contour(o.input, {std::log(120.0), 0.2, 500}, {std::log(220.0), 0.1, 500});
  o.converted = o.pseudo;
  const auto row = CorrelationRow(o, "p");
  REQUIRE(row.has_value());
  // Pseudo-F0 is an increasing affine map of the input in log-F0.
  CHECK(row->corr_input == doctest::Approx(1.0));
  CHECK(row->corr_pseudo == doctest::Approx(1.0));
  o.converted = Constant(0.0, 200, false);
  CHECK_FALSE(CorrelationRow(o, "p").has_value());

  const LeakageReport r = CompareLeakage({{"a", -0.5, -0.5}, {"b", 0.1, 0.1}}, {{"c", 0.9, 0.8}});
  CHECK(r.no_f0_abs_corr_input == doctest::Approx(0.3));
  CHECK(r.f0_corr_pseudo == doctest::Approx(0.8));
  CHECK_THROWS_AS(CompareLeakage({}, {{"c", 0.9, 0.8}}), DataError);
}

TEST_CASE("leakage model reuses the frozen encoder") {
  ModelConfig c;
  c.conv_channels = 8;
  c.dec_cell = 12;
  c.n_speakers = 2;
  Autoencoder f0_model(c, 1);
  auto leak = MakeLeakageModel(f0_model, 2);
  CHECK_FALSE(leak->config().use_f0);
  CHECK(leak->encoder_frozen());
  Rng rng(8);
  MelSpectrogram mel;
  mel.frames.resize(32, 80);
  for (Eigen::Index i = 0; i < mel.frames.size(); ++i) mel.frames.data()[i] = rng.Normal();
  const Matrix a = f0_model.Encode(mel, {1, 2}).codes;
  const Matrix b = leak->Encode(mel, {1, 2}).codes;
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conversion study end to end on an untrained network") {
  ModelConfig c;
  c.conv_channels = 8;
  c.dec_cell = 12;
  c.n_speakers = 2;
  c.mel_mean = -5.0;
  c.mel_std = 2.0;
  Autoencoder model(c, 1);
  TrainingSet held;
  held.stats = {{std::log(110.0), 0.15, 500}, {std::log(220.0), 0.15, 500}};
  Rng rng(9);
  for (int s = 0; s < 2; ++s) {
    Matrix mel(40, 80);
    for (Eigen::Index i = 0; i < mel.size(); ++i) mel.data()[i] = -5.0 + rng.Normal();
    held.utterances.push_back(
        {s, "s" + std::to_string(s) + ".wav", mel, RandomContour(40, 110.0 * (s + 1), rng)});
  }
  const AudioConfig audio;
  StudyOptions opt;
  opt.edges = kEdges;
  opt.gl_iters = 2;
  CHECK_THROWS_AS(RunConversionStudy(model, held, {{}, {}}, audio, opt), UsageError);
  model.set_trained(true);

  // Ground truth from known contours so the histogram is non-empty.
  const std::vector<std::vector<F0Contour>> gt = {{Constant(110.0, 20)}, {Constant(220.0, 20)}};
  TrainingSet none;
  none.stats = held.stats;
  const StudyResult empty = RunConversionStudy(model, none, gt, audio, opt);
  CHECK(empty.outcomes.empty());
  CHECK(empty.directions.empty());

  const StudyResult r = RunConversionStudy(model, held, gt, audio, opt);
  CHECK(r.outcomes.size() == 2);
  for (const auto &o : r.outcomes) {
    CHECK(o.converted.size() == 40);
    CHECK(o.pseudo.size() == 40);
  }

  const fs::path dir = fs::temp_directory_path() / "f0vc_eval_test";
  fs::remove_all(dir);
  WriteConsistencyCsv((dir / "c.csv").string(), r, {"a", "b"});
  CHECK(ReadTextFile((dir / "c.csv").string()).rfind("pair,frame,reference,converted,error\n", 0) ==
        0);
  const F0Histogram h = BuildHistogram(gt[0], kEdges);
  WriteHistogramCsv((dir / "h.csv").string(), {{"ground_truth", &h}});
  const std::string hist = ReadTextFile((dir / "h.csv").string());
  CHECK(hist.rfind("bin_center,mass,series\n", 0) == 0);
  CHECK(std::count(hist.begin(), hist.end(), '\n') == 1 + kEdges.bins);
  WriteLeakageCsv((dir / "l.csv").string(), {{"a->b:x", 0.5, 0.25}});
  CHECK(ReadTextFile((dir / "l.csv").string()) == "pair,corr_input,corr_pseudo\na->b:x,0.5,0.25\n");
  const auto j = StudyJson(r);
  CHECK(j["conversions"] == 2);
  fs::remove_all(dir);
}
