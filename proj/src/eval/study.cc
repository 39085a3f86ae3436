// src/eval/study.cc

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

#include "f0vc/eval/study.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "f0vc/common/error.h"
#include "f0vc/dsp/griffin_lim.h"
#include "f0vc/dsp/pitch.h"

namespace f0vc {

namespace {

// Stand-in for converted speech with no voiced frame at all; it shares no
// mass with anything, so its JS divergence is the maximum ln 2.
F0Histogram EmptyHistogram(const HistogramEdges &edges) {
  F0Histogram h;
  h.edges = edges;
  h.counts.assign(edges.bins, 0.0);
  h.mass.assign(edges.bins, 0.0);
  return h;
}

}  // namespace

SpeakerGroups SpeakerGroups::FromStats(const std::vector<SpeakerF0Stats> &stats) {
  std::vector<int> order(stats.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return stats[a].mu < stats[b].mu; });
  SpeakerGroups g;
  g.group.assign(stats.size(), 1);
  for (size_t k = 0; k < stats.size() / 2; ++k) g.group[order[k]] = 0;
  return g;
}

std::string SpeakerGroups::Direction(int src, int tgt) const {
  return std::string(Name(group.at(src))) + "->" + Name(group.at(tgt));
}

std::vector<ConversionPair> PlanConversions(const TrainingSet &held_out,
                                            const SpeakerGroups &groups, PairSet pairs) {
  std::vector<ConversionPair> plan;
  for (size_t u = 0; u < held_out.utterances.size(); ++u) {
    const int src = held_out.utterances[u].speaker;
    for (int tgt = 0; tgt < held_out.NumSpeakers(); ++tgt) {
      if (pairs == PairSet::kCrossGroup && groups.group[src] == groups.group[tgt]) continue;
      plan.push_back({src, tgt, u, groups.Direction(src, tgt)});
    }
  }
  return plan;
}

F0Contour AnalyzeMel(const Matrix &mel, const AudioConfig &audio, int gl_iters) {
  MelSpectrogram m;
  m.frames = mel;
  return ExtractF0(GriffinLim(m, audio, gl_iters), audio);
}

std::vector<std::vector<F0Contour>> GroundTruthContours(const TrainingSet &held_out,
                                                        const AudioConfig &audio, int gl_iters) {
  std::vector<std::vector<F0Contour>> out(held_out.NumSpeakers());
  for (const auto &u : held_out.utterances)
    out[u.speaker].push_back(AnalyzeMel(u.mel, audio, gl_iters));
  return out;
}

std::string PairLabel(const ConversionOutcome &o, const std::vector<std::string> &speaker_ids) {
  auto name = [&](int s) {
    return s < static_cast<int>(speaker_ids.size()) ? speaker_ids[s] : std::to_string(s);
  };
  return name(o.pair.src) + "->" + name(o.pair.tgt) + ":" + o.utterance_path;
}

std::string ModeName(const F0Mode &mode) {
  if (std::holds_alternative<f0mode::Natural>(mode)) return "natural";
  if (const auto *f = std::get_if<f0mode::Flat>(&mode)) return "flat:" + std::to_string(f->bin);
  return "external";
}

StudyResult RunConversionStudy(Autoencoder &model, const TrainingSet &held_out,
                               const std::vector<std::vector<F0Contour>> &ground_truth,
                               const AudioConfig &audio, const StudyOptions &options) {
  const SpeakerGroups groups = SpeakerGroups::FromStats(held_out.stats);
  const int n_spk = model.config().n_speakers;
  StudyResult result;
  for (const ConversionPair &p : PlanConversions(held_out, groups, options.pairs)) {
    const UtteranceFeatures &u = held_out.utterances[p.utterance];
    MelSpectrogram src;
    src.frames = u.mel;
    const MelSpectrogram out = model.Convert(src, u.f0, &held_out.stats[p.src], {p.src, n_spk},
                                             {p.tgt, n_spk}, options.mode);
    ConversionOutcome o;
    o.pair = p;
    o.utterance_path = u.path;
    o.input = u.f0;
    o.pseudo = PseudoF0Contour(u.f0, held_out.stats[p.src], held_out.stats[p.tgt]);
    o.converted = AnalyzeMel(out.frames, audio, options.gl_iters);
    o.consistency = ConsistencyError(o.converted, o.pseudo);
    result.outcomes.push_back(std::move(o));
  }
  if (!result.outcomes.empty())
    result.directions = AggregateByDirection(result.outcomes, ground_truth, options.edges);
  return result;
}

std::vector<DirectionSummary> AggregateByDirection(
    const std::vector<ConversionOutcome> &outcomes,
    const std::vector<std::vector<F0Contour>> &ground_truth, const HistogramEdges &edges) {
  std::map<std::string, std::vector<const ConversionOutcome *>> by_dir;
  for (const auto &o : outcomes) by_dir[o.pair.direction].push_back(&o);

  std::vector<DirectionSummary> out;
  for (const auto &[dir, list] : by_dir) {
    DirectionSummary s;
    s.direction = dir;
    s.conversions = static_cast<int>(list.size());
    std::vector<F0Contour> converted;
    std::vector<ConsistencyReport> reports;
    std::vector<double> stds;
    std::vector<int> targets;
    for (const ConversionOutcome *o : list) {
      converted.push_back(o->converted);
      reports.push_back(o->consistency);
      stds.push_back(VoicedLogF0Std(o->converted));
      targets.push_back(o->pair.tgt);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::vector<F0Contour> gt;
    for (int t : targets) gt.insert(gt.end(), ground_truth.at(t).begin(), ground_truth.at(t).end());

    s.ground_truth = BuildHistogram(gt, edges);
    s.converted = EmptyHistogram(edges);
    s.js = std::log(2.0);
    if (std::any_of(converted.begin(), converted.end(),
                    [](const F0Contour &c) { return CountVoiced(c) > 0; })) {
      s.converted = BuildHistogram(converted, edges);
      s.js = JsDivergence(s.converted, s.ground_truth);
    }
    s.consistency = Summarize(reports);
    s.median_voiced_std = Median(stds);
    out.push_back(std::move(s));
  }
  return out;
}

FlatReport CompareFlat(const StudyResult &natural, const StudyResult &flat,
                       const std::vector<std::string> &speaker_ids) {
  if (natural.outcomes.size() != flat.outcomes.size())
    throw DataError("flat and natural studies cover different conversions");
  FlatReport r;
  std::vector<double> ratios, nat, fl;
  for (size_t k = 0; k < natural.outcomes.size(); ++k) {
    const ConversionOutcome &a = natural.outcomes[k], &b = flat.outcomes[k];
    if (a.pair.src != b.pair.src || a.pair.tgt != b.pair.tgt ||
        a.pair.utterance != b.pair.utterance)
      throw DataError("flat and natural studies cover different conversions");
    FlatRow row{PairLabel(a, speaker_ids), VoicedLogF0Std(a.converted),
                VoicedLogF0Std(b.converted)};
    if (row.natural_std <= 0) continue;
    ratios.push_back(row.flat_std / row.natural_std);
    nat.push_back(row.natural_std);
    fl.push_back(row.flat_std);
    r.rows.push_back(row);
  }
  if (r.rows.empty()) throw DataError("no conversion produced voiced speech under natural F0");
  r.median_ratio = Median(ratios);
  r.median_natural_std = Median(nat);
  r.median_flat_std = Median(fl);
  return r;
}

std::optional<LeakageRow> CorrelationRow(const ConversionOutcome &o, const std::string &label,
                                         int min_frames) {
  std::vector<double> conv, input, pseudo;
  const size_t n = std::min({o.converted.size(), o.input.size(), o.pseudo.size()});
  for (size_t t = 0; t < n; ++t)
    if (o.converted[t].voiced && o.input[t].voiced && o.pseudo[t].voiced) {
      conv.push_back(std::log(o.converted[t].f0_hz));
      input.push_back(std::log(o.input[t].f0_hz));
      pseudo.push_back(std::log(o.pseudo[t].f0_hz));
    }
  if (static_cast<int>(conv.size()) < min_frames) return std::nullopt;
  try {
    return LeakageRow{label, PearsonCorrelation(conv, input), PearsonCorrelation(conv, pseudo)};
  } catch (const DataError &) {
    return std::nullopt;
  }
}

LeakageReport CompareLeakage(const std::vector<LeakageRow> &no_f0_rows,
                             const std::vector<LeakageRow> &f0_rows) {
  if (no_f0_rows.empty() || f0_rows.empty())
    throw DataError("leakage comparison needs correlations from both models");
  LeakageReport r;
  r.no_f0_rows = no_f0_rows;
  r.f0_rows = f0_rows;
  std::vector<double> a, b;
  for (const auto &row : no_f0_rows) a.push_back(std::abs(row.corr_input));
  for (const auto &row : f0_rows) b.push_back(row.corr_pseudo);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  r.no_f0_abs_corr_input = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
  r.f0_corr_pseudo = std::accumulate(b.begin(), b.end(), 0.0) / b.size();
  return r;
}

std::unique_ptr<Autoencoder> MakeLeakageModel(const Autoencoder &f0_model, uint64_t seed) {
  ModelConfig cfg = f0_model.config();
  cfg.use_f0 = false;
  auto model = std::make_unique<Autoencoder>(cfg, seed);
  for (const auto &e : model->params().entries()) {
    if (e.name.rfind("encoder.", 0) != 0) continue;
    const nn::Tensor *src = f0_model.params().Find(e.name);
    if (src == nullptr || src->shape() != e.tensor.shape())
      throw DataError("encoder tensor " + e.name + " missing from the F0 model");
    nn::Tensor dst = e.tensor;
    std::copy(src->values().begin(), src->values().end(), dst.values().begin());
  }
  model->FreezeEncoder();
  return model;
}

bool SameEncoder(const Autoencoder &a, const Autoencoder &b) {
  for (const auto &e : a.params().entries()) {
    if (e.name.rfind("encoder.", 0) != 0) continue;
    const nn::Tensor *other = b.params().Find(e.name);
    if (other == nullptr || other->shape() != e.tensor.shape()) return false;
    if (!std::equal(e.tensor.values().begin(), e.tensor.values().end(), other->values().begin()))
      return false;
  }
  return true;
}

}  // namespace f0vc
