// src/cli/cli.cc

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

#include "f0vc/cli/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "f0vc/cli/run_config.h"
#include "f0vc/common/error.h"
#include "f0vc/dsp/griffin_lim.h"
#include "f0vc/dsp/matrix_io.h"
#include "f0vc/dsp/pitch.h"
#include "f0vc/dsp/spectral.h"
#include "f0vc/dsp/voice_synth.h"
#include "f0vc/dsp/wav.h"
#include "f0vc/eval/report.h"
#include "f0vc/eval/study.h"
#include "f0vc/train/prepare.h"
#include "f0vc/train/trainer.h"

namespace f0vc {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kStudies = {"dist", "consistency", "flat", "leakage"};

struct CommonOptions {
  std::string config_file;
  std::vector<std::string> sets;
  std::string work;
};

void AddCommon(CLI::App *cmd, CommonOptions *o) {
  cmd->add_option("-c,--config", o->config_file, "config file of section.key=value lines");
  cmd->add_option("--set", o->sets, "override one config key, e.g. --set train.lr=1e-3");
  cmd->add_option("-w,--work", o->work, "work directory (paths.work)");
}

RunConfig LoadRunConfig(const CommonOptions &o) {
  RunConfig rc;
  if (!o.config_file.empty()) {
    if (!fs::is_regular_file(o.config_file))
      throw UsageError("config file not found: " + o.config_file);
    rc.Apply(ReadTextFile(o.config_file));
  }
  for (const std::string &s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
    rc.Set(s.substr(0, eq), s.substr(eq + 1));
  }
  if (!o.work.empty()) rc.work = o.work;
  return rc;
}

const std::string &RequireWork(const RunConfig &rc) {
  if (rc.work.empty()) throw UsageError("no work directory; pass --work or set paths.work");
  return rc.work;
}

std::string AudioPath(const std::string &work) {
  return (fs::path(work) / "audio.txt").string();
}

// Audio settings recorded by prepare. Explicit audio settings that differ
// from them are rejected because the cached features would not match.
AudioConfig PreparedAudio(const RunConfig &rc, const std::string &work) {
  const std::string path = AudioPath(work);
  if (!fs::is_regular_file(path))
    throw DataError("work dir " + work + " is not prepared (no audio.txt); run prepare first");
  const AudioConfig prepared = AudioConfigFromText(ReadTextFile(path));
  const std::string requested = AudioConfigToText(rc.audio);
  if (requested != AudioConfigToText(AudioConfig{}) && requested != AudioConfigToText(prepared))
    throw UsageError("audio settings differ from those " + work + " was prepared with");
  return prepared;
}

std::string DefaultCheckpoint(const RunConfig &rc, bool use_f0) {
  if (!rc.checkpoint.empty()) return rc.checkpoint;
  return (fs::path(RequireWork(rc)) / (use_f0 ? "model.ckpt" : "model_no_f0.ckpt")).string();
}

std::string Fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void WriteJson(const std::string &path, const nlohmann::json &j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

// Speaker ids and statistics stored in a checkpoint, in index order.
struct SpeakerTable {
  std::vector<std::string> ids;
  std::vector<SpeakerF0Stats> stats;

  int Find(const std::string &id) const {
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) {
      std::string known;
      for (const auto &s : ids) known += (known.empty() ? "" : ", ") + s;
      throw DataError("unknown speaker '" + id + "'; the checkpoint knows: " + known);
    }
    return static_cast<int>(it - ids.begin());
  }
};

SpeakerTable ParseSpeakerTable(const std::string &text, const std::string &checkpoint) {
  SpeakerTable t;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::string id;
    t.stats.push_back(ParseStatsRecord(line, &id));
    t.ids.push_back(id);
  }
  if (t.ids.empty()) throw DataError("checkpoint " + checkpoint + " has no speaker table");
  return t;
}

void CheckSpeakerTable(const LoadedModel &lm, const CorpusManifest &manifest,
                       const std::string &checkpoint) {
  if (lm.speaker_table != FormatStatsFile(manifest))
    throw DataError("speakers of checkpoint " + checkpoint + " do not match the prepared work dir");
}

LoadedModel LoadTrainedModel(const std::string &path) {
  if (!fs::is_regular_file(path)) throw DataError("checkpoint not found: " + path);
  LoadedModel lm = LoadModelFile(path);
  if (lm.iteration == 0) throw UsageError("checkpoint " + path + " has not been trained");
  return lm;
}

// Keeps the header and the rows up to `iteration` of an existing loss log.
std::string TruncatedLog(const std::string &path, int64_t iteration) {
  std::string kept = LossCsvHeader() + "\n";
  if (!fs::is_regular_file(path)) return kept;
  std::istringstream is(ReadTextFile(path));
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (std::stoll(line.substr(0, line.find(','))) > iteration) break;
    kept += line + "\n";
  }
  return kept;
}

// Trains until `target`, appending loss rows to `log_path` and saving the
// checkpoint every checkpoint_every iterations and at the end. A non-finite
// loss is reported with the last checkpoint that is known to be good.
void TrainAndSave(Trainer *trainer, int64_t target, const std::string &checkpoint,
                  const std::string &log_path, const std::string &log_prefix, bool resumed,
                  std::ostream &out) {
  std::ofstream log(log_path, std::ios::trunc);
  if (!log) throw DataError("cannot write " + log_path);
  log << log_prefix;
  int64_t last_good = resumed ? trainer->iteration() : -1;
  const int64_t every = trainer->config().checkpoint_every;
  const int64_t start = trainer->iteration();
  const int64_t report = std::max<int64_t>(1, (target - start) / 10);
  double window = 0.0;
  int64_t window_n = 0;
  try {
    trainer->Run(target, [&](const LossRecord &r) {
      log << LossCsvRow(r) << '\n';
      window += r.total;
      ++window_n;
      if ((r.iteration - start) % report == 0 || r.iteration == target) {
        out << "iteration " << r.iteration << "  mean loss " << Fixed(window / window_n, 3) << '\n';
        window = 0.0;
        window_n = 0;
      }
      if (every > 0 && r.iteration % every == 0 && r.iteration < target) {
        log.flush();
        trainer->SaveFile(checkpoint);
        last_good = r.iteration;
      }
    });
  } catch (const NumericError &e) {
    log.close();
    const std::string where = last_good >= 0 ? "last good checkpoint: " + checkpoint +
                                                   " (iteration " + std::to_string(last_good) + ")"
                                             : "no checkpoint was written";
    throw NumericError(std::string(e.what()) + "; " + where);
  }
  log.close();
  trainer->SaveFile(checkpoint);
}

// ---- commands ----

struct SynthOptions {
  CommonOptions common;
  std::string out_dir;
  int utterances = 50;
  double min_seconds = 1.5;
  double max_seconds = 4.0;
  uint64_t seed = 7;
};

void CmdSynth(const SynthOptions &o, std::ostream &out) {
  const RunConfig rc = LoadRunConfig(o.common);
  const std::string root = o.out_dir.empty() ? rc.corpus : o.out_dir;
  if (root.empty()) throw UsageError("no output directory; pass --out or set paths.corpus");
  if (o.utterances < 1) throw UsageError("--utterances must be positive");
  if (!(o.min_seconds > 0 && o.max_seconds >= o.min_seconds))
    throw UsageError("need 0 < --min-seconds <= --max-seconds");
  if (fs::exists(root) && !fs::is_empty(root))
    throw UsageError("refusing to write into non-empty directory " + root);
  const std::vector<VoiceProfile> voices = DefaultToyVoices();
  SynthesizeToyCorpus(root, voices, o.utterances, o.min_seconds, o.max_seconds, o.seed,
                      rc.audio.sample_rate);
  out << "wrote " << voices.size() << " speakers x " << o.utterances << " utterances to " << root
      << '\n';
  for (const auto &v : voices)
    out << "  " << v.id << "  mean F0 " << Fixed(v.f0_mean_hz, 1) << " Hz\n";
}

struct PrepareOptions {
  CommonOptions common;
  std::string corpus;
};

void CmdPrepare(const PrepareOptions &o, std::ostream &out) {
  RunConfig rc = LoadRunConfig(o.common);
  if (!o.corpus.empty()) rc.corpus = o.corpus;
  if (rc.corpus.empty()) throw UsageError("no corpus; pass --corpus or set paths.corpus");
  if (!fs::is_directory(rc.corpus)) throw DataError("corpus directory not found: " + rc.corpus);
  const std::string &work = RequireWork(rc);
  rc.audio.Validate();

  const CorpusManifest m = PrepareCorpus(rc.corpus, work, rc.audio);
  WriteTextFile(AudioPath(work), AudioConfigToText(rc.audio));

  std::vector<std::string> produced = {AudioPath(work), ManifestPath(work), StatsPath(work)};
  for (const auto &r : m.records) {
    const std::string stem = FeatureStem(work, r.path);
    produced.push_back(stem + ".mel");
    produced.push_back(stem + ".f0");
  }
  RecordArtifacts(work, produced);

  size_t n_train = 0;
  for (const auto &r : m.records) n_train += r.split == Split::kTrain;
  out << "prepared " << m.records.size() << " utterances (" << n_train << " train, "
      << m.records.size() - n_train << " test) from " << m.NumSpeakers() << " speakers\n";
  for (const auto &s : m.speakers)
    out << "  " << s.id << "  mean F0 " << Fixed(std::exp(s.stats.mu), 1) << " Hz  log-F0 std "
        << Fixed(s.stats.sigma) << '\n';
}

struct TrainOptions {
  CommonOptions common;
  bool no_f0 = false;
  bool resume = false;
  int64_t iterations = -1;
  int64_t seed = -1;
  std::string checkpoint;
  std::string log;
};

void CmdTrain(const TrainOptions &o, std::ostream &out) {
  RunConfig rc = LoadRunConfig(o.common);
  if (o.no_f0) rc.model.use_f0 = false;
  if (o.iterations >= 0) rc.train.iterations = o.iterations;
  if (o.seed >= 0) rc.train.seed = static_cast<uint64_t>(o.seed);
  const std::string &work = RequireWork(rc);
  const std::string checkpoint =
      o.checkpoint.empty() ? DefaultCheckpoint(rc, rc.model.use_f0) : o.checkpoint;
  const std::string log_path =
      o.log.empty() ? fs::path(checkpoint).replace_extension(".log.csv").string() : o.log;

  const AudioConfig audio = PreparedAudio(rc, work);
  const CorpusManifest manifest = LoadPreparedManifest(work);
  const TrainingSet train = LoadSplit(work, manifest, Split::kTrain);

  std::unique_ptr<Trainer> trainer;
  std::string log_prefix;
  if (o.resume) {
    if (!fs::is_regular_file(checkpoint))
      throw DataError("nothing to resume: " + checkpoint + " does not exist");
    LoadedModel lm = LoadModelFile(checkpoint);
    if (lm.model->config().use_f0 != rc.model.use_f0)
      throw UsageError("checkpoint " + checkpoint +
                       " has use_f0=" + (lm.model->config().use_f0 ? "true" : "false") +
                       "; pass --no-f0 exactly when resuming a baseline");
    TrainConfig tc = lm.train_config;
    tc.iterations = rc.train.iterations;
    tc.Validate();
    trainer = std::make_unique<Trainer>(std::move(lm.model), tc, audio, &train);
    trainer->LoadFile(checkpoint);
    if (trainer->speaker_table() != FormatStatsFile(manifest))
      throw DataError("speakers of checkpoint " + checkpoint +
                      " do not match the prepared work dir");
    log_prefix = TruncatedLog(log_path, trainer->iteration());
    out << "resuming " << checkpoint << " at iteration " << trainer->iteration() << '\n';
  } else {
    rc.train.Validate();
    trainer = std::make_unique<Trainer>(Trainer::NewModel(rc.model, train, rc.train.seed), rc.train,
                                        audio, &train);
    trainer->set_speaker_table(FormatStatsFile(manifest));
    log_prefix = LossCsvHeader() + "\n";
  }
  const int64_t target = trainer->config().iterations;
  if (trainer->iteration() >= target) {
    out << "checkpoint is already at iteration " << trainer->iteration() << "; nothing to do\n";
    return;
  }
  out << "training " << (rc.model.use_f0 ? "F0-conditioned" : "baseline (no F0)") << " model on "
      << train.utterances.size() << " utterances to iteration " << target << '\n';
  TrainAndSave(trainer.get(), target, checkpoint, log_path, log_prefix, o.resume, out);
  RecordArtifacts(work, {checkpoint, log_path});
  out << "checkpoint: " << checkpoint << "\nloss log: " << log_path << '\n';
}

struct ConvertOptions {
  CommonOptions common;
  std::string checkpoint;
  std::string wav;
  std::string src;
  std::string tgt;
  std::string f0 = "natural";
  std::string out;
  int gl_iters = 32;
};

void CmdConvert(const ConvertOptions &o, std::ostream &out) {
  const RunConfig rc = LoadRunConfig(o.common);
  const std::string checkpoint = o.checkpoint.empty() ? rc.checkpoint : o.checkpoint;
  if (checkpoint.empty())
    throw UsageError("no checkpoint; pass --checkpoint or set paths.checkpoint");
  if (o.gl_iters < 1) throw UsageError("--gl-iters must be positive");
  const F0Mode mode = ParseF0Mode(o.f0);
  if (!fs::is_regular_file(o.wav)) throw DataError("source wav not found: " + o.wav);
  const AudioConfig audio = !rc.work.empty() && fs::is_regular_file(AudioPath(rc.work))
                                ? PreparedAudio(rc, rc.work)
                                : rc.audio;
  LoadedModel lm = LoadTrainedModel(checkpoint);
  const SpeakerTable table = ParseSpeakerTable(lm.speaker_table, checkpoint);
  const int src = table.Find(o.src), tgt = table.Find(o.tgt);
  const int n = static_cast<int>(table.ids.size());

  const Waveform wave = LoadWav(o.wav, audio.sample_rate);
  const MelSpectrogram mel = ComputeMelSpectrogram(wave, audio);
  if (mel.NumFrames() == 0) throw DataError("source wav is shorter than one analysis window");
  const F0Contour contour = ExtractF0(wave, audio);
  const MelSpectrogram converted =
      lm.model->Convert(mel, contour, &table.stats[src], {src, n}, {tgt, n}, mode);

  const fs::path parent = fs::path(o.out).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  WriteMatrix(o.out + ".mel", converted.frames);
  SaveWav(o.out + ".wav", GriffinLim(converted, audio, o.gl_iters));
  if (!rc.work.empty()) RecordArtifacts(rc.work, {o.out + ".mel", o.out + ".wav"});

  out << "converted " << o.wav << " (" << mel.NumFrames() << " frames) from " << o.src << " to "
      << o.tgt << '\n';
  out << "F0 mode: " << ModeName(mode)
      << (lm.model->config().use_f0 ? "" : " (ignored: the model has no F0 input)") << '\n';
  out << "wrote " << o.out << ".mel and " << o.out << ".wav\n";
}

struct EvalOptions {
  CommonOptions common;
  std::string study;
  std::string checkpoint;
  std::string baseline;
  std::string out_dir;
  std::string pairs = "cross";
  int flat_bin = 128;
  int gl_iters = 32;
  int64_t leakage_iterations = -1;
};

// Inputs shared by every study.
struct EvalContext {
  AudioConfig audio;
  std::string work;
  CorpusManifest manifest;
  TrainingSet held_out;
  std::vector<std::vector<F0Contour>> ground_truth;
  std::vector<std::string> speaker_ids;
  StudyOptions options;
};

void PrintDirections(const std::string &label, const StudyResult &r, std::ostream &out) {
  for (const auto &d : r.directions)
    out << "  " << label << "  " << d.direction << "  conversions " << d.conversions << "  JS "
        << Fixed(d.js) << "  median |log-F0 error| " << Fixed(d.consistency.median_abs)
        << "  voicing mismatch " << Fixed(d.consistency.mismatch_rate, 3) << '\n';
}

// Per-direction `baseline - model` differences of one scalar.
nlohmann::json Margins(const StudyResult &model, const StudyResult &baseline,
                       double (*metric)(const DirectionSummary &)) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &d : model.directions)
    for (const auto &b : baseline.directions)
      if (b.direction == d.direction) j[d.direction] = metric(b) - metric(d);
  return j;
}

StudyResult RunStudyFor(Autoencoder &model, const EvalContext &ctx, const F0Mode &mode) {
  StudyOptions opt = ctx.options;
  opt.mode = mode;
  return RunConversionStudy(model, ctx.held_out, ctx.ground_truth, ctx.audio, opt);
}

// Returns the leakage decoder for `f0_model`, training and caching it when
// the cache is missing or belongs to another encoder.
std::unique_ptr<Autoencoder> LeakageDecoder(const LoadedModel &f0, const EvalContext &ctx,
                                            int64_t iterations, std::ostream &out) {
  const std::string cache = (fs::path(ctx.work) / "leakage_decoder.ckpt").string();
  if (fs::is_regular_file(cache)) {
    LoadedModel cached = LoadModelFile(cache);
    if (!cached.model->config().use_f0 && cached.model->encoder_frozen() &&
        cached.iteration == iterations && SameEncoder(*f0.model, *cached.model)) {
      out << "using cached leakage decoder " << cache << '\n';
      return std::move(cached.model);
    }
    out << "cached leakage decoder " << cache << " does not match; retraining\n";
  }
  const TrainingSet train = LoadSplit(ctx.work, ctx.manifest, Split::kTrain);
  TrainConfig tc = f0.train_config;
  tc.iterations = iterations;
  tc.checkpoint_every = 0;
  Trainer trainer(MakeLeakageModel(*f0.model, tc.seed), tc, ctx.audio, &train);
  trainer.set_speaker_table(f0.speaker_table);
  out << "training leakage decoder on the frozen encoder for " << iterations << " iterations\n";
  const std::string log_path = fs::path(cache).replace_extension(".log.csv").string();
  TrainAndSave(&trainer, iterations, cache, log_path, LossCsvHeader() + "\n", false, out);
  RecordArtifacts(ctx.work, {cache, log_path});
  return trainer.ReleaseModel();
}

void CmdEval(const EvalOptions &o, std::ostream &out) {
  if (std::find(kStudies.begin(), kStudies.end(), o.study) == kStudies.end())
    throw UsageError("unknown study '" + o.study +
                     "'; valid studies: dist, consistency, flat, leakage");
  const RunConfig rc = LoadRunConfig(o.common);
  EvalContext ctx;
  ctx.work = RequireWork(rc);
  const std::string checkpoint = o.checkpoint.empty() ? DefaultCheckpoint(rc, true) : o.checkpoint;
  if (o.flat_bin < 0 || o.flat_bin > 255) throw UsageError("--flat-bin must be in [0, 255]");
  if (o.gl_iters < 1) throw UsageError("--gl-iters must be positive");
  if (!o.baseline.empty() && (o.study == "flat" || o.study == "leakage"))
    throw UsageError("--baseline applies to the dist and consistency studies only");

  ctx.audio = PreparedAudio(rc, ctx.work);
  ctx.manifest = LoadPreparedManifest(ctx.work);
  LoadedModel model = LoadTrainedModel(checkpoint);
  CheckSpeakerTable(model, ctx.manifest, checkpoint);
  LoadedModel baseline;
  if (!o.baseline.empty()) {
    baseline = LoadTrainedModel(o.baseline);
    CheckSpeakerTable(baseline, ctx.manifest, o.baseline);
  }
  if (o.study == "leakage" && !model.model->config().use_f0)
    throw UsageError("the leakage study needs an F0-conditioned checkpoint");

  for (const auto &s : ctx.manifest.speakers) ctx.speaker_ids.push_back(s.id);
  ctx.held_out = LoadSplit(ctx.work, ctx.manifest, Split::kTest);
  ctx.options.pairs = o.pairs == "all" ? PairSet::kAll : PairSet::kCrossGroup;
  ctx.options.gl_iters = o.gl_iters;
  ctx.options.edges = HistogramEdges::FromAudio(ctx.audio);
  out << "analyzing " << ctx.held_out.utterances.size() << " held-out utterances\n";
  ctx.ground_truth = GroundTruthContours(ctx.held_out, ctx.audio, o.gl_iters);

  const std::string dir =
      o.out_dir.empty() ? (fs::path(ctx.work) / "eval" / o.study).string() : o.out_dir;
  fs::create_directories(dir);
  auto at = [&](const char *name) { return (fs::path(dir) / name).string(); };
  std::vector<std::string> produced;

  nlohmann::json summary = {{"study", o.study},
                            {"checkpoint", checkpoint},
                            {"iteration", model.iteration},
                            {"pairs", o.pairs},
                            {"gl_iters", o.gl_iters},
                            {"held_out_utterances", ctx.held_out.utterances.size()}};

  if (o.study == "dist" || o.study == "consistency") {
    const StudyResult r = RunStudyFor(*model.model, ctx, f0mode::Natural{});
    out << (o.study == "dist" ? "F0 distribution" : "F0 consistency") << " study\n";
    PrintDirections("model", r, out);
    summary["model"] = StudyJson(r);
    StudyResult b;
    if (baseline.model) {
      b = RunStudyFor(*baseline.model, ctx, f0mode::Natural{});
      PrintDirections("baseline", b, out);
      summary["baseline_checkpoint"] = o.baseline;
      summary["baseline"] = StudyJson(b);
    }
    if (o.study == "dist") {
      std::vector<std::pair<std::string, const F0Histogram *>> series;
      for (const auto &d : r.directions) {
        series.emplace_back("ground_truth:" + d.direction, &d.ground_truth);
        series.emplace_back("converted:" + d.direction, &d.converted);
      }
      for (const auto &d : b.directions)
        series.emplace_back("baseline:" + d.direction, &d.converted);
      WriteHistogramCsv(at("histograms.csv"), series);
      produced.push_back(at("histograms.csv"));
      if (baseline.model)
        summary["js_margin"] = Margins(r, b, [](const DirectionSummary &d) { return d.js; });
    } else {
      WriteConsistencyCsv(at("consistency.csv"), r, ctx.speaker_ids);
      produced.push_back(at("consistency.csv"));
      if (baseline.model) {
        WriteConsistencyCsv(at("consistency_baseline.csv"), b, ctx.speaker_ids);
        produced.push_back(at("consistency_baseline.csv"));
        summary["median_abs_error_margin"] =
            Margins(r, b, [](const DirectionSummary &d) { return d.consistency.median_abs; });
      }
    }
  } else if (o.study == "flat") {
    const StudyResult natural = RunStudyFor(*model.model, ctx, f0mode::Natural{});
    const StudyResult flat = RunStudyFor(*model.model, ctx, f0mode::Flat{o.flat_bin});
    const FlatReport report = CompareFlat(natural, flat, ctx.speaker_ids);
    WriteFlatCsv(at("flat.csv"), report);
    produced.push_back(at("flat.csv"));
    summary["flat_bin"] = o.flat_bin;
    summary["flat"] = FlatJson(report);
    summary["natural"] = StudyJson(natural);
    summary["flat_study"] = StudyJson(flat);
    out << "flat F0 study (bin " << o.flat_bin << ")\n  median voiced log-F0 std: natural "
        << Fixed(report.median_natural_std) << ", flat " << Fixed(report.median_flat_std)
        << "\n  median per-utterance ratio " << Fixed(report.median_ratio, 3) << " over "
        << report.rows.size() << " conversions\n";
  } else {
    const int64_t iterations = o.leakage_iterations >= 0 ? o.leakage_iterations : model.iteration;
    if (iterations < 1) throw UsageError("--leakage-iterations must be positive");
    std::unique_ptr<Autoencoder> decoder = LeakageDecoder(model, ctx, iterations, out);
    const StudyResult with_f0 = RunStudyFor(*model.model, ctx, f0mode::Natural{});
    const StudyResult no_f0 = RunStudyFor(*decoder, ctx, f0mode::Natural{});
    std::vector<LeakageRow> f0_rows, no_f0_rows;
    for (const auto &oc : with_f0.outcomes)
      if (auto row = CorrelationRow(oc, PairLabel(oc, ctx.speaker_ids))) f0_rows.push_back(*row);
    for (const auto &oc : no_f0.outcomes)
      if (auto row = CorrelationRow(oc, PairLabel(oc, ctx.speaker_ids))) no_f0_rows.push_back(*row);
    const LeakageReport report = CompareLeakage(no_f0_rows, f0_rows);
    WriteLeakageCsv(at("leakage_no_f0.csv"), report.no_f0_rows);
    WriteLeakageCsv(at("leakage_f0.csv"), report.f0_rows);
    produced.push_back(at("leakage_no_f0.csv"));
    produced.push_back(at("leakage_f0.csv"));
    summary["leakage_iterations"] = iterations;
    summary["leakage"] = LeakageJson(report);
    out << "bottleneck leakage study\n  no-F0 decoder: mean |corr(output, input)| "
        << Fixed(report.no_f0_abs_corr_input, 3) << " over " << report.no_f0_rows.size()
        << " conversions\n  F0 model: mean corr(output, pseudo-F0) "
        << Fixed(report.f0_corr_pseudo, 3) << " over " << report.f0_rows.size() << " conversions\n";
  }
  WriteJson(at("summary.json"), summary);
  produced.push_back(at("summary.json"));
  RecordArtifacts(ctx.work, produced);
  out << "wrote " << dir << '\n';
}

}  // namespace

F0Mode ParseF0Mode(const std::string &text) {
  if (text == "natural") return f0mode::Natural{};
  if (text.rfind("flat:", 0) == 0) {
    const std::string v = text.substr(5);
    int bin = -1;
    std::istringstream is(v);
    is >> bin;
    if (!is || !is.eof() || bin < 0 || bin > 255)
      throw UsageError("flat F0 bin must be an integer in [0, 255], got '" + v + "'");
    return f0mode::Flat{bin};
  }
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    if (!fs::is_regular_file(path)) throw DataError("external F0 file not found: " + path);
    std::istringstream is(ReadTextFile(path));
    f0mode::External ext;
    std::string line;
    for (int line_no = 1; std::getline(is, line); ++line_no) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream ls(line);
      int bin = -1;
      ls >> bin;
      std::string rest;
      if (!ls || (ls >> rest) || bin < 0 || bin > kUnvoicedBin)
        throw DataError("malformed external F0 file " + path + " at line " +
                        std::to_string(line_no) + ": expected one bin in [0, 256]");
      ext.bins.push_back(bin);
    }
    if (ext.bins.empty()) throw DataError("external F0 file " + path + " is empty");
    return ext;
  }
  throw UsageError("--f0 must be natural, flat:<bin> or file:<path>, got '" + text + "'");
}

std::string ArtifactListPath(const std::string &work_dir) {
  return (fs::path(work_dir) / "artifacts.txt").string();
}

void RecordArtifacts(const std::string &work_dir, const std::vector<std::string> &paths) {
  const std::string list = ArtifactListPath(work_dir);
  std::set<std::string> all;
  if (fs::is_regular_file(list)) {
    std::istringstream is(ReadTextFile(list));
    std::string line;
    while (std::getline(is, line))
      if (!line.empty()) all.insert(line);
  }
  const fs::path base = fs::weakly_canonical(work_dir);
  for (const auto &p : paths) {
    const fs::path rel = fs::weakly_canonical(p).lexically_relative(base);
    const bool inside = !rel.empty() && *rel.begin() != "..";
    all.insert(inside ? rel.generic_string() : fs::weakly_canonical(p).generic_string());
  }
  std::string text;
  for (const auto &p : all) text += p + "\n";
  WriteTextFile(list, text);
}

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Voice conversion with F0-conditioned autoencoders", "f0vc"};
  app.require_subcommand(1, 1);

  SynthOptions synth;
  CLI::App *c_synth = app.add_subcommand("synth-corpus", "synthesize a toy multi-speaker corpus");
  AddCommon(c_synth, &synth.common);
  c_synth->add_option("-o,--out", synth.out_dir, "corpus root to create (paths.corpus)");
  c_synth->add_option("--utterances", synth.utterances, "utterances per speaker")
      ->capture_default_str();
  c_synth->add_option("--min-seconds", synth.min_seconds, "shortest duration")
      ->capture_default_str();
  c_synth->add_option("--max-seconds", synth.max_seconds, "longest duration")
      ->capture_default_str();
  c_synth->add_option("--seed", synth.seed, "random seed")->capture_default_str();

  PrepareOptions prep;
  CLI::App *c_prep =
      app.add_subcommand("prepare", "split the corpus, cache features and speaker F0 statistics");
  AddCommon(c_prep, &prep.common);
  c_prep->add_option("--corpus", prep.corpus, "corpus root <root>/<speaker>/*.wav (paths.corpus)");

  TrainOptions train;
  CLI::App *c_train = app.add_subcommand("train", "train a model on the prepared corpus");
  AddCommon(c_train, &train.common);
  c_train->add_flag("--no-f0", train.no_f0, "train the baseline without F0 conditioning");
  c_train->add_flag("--resume", train.resume, "continue from the checkpoint");
  c_train->add_option("--iterations", train.iterations, "total iterations (train.iterations)");
  c_train->add_option("--seed", train.seed, "random seed (train.seed)");
  c_train->add_option("--checkpoint", train.checkpoint, "checkpoint path (paths.checkpoint)");
  c_train->add_option("--log", train.log, "loss log CSV path");

  ConvertOptions conv;
  CLI::App *c_conv = app.add_subcommand("convert", "convert one utterance to another speaker");
  AddCommon(c_conv, &conv.common);
  c_conv->add_option("--checkpoint", conv.checkpoint, "trained checkpoint (paths.checkpoint)");
  c_conv->add_option("--wav", conv.wav, "source utterance")->required();
  c_conv->add_option("--src", conv.src, "source speaker id")->required();
  c_conv->add_option("--tgt", conv.tgt, "target speaker id")->required();
  c_conv->add_option("--f0", conv.f0, "natural, flat:<bin> or file:<path>")->capture_default_str();
  c_conv->add_option("-o,--out", conv.out, "output prefix; writes <out>.mel and <out>.wav")
      ->required();
  c_conv->add_option("--gl-iters", conv.gl_iters, "Griffin-Lim iterations")->capture_default_str();

  EvalOptions ev;
  CLI::App *c_eval = app.add_subcommand("eval", "run an evaluation study on held-out speech");
  AddCommon(c_eval, &ev.common);
  c_eval->add_option("study", ev.study, "dist, consistency, flat or leakage")->required();
  c_eval->add_option("--checkpoint", ev.checkpoint, "F0-conditioned checkpoint");
  c_eval->add_option("--baseline", ev.baseline, "baseline checkpoint to compare against");
  c_eval->add_option("--out", ev.out_dir, "output directory (default <work>/eval/<study>)");
  c_eval->add_option("--pairs", ev.pairs, "cross-group or all speaker pairs")
      ->check(CLI::IsMember({"cross", "all"}))
      ->capture_default_str();
  c_eval->add_option("--flat-bin", ev.flat_bin, "bin used by the flat study")
      ->capture_default_str();
  c_eval->add_option("--gl-iters", ev.gl_iters, "Griffin-Lim iterations")->capture_default_str();
  c_eval->add_option("--leakage-iterations", ev.leakage_iterations,
                     "leakage decoder iterations (default: those of the checkpoint)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_synth->parsed())
      CmdSynth(synth, out);
    else if (c_prep->parsed())
      CmdPrepare(prep, out);
    else if (c_train->parsed())
      CmdTrain(train, out);
    else if (c_conv->parsed())
      CmdConvert(conv, out);
    else
      CmdEval(ev, out);
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DataError &e) {
    err << "data error: " << e.what() << '\n';
    return 3;
  } catch (const NumericError &e) {
    err << "numeric failure: " << e.what() << '\n';
    return 4;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace f0vc
