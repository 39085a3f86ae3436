// tests/cli_test.cc

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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "f0vc/cli/cli.h"
#include "f0vc/cli/run_config.h"
#include "f0vc/common/error.h"
#include "f0vc/dsp/matrix_io.h"
#include "f0vc/train/prepare.h"
#include "f0vc/train/trainer.h"

using namespace f0vc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string ReadAll(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// Relative path -> contents of every file under `root`.
std::map<std::string, std::string> Snapshot(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = ReadAll(e.path());
  return files;
}

fs::path Fresh(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("f0vc_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

const std::vector<std::string> kSmall = {
    "--set", "model.conv_channels=8", "--set", "model.dec_cell=8", "--set", "train.lr=1e-3"};

std::vector<std::string> Cmd(std::vector<std::string> args, const fs::path &work) {
  args.push_back("--work");
  args.push_back(work.string());
  args.insert(args.end(), kSmall.begin(), kSmall.end());
  return args;
}

// A synthesized and prepared corpus shared by the tests below.
struct Prepared {
  fs::path corpus, work;
};

const Prepared &Shared() {
  static const Prepared p = [] {
    Prepared q{Fresh("corpus"), Fresh("work")};
    REQUIRE(Run({"synth-corpus", "--out", q.corpus.string(), "--utterances", "10", "--min-seconds",
                 "1.2", "--max-seconds", "1.6"})
                .code == 0);
    REQUIRE(Run({"prepare", "--corpus", q.corpus.string(), "--work", q.work.string()}).code == 0);
    return q;
  }();
  return p;
}

// Copy of the shared work dir so that tests can write checkpoints freely.
fs::path WorkCopy(const std::string &name) {
  const fs::path dst = Fresh(name);
  fs::copy(Shared().work, dst, fs::copy_options::recursive);
  return dst;
}

std::vector<std::string> DataRows(const fs::path &log) {
  std::istringstream is(ReadAll(log));
  std::vector<std::string> rows;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line))
    if (!line.empty()) rows.push_back(line);
  return rows;
}

}  // namespace

TEST_CASE("run config: sections, comments and unknown keys") {
  RunConfig rc;
  rc.Apply("# toy\naudio.hop=256\n\nmodel.dec_cell = 32\ntrain.lr=0.002\npaths.work=/tmp/w\n");
  CHECK(rc.audio.hop == 256);
  CHECK(rc.model.dec_cell == 32);
  CHECK(rc.train.lr == doctest::Approx(0.002));
  CHECK(rc.work == "/tmp/w");
  CHECK_THROWS_AS(rc.Set("model.bogus", "1"), UsageError);
  CHECK_THROWS_AS(rc.Set("nosection", "1"), UsageError);
  CHECK_THROWS_AS(rc.Set("audio.hop", "abc"), UsageError);
  CHECK_THROWS_WITH_AS(rc.Apply("train.lr=1\nbad line\n"), doctest::Contains("line 2"), UsageError);
  CHECK(AudioConfigFromText(AudioConfigToText(rc.audio)).hop == rc.audio.hop);
}

TEST_CASE("f0 mode parsing") {
  CHECK(std::holds_alternative<f0mode::Natural>(ParseF0Mode("natural")));
  CHECK(std::get<f0mode::Flat>(ParseF0Mode("flat:128")).bin == 128);
  CHECK_THROWS_AS(ParseF0Mode("flat:256"), UsageError);
  CHECK_THROWS_AS(ParseF0Mode("flat:x"), UsageError);
  CHECK_THROWS_AS(ParseF0Mode("wobbly"), UsageError);
  const fs::path dir = Fresh("modes");
  fs::create_directories(dir);
  std::ofstream(dir / "ok.txt") << "3\n256\n\n0\n";
  CHECK(std::get<f0mode::External>(ParseF0Mode("file:" + (dir / "ok.txt").string())).bins ==
        QuantizedF0{3, 256, 0});
  std::ofstream(dir / "bad.txt") << "3\n257\n";
  CHECK_THROWS_WITH_AS(ParseF0Mode("file:" + (dir / "bad.txt").string()),
                       doctest::Contains("line 2"), DataError);
  CHECK_THROWS_AS(ParseF0Mode("file:" + (dir / "missing.txt").string()), DataError);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(Run({}).code == 2);
  CHECK(Run({"frobnicate"}).code == 2);
  CHECK(Run({"train"}).code == 2);  // no work dir
  CHECK(Run({"train", "--work", "/tmp/x", "--set", "model.nope=1"}).code == 2);
  CHECK(Run({"eval", "--work", "/tmp/x", "--pairs", "some"}).code == 2);
  CHECK(Run({"--help"}).code == 0);
}

TEST_CASE("unknown study lists the valid ones") {
  const Result r = Run({"eval", "spectral", "--work", Shared().work.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("dist, consistency, flat, leakage") != std::string::npos);
}

TEST_CASE("missing inputs are data errors") {
  CHECK(Run({"prepare", "--corpus", "/nonexistent/corpus", "--work", "/tmp/x"}).code == 3);
  CHECK(Run({"train", "--work", Fresh("unprepared").string()}).code == 3);
  CHECK(Run({"train", "--resume", "--work", WorkCopy("noresume").string()}).code == 3);
}

TEST_CASE("prepare: split counts, idempotence, corpus untouched") {
  const Prepared &p = Shared();
  const auto corpus_before = Snapshot(p.corpus);
  const CorpusManifest m = LoadPreparedManifest(p.work.string());
  size_t test = 0;
  for (const auto &r : m.records) test += r.split == Split::kTest;
  CHECK(m.records.size() == 40);
  CHECK(test == 4);  // one of ten per speaker

  const fs::path again = Fresh("prepare_again");
  REQUIRE(Run({"prepare", "--corpus", p.corpus.string(), "--work", again.string()}).code == 0);
  CHECK(ReadAll(again / "manifest.txt") == ReadAll(p.work / "manifest.txt"));
  CHECK(ReadAll(again / "stats.txt") == ReadAll(p.work / "stats.txt"));
  CHECK(Snapshot(again) == Snapshot(p.work));
  CHECK(Snapshot(p.corpus) == corpus_before);
  CHECK(ReadAll(again / "artifacts.txt").find("manifest.txt\n") != std::string::npos);
}

TEST_CASE("synth-corpus refuses a non-empty directory") {
  CHECK(Run({"synth-corpus", "--out", Shared().corpus.string()}).code == 2);
}

TEST_CASE("train: iteration count, seeding and the baseline flag") {
  const fs::path a = WorkCopy("train_a"), b = WorkCopy("train_b");
  REQUIRE(Run(Cmd({"train", "--iterations", "10", "--seed", "5"}, a)).code == 0);
  REQUIRE(Run(Cmd({"train", "--iterations", "10", "--seed", "5"}, b)).code == 0);
  const auto rows_a = DataRows(a / "model.log.csv");
  CHECK(rows_a.size() == 10);
  CHECK(rows_a == DataRows(b / "model.log.csv"));
  CHECK(ReadAll(a / "model.ckpt") == ReadAll(b / "model.ckpt"));

  REQUIRE(Run(Cmd({"train", "--iterations", "10", "--seed", "6"}, b)).code == 0);
  CHECK(DataRows(b / "model.log.csv") != rows_a);

  REQUIRE(Run(Cmd({"train", "--no-f0", "--iterations", "3"}, a)).code == 0);
  const LoadedModel base = LoadModelFile((a / "model_no_f0.ckpt").string());
  CHECK_FALSE(base.model->config().use_f0);
  CHECK(base.iteration == 3);
  CHECK(LoadModelFile((a / "model.ckpt").string()).model->config().use_f0);
  const std::string artifacts = ReadAll(a / "artifacts.txt");
  CHECK(artifacts.find("model_no_f0.ckpt\n") != std::string::npos);
  CHECK(artifacts.find("model.log.csv\n") != std::string::npos);
}

TEST_CASE("train: resume reproduces an uninterrupted run") {
  const fs::path a = WorkCopy("resume_a"), b = WorkCopy("resume_b");
  REQUIRE(Run(Cmd({"train", "--iterations", "8"}, a)).code == 0);
  REQUIRE(Run(Cmd({"train", "--iterations", "5"}, b)).code == 0);
  REQUIRE(Run(Cmd({"train", "--iterations", "8", "--resume"}, b)).code == 0);
  CHECK(DataRows(b / "model.log.csv") == DataRows(a / "model.log.csv"));
  CHECK(ReadAll(b / "model.ckpt") == ReadAll(a / "model.ckpt"));
  // Resuming a baseline requires the flag that trained it.
  CHECK(Run(Cmd({"train", "--iterations", "9", "--resume", "--no-f0", "--checkpoint",
                 (b / "model.ckpt").string()},
                b))
            .code == 2);
}

TEST_CASE("train: config file with flag overrides") {
  const fs::path w = WorkCopy("config");
  const fs::path conf = w / "run.conf";
  std::ofstream(conf) << "# small\nmodel.conv_channels=8\nmodel.dec_cell=8\ntrain.iterations=7\n"
                      << "paths.work=" << w.string() << "\n";
  REQUIRE(Run({"train", "--config", conf.string()}).code == 0);
  CHECK(DataRows(w / "model.log.csv").size() == 7);
  REQUIRE(
      Run({"train", "--config", conf.string(), "--set", "train.iterations=9", "--iterations", "4"})
          .code == 0);
  CHECK(DataRows(w / "model.log.csv").size() == 4);
  CHECK(Run({"train", "--config", (w / "missing.conf").string()}).code == 2);
}

TEST_CASE("convert: outputs, mode report and errors") {
  const fs::path w = WorkCopy("convert");
  REQUIRE(Run(Cmd({"train", "--iterations", "3"}, w)).code == 0);
  const std::string ckpt = (w / "model.ckpt").string();
  const CorpusManifest m = LoadPreparedManifest(w.string());
  const std::string wav = (Shared().corpus / m.records.front().path).string();
  const std::string src = m.records.front().speaker_id;
  const std::string tgt = m.speakers.back().id;
  const fs::path out = w / "conv" / "utt";

  Result r = Run({"convert", "--checkpoint", ckpt, "--wav", wav, "--src", src, "--tgt", tgt,
                  "--out", out.string(), "--f0", "flat:128", "--gl-iters", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("F0 mode: flat:128") != std::string::npos);
  const Matrix mel = ReadMatrix(out.string() + ".mel");
  CHECK(mel.cols() == 80);
  CHECK(fs::file_size(out.string() + ".wav") > 44);

  // An external contour with the right length is accepted.
  const fs::path bins = w / "bins.txt";
  {
    std::ofstream os(bins);
    for (Eigen::Index i = 0; i < mel.rows(); ++i) os << (i % 3 == 0 ? 256 : 100) << '\n';
  }
  r = Run({"convert", "--checkpoint", ckpt, "--wav", wav, "--src", src, "--tgt", tgt, "--out",
           out.string(), "--f0", "file:" + bins.string(), "--gl-iters", "2"});
  CHECK(r.code == 0);
  CHECK(ReadMatrix(out.string() + ".mel").rows() == mel.rows());

  std::ofstream(bins, std::ios::app) << "100\n";
  r = Run({"convert", "--checkpoint", ckpt, "--wav", wav, "--src", src, "--tgt", tgt, "--out",
           out.string(), "--f0", "file:" + bins.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("frames") != std::string::npos);

  r = Run({"convert", "--checkpoint", ckpt, "--wav", wav, "--src", "nobody", "--tgt", tgt, "--out",
           out.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("nobody") != std::string::npos);
  CHECK(Run({"convert", "--checkpoint", ckpt, "--wav", wav, "--src", src, "--tgt", tgt, "--out",
             out.string(), "--f0", "flat"})
            .code == 2);
}

TEST_CASE("eval: dist bundle shape and rerun determinism") {
  const fs::path w = WorkCopy("eval");
  REQUIRE(Run(Cmd({"train", "--iterations", "3"}, w)).code == 0);
  REQUIRE(Run(Cmd({"train", "--iterations", "3", "--no-f0"}, w)).code == 0);
  const std::vector<std::string> args =
      Cmd({"eval", "dist", "--baseline", (w / "model_no_f0.ckpt").string(), "--gl-iters", "2"}, w);
  REQUIRE(Run(args).code == 0);
  const fs::path dir = w / "eval" / "dist";
  const std::string csv = ReadAll(dir / "histograms.csv");
  CHECK(csv.rfind("bin_center,mass,series\n", 0) == 0);
  for (const char *series : {"ground_truth:low->high", "converted:low->high",
                             "ground_truth:high->low", "converted:high->low", "baseline:low->high"})
    CHECK(csv.find(series) != std::string::npos);
  const std::string summary = ReadAll(dir / "summary.json");
  CHECK(summary.find("\"js_margin\"") != std::string::npos);
  REQUIRE(Run(args).code == 0);
  CHECK(ReadAll(dir / "histograms.csv") == csv);
  CHECK(ReadAll(dir / "summary.json") == summary);
}

TEST_CASE("eval: leakage trains its decoder once, then reuses it") {
  const fs::path w = WorkCopy("leak");
  REQUIRE(Run(Cmd({"train", "--iterations", "3"}, w)).code == 0);
  const std::vector<std::string> args =
      Cmd({"eval", "leakage", "--gl-iters", "2", "--leakage-iterations", "2"}, w);
  // An almost untrained model may produce too little voiced speech to
  // correlate; the orchestration contract holds either way.
  Result r = Run(args);
  CHECK((r.code == 0 || r.code == 3));
  CHECK(r.out.find("training leakage decoder") != std::string::npos);
  const fs::path cache = w / "leakage_decoder.ckpt";
  REQUIRE(fs::exists(cache));
  const LoadedModel dec = LoadModelFile(cache.string());
  CHECK_FALSE(dec.model->config().use_f0);
  CHECK(dec.model->encoder_frozen());
  r = Run(args);
  CHECK(r.out.find("using cached leakage decoder") != std::string::npos);

  // A different F0 model invalidates the cache.
  REQUIRE(Run(Cmd({"train", "--iterations", "4", "--resume"}, w)).code == 0);
  r = Run(args);
  CHECK(r.out.find("does not match; retraining") != std::string::npos);
}
