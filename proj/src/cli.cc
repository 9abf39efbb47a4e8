/* Copyright 2026 The swmot Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "swmot/cli.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swmot/config.h"
#include "swmot/errors.h"
#include "swmot/metrics.h"
#include "swmot/motio.h"
#include "swmot/synth.h"
#include "swmot/tracker.h"

namespace swmot {
namespace {

namespace fs = std::filesystem;

Config ResolveConfig(const std::string& flag) {
  if (!flag.empty()) return LoadConfig(flag);
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return LoadConfig(env);
  }
  return Config{};
}

std::string Pick(const std::string& flag, const std::string& fallback) {
  return flag.empty() ? fallback : flag;
}

std::string Require(const std::string& value, const std::string& what) {
  if (value.empty()) throw ConfigError("missing " + what);
  return value;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size() || v < 1) {
      throw ConfigError("invalid list entry '" + item + "' in '" + text + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("empty list");
  return values;
}

// --- track ---------------------------------------------------------------

struct TrackArgs {
  std::string det, features, heatmaps, config, out;
};

int CmdTrack(const TrackArgs& a, std::ostream& out) {
  const Config config = ResolveConfig(a.config);
  const std::string det_path = Require(Pick(a.det, config.paths.det), "--det");
  const std::string out_path = Require(Pick(a.out, config.paths.out), "--out");
  const std::string feature_path = Pick(a.features, config.paths.features);
  const std::string heatmap_path = Pick(a.heatmaps, config.paths.heatmaps);

  const DetectionParseResult dets = ParseDetections(ReadTextFile(det_path));
  std::optional<FeatureMap> features;
  if (!feature_path.empty()) {
    features = LoadFeatureFile(feature_path, dets);
    if (!features) throw IoError("cannot open " + feature_path);
  }
  std::optional<HeatMapSidecar> maps;
  if (!heatmap_path.empty()) maps = HeatMapSidecar::Load(heatmap_path);

  const Sequence seq = MakeSequence(fs::path(det_path).stem().string(), dets,
                                    features ? &*features : nullptr);
  std::string mode = config.scorer;
  if (mode == "auto") mode = seq.has_features() ? "reference" : "iou";
  if (mode == "reference" && !seq.has_features()) {
    throw DataError("reference scorer needs a feature file");
  }
  const IouScorer iou;
  const ReferenceScorer reference;
  const MatchScorer& scorer =
      mode == "reference" ? static_cast<const MatchScorer&>(reference) : iou;
  const std::vector<TrackBox> boxes =
      RunSequence(seq, config.tracker, scorer, maps ? &*maps : nullptr);
  WriteTextFile(out_path, WriteMotFile(boxes));

  std::set<int> ids;
  for (const TrackBox& b : boxes) ids.insert(b.id);
  out << "sequence=" << seq.name << '\n'
      << "frames=" << seq.num_frames << '\n'
      << "scorer=" << mode << '\n'
      << "features=" << (seq.has_features() ? "yes" : "no") << '\n'
      << "heatmaps=" << (maps ? "yes" : "no") << '\n'
      << "boxes=" << boxes.size() << '\n'
      << "ids=" << ids.size() << '\n';
  return kExitOk;
}

// --- evaluate ------------------------------------------------------------

struct EvaluateArgs {
  std::string gt, result, config;
  std::vector<std::string> metrics;
  bool timing = false;
  std::string format = "table";
  std::optional<double> iou;
};

struct SequenceFiles {
  std::string name;
  fs::path gt;
  fs::path result;
};

// A directory of ground truth holds <name>.txt or <name>/gt/gt.txt; results
// are <name>.txt in the result directory.
std::vector<SequenceFiles> ListSequences(const fs::path& gt, const fs::path& result) {
  std::vector<SequenceFiles> files;
  if (!fs::is_directory(gt)) {
    files.push_back({fs::path(result).stem().string(), gt, result});
    return files;
  }
  if (!fs::is_directory(result)) {
    throw IoError("result path " + result.string() + " must be a directory");
  }
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(gt, ec)) {
    fs::path gt_file;
    std::string name;
    if (entry.is_directory() && fs::exists(entry.path() / "gt" / "gt.txt")) {
      gt_file = entry.path() / "gt" / "gt.txt";
      name = entry.path().filename().string();
    } else if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      gt_file = entry.path();
      name = entry.path().stem().string();
    } else {
      continue;
    }
    files.push_back({name, gt_file, result / (name + ".txt")});
  }
  if (ec) throw IoError("cannot list " + gt.string() + ": " + ec.message());
  if (files.empty()) throw IoError("no ground-truth files in " + gt.string());
  std::sort(files.begin(), files.end(),
            [](const SequenceFiles& a, const SequenceFiles& b) { return a.name < b.name; });
  return files;
}

MetricsReport EvaluateFiles(const SequenceFiles& f, const EvalOptions& options) {
  const TrackParseResult gt =
      ParseTracks(ReadTextFile(f.gt), MotFileKind::kGroundTruth);
  const TrackParseResult hyp =
      ParseTracks(ReadTextFile(f.result), MotFileKind::kResult);
  const std::vector<Trajectory> gt_tracks = TrajectoriesFromBoxes(gt.records);
  const std::vector<Trajectory> hyp_tracks = TrajectoriesFromBoxes(hyp.records);
  return Evaluate(f.name, gt_tracks, hyp_tracks, options);
}

int CmdEvaluate(const EvaluateArgs& a, std::ostream& out) {
  const Config config = ResolveConfig(a.config);
  const std::string gt = Require(Pick(a.gt, config.paths.gt), "--gt");
  const std::string result = Require(Pick(a.result, config.paths.result), "--result");
  EvalOptions options;
  options.iou_threshold = a.iou.value_or(config.metrics.iou_threshold);
  if (!(options.iou_threshold > 0.0 && options.iou_threshold <= 1.0)) {
    throw ConfigError("--iou must be in (0,1]");
  }
  ReportFormat format;
  format.columns = a.metrics;
  format.timing = a.timing;
  format.csv = a.format == "csv";
  // Reject bad columns before doing any work.
  FormatReport({}, format);

  const std::vector<SequenceFiles> files = ListSequences(gt, result);
  std::vector<std::future<MetricsReport>> jobs;
  for (const SequenceFiles& f : files) {
    jobs.push_back(std::async(std::launch::async, EvaluateFiles, f, options));
  }
  std::vector<MetricsReport> reports;
  for (auto& job : jobs) reports.push_back(job.get());
  std::vector<MetricsReport> rows;
  if (reports.size() > 1) rows.push_back(PoolReports(reports));
  rows.insert(rows.end(), reports.begin(), reports.end());
  out << FormatReport(rows, format);
  return kExitOk;
}

// --- bench ---------------------------------------------------------------

struct BenchArgs {
  std::string n_ih = "100,500,1000,2000";
  int n_ig = 30;
  int len = 200;
  std::uint64_t seed = 1;
  int repeats = 5;
  std::string plot;
};

std::string BenchSvg(const std::vector<BenchmarkRow>& rows) {
  const double width = 640, height = 400, left = 70, right = 20, top = 20,
               bottom = 50;
  double max_x = 1, max_t = 1e-9;
  for (const BenchmarkRow& r : rows) {
    max_x = std::max(max_x, static_cast<double>(r.n_ih));
    max_t = std::max({max_t, r.t_saidf, r.t_idf1, r.t_mota});
  }
  const auto px = [&](double x) { return left + x / max_x * (width - left - right); };
  const auto py = [&](double t) { return height - bottom - t / max_t * (height - top - bottom); };
  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << px(max_x)
      << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << left
      << "\" y2=\"" << py(max_t) << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\">N_IH</text>\n";
  svg << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 "
      << height / 2 << ")\" text-anchor=\"middle\">seconds (max "
      << std::setprecision(6) << max_t << std::setprecision(2) << ")</text>\n";
  struct Series {
    const char* name;
    const char* color;
    double BenchmarkRow::*field;
  };
  const Series series[] = {{"t_SAIDF", "#1f77b4", &BenchmarkRow::t_saidf},
                           {"t_IDF1", "#d62728", &BenchmarkRow::t_idf1},
                           {"t_MOTA", "#2ca02c", &BenchmarkRow::t_mota}};
  int k = 0;
  for (const Series& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
    for (const BenchmarkRow& r : rows) svg << px(r.n_ih) << ',' << py(r.*s.field) << ' ';
    svg << "\"/>\n";
    svg << "<text x=\"" << left + 10 << "\" y=\"" << top + 15 * (k + 1)
        << "\" fill=\"" << s.color << "\">" << s.name << "</text>\n";
    ++k;
  }
  svg << "</svg>\n";
  return svg.str();
}

int CmdBench(const BenchArgs& a, std::ostream& out) {
  const std::vector<int> n_ih = ParseIntList(a.n_ih);
  if (a.n_ig < 1 || a.len < 1 || a.repeats < 1) {
    throw ConfigError("--n-ig, --len and --repeats must be positive");
  }
  const std::vector<BenchmarkRow> rows =
      BenchmarkIdSets(n_ih, a.n_ig, a.len, a.seed, a.repeats);
  out << std::left << std::setw(8) << "N_IH" << std::right << std::setw(12)
      << "t_SAIDF" << std::setw(12) << "t_IDF1" << std::setw(12) << "t_MOTA" << '\n';
  out << std::fixed << std::setprecision(6);
  for (const BenchmarkRow& r : rows) {
    out << std::left << std::setw(8) << r.n_ih << std::right << std::setw(12)
        << r.t_saidf << std::setw(12) << r.t_idf1 << std::setw(12) << r.t_mota << '\n';
  }
  if (!a.plot.empty()) WriteTextFile(a.plot, BenchSvg(rows));
  return kExitOk;
}

// --- synth ---------------------------------------------------------------

struct SynthArgs {
  std::string scenario;
  std::string out_dir;
  std::uint64_t seed = 1;
};

void MakeDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string() +
                  (ec ? ": " + ec.message() : ""));
  }
}

std::string SensitivityTable(const std::vector<SensitivityRow>& rows) {
  std::ostringstream ss;
  ss << "m,delta_mota,delta_idf1,delta_saidf\n" << std::fixed << std::setprecision(6);
  for (const SensitivityRow& r : rows) {
    ss << std::setprecision(2) << r.m << std::setprecision(6) << ',' << r.delta_mota
       << ',' << r.delta_idf1 << ',' << r.delta_saidf << '\n';
  }
  return ss.str();
}

int CmdSynth(const SynthArgs& a, std::ostream& out) {
  const fs::path dir = a.out_dir;
  MakeDirectory(dir);
  if (a.scenario == "crossing") {
    ExportScenario(Generate(CrossingSpec(a.seed)), dir);
    out << "wrote crossing scenario to " << dir.string() << '\n';
  } else if (a.scenario == "fig5a") {
    for (const Fig5aCase& c : Fig5aCases()) {
      MakeDirectory(dir / c.name);
      const auto gt = BoxesFromTrajectories(c.gt);
      const auto hyp = BoxesFromTrajectories(c.hyp);
      WriteTextFile(dir / c.name / "gt.txt", WriteGtFile(gt));
      WriteTextFile(dir / c.name / "result.txt", WriteMotFile(hyp));
    }
    out << "wrote 4 cases to " << dir.string() << '\n';
  } else {
    std::vector<double> m;
    for (int k = 1; k <= 10; ++k) m.push_back(0.05 * k);
    const std::string table = SensitivityTable(SensitivityCurve(m, 1000));
    WriteTextFile(dir / "sensitivity.csv", table);
    out << table;
  }
  return kExitOk;
}

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIo;
  if (dynamic_cast<const ConfigError*>(&e) != nullptr) return kExitConfig;
  if (dynamic_cast<const DataError*>(&e) != nullptr) return kExitData;
  if (dynamic_cast<const fs::filesystem_error*>(&e) != nullptr) return kExitIo;
  return kExitData;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"switcher-aware tracking and evaluation"};
  app.require_subcommand(1);

  TrackArgs track;
  auto* track_cmd = app.add_subcommand("track", "run the tracker on a detection file");
  track_cmd->add_option("--det", track.det, "detection file");
  track_cmd->add_option("--features", track.features, "feature CSV, one row per detection");
  track_cmd->add_option("--heatmaps", track.heatmaps, "heat-map sidecar");
  track_cmd->add_option("--config", track.config, "config file");
  track_cmd->add_option("--out", track.out, "result file");

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "score a result against ground truth");
  eval_cmd->add_option("--gt", eval.gt, "ground-truth file or directory");
  eval_cmd->add_option("--result", eval.result, "result file or directory");
  eval_cmd->add_option("--metrics", eval.metrics, "columns to print")->delimiter(',');
  eval_cmd->add_flag("--timing", eval.timing, "add metric run times");
  eval_cmd->add_option("--format", eval.format, "table or csv")
      ->check(CLI::IsMember({"table", "csv"}));
  eval_cmd->add_option("--iou", eval.iou, "frame-matching IoU threshold");
  eval_cmd->add_option("--config", eval.config, "config file");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "time the identity metrics");
  bench_cmd->add_option("--n-ih", bench.n_ih, "comma-separated hypothesis id counts");
  bench_cmd->add_option("--n-ig", bench.n_ig, "ground-truth ids");
  bench_cmd->add_option("--len", bench.len, "sequence length");
  bench_cmd->add_option("--seed", bench.seed, "fragmentation seed");
  bench_cmd->add_option("--repeats", bench.repeats, "runs per measurement");
  bench_cmd->add_option("--plot", bench.plot, "SVG output");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "write synthetic scenarios");
  synth_cmd->add_option("--scenario", synth.scenario)
      ->required()
      ->check(CLI::IsMember({"crossing", "fig5a", "fig5b"}));
  synth_cmd->add_option("--out-dir", synth.out_dir)->required();
  synth_cmd->add_option("--seed", synth.seed);

  std::string config_path;
  bool dump = false;
  auto* config_cmd = app.add_subcommand("config", "inspect configuration");
  config_cmd->add_flag("--dump", dump, "print the effective configuration");
  config_cmd->add_option("--config", config_path, "config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (track_cmd->parsed()) return CmdTrack(track, out);
    if (eval_cmd->parsed()) return CmdEvaluate(eval, out);
    if (bench_cmd->parsed()) return CmdBench(bench, out);
    if (synth_cmd->parsed()) return CmdSynth(synth, out);
    if (config_cmd->parsed()) {
      const Config config = ResolveConfig(config_path);
      if (dump) out << DumpConfig(config);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e);
  }
  return kExitConfig;
}

}  // namespace swmot
