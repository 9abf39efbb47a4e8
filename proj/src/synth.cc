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

#include "swmot/synth.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "swmot/errors.h"

namespace swmot {
namespace {

using Rng = std::mt19937_64;

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Feature RandomUnit(Rng& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Feature v(dim);
  for (double& x : v) x = normal(rng);
  return Normalized(std::move(v));
}

std::vector<TargetSpec> DrawTargets(const ScenarioSpec& spec, Rng& rng) {
  std::vector<TargetSpec> targets;
  if (spec.motion == Motion::kCrossing) {
    // Pairs meet head-on at the image center around mid-sequence; the second
    // of each pair runs slightly lower.
    const double w = 40.0;
    const double h = 80.0;
    for (int i = 0; i < spec.num_targets; i += 2) {
      const double v = Uniform(rng, 8.0, 16.0);
      const double dy = Uniform(rng, 16.0, 30.0);
      const double meet = 0.5 * (spec.num_frames + 1) + Uniform(rng, 0.0, 1.0);
      const double y = 200.0 + 250.0 * (i / 2);
      const double x_left = 960.0 - w / 2.0 + v * (1.0 - meet);
      const double x_right = 960.0 - w / 2.0 - v * (1.0 - meet);
      targets.push_back({{x_left, y, w, h}, v, 0.0});
      if (i + 1 < spec.num_targets) {
        targets.push_back({{x_right, y + dy, w, h}, -v, 0.0});
      }
    }
    return targets;
  }
  for (int i = 0; i < spec.num_targets; ++i) {
    const double w = Uniform(rng, 30.0, 60.0);
    const BBox box{Uniform(rng, 0.0, 1800.0), Uniform(rng, 0.0, 900.0), w,
                   2.0 * w};
    targets.push_back({box, Uniform(rng, -4.0, 4.0), Uniform(rng, -2.0, 2.0)});
  }
  return targets;
}

// Frames of motion completed before frame t.
int MovingSteps(Motion motion, int t) {
  if (motion != Motion::kStopAndGo) return t - 1;
  int steps = 0;
  for (int s = 1; s < t; ++s) {
    if (((s - 1) / 10) % 2 == 0) ++steps;
  }
  return steps;
}

// Fraction of b hidden behind boxes closer to the camera.
double HiddenFraction(const BBox& b, std::span<const BBox> others) {
  double hidden = 0.0;
  for (const BBox& o : others) {
    if (o.bottom() > b.bottom()) {
      hidden = std::max(hidden, IntersectionArea(b, o) / b.area());
    }
  }
  return hidden;
}

}  // namespace

void ScenarioSpec::Validate() const {
  if (num_frames < 1) throw ConfigError("num_frames must be positive");
  if (num_targets < 1) throw ConfigError("num_targets must be positive");
  if (!(noise >= 0.0)) throw ConfigError("noise must be non-negative");
  if (!(feature_noise >= 0.0 && feature_noise <= 1.0)) {
    throw ConfigError("feature_noise must be in [0,1]");
  }
  if (feature_dim < 1) throw ConfigError("feature_dim must be positive");
  if (!(occlusion_drop >= 0.0 && occlusion_drop <= 1.0)) {
    throw ConfigError("occlusion_drop must be in [0,1]");
  }
  if (!targets.empty() && static_cast<int>(targets.size()) != num_targets) {
    throw ConfigError("targets must list num_targets entries");
  }
  for (const TargetSpec& t : targets) {
    if (!t.box.valid()) throw ConfigError("target box must have positive size");
  }
  std::set<int> seen;
  for (const Fragmentation& f : fragmentation) {
    if (f.target < 1 || f.target > num_targets) {
      throw ConfigError("fragmentation target out of range");
    }
    if (!seen.insert(f.target).second) {
      throw ConfigError("target fragmented twice");
    }
    for (std::size_t i = 0; i < f.split_frames.size(); ++i) {
      const int s = f.split_frames[i];
      if (s < 2 || s > num_frames) throw ConfigError("split frame out of range");
      if (i > 0 && s <= f.split_frames[i - 1]) {
        throw ConfigError("split frames must be strictly increasing");
      }
    }
    if (f.ids.size() != f.split_frames.size() + 1) {
      throw ConfigError("fragmentation needs one id per segment");
    }
  }
}

Sequence Scenario::ToSequence(std::string name, bool with_features) const {
  Sequence seq;
  seq.name = std::move(name);
  seq.num_frames = num_frames;
  seq.detections = detections;
  if (!with_features) {
    for (auto& frame : seq.detections) {
      for (Detection& d : frame) d.feature.reset();
    }
  }
  seq.gt = GtBoxes();
  return seq;
}

Scenario Generate(const ScenarioSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  const std::vector<TargetSpec> targets =
      spec.targets.empty() ? DrawTargets(spec, rng) : spec.targets;
  const int n = static_cast<int>(targets.size());

  Scenario s;
  s.num_frames = spec.num_frames;
  s.gt.resize(n);
  for (int i = 0; i < n; ++i) {
    s.gt[i].id = i + 1;
    s.identity_features[i + 1] = RandomUnit(rng, spec.feature_dim);
  }
  std::normal_distribution<double> jitter(0.0, 1.0);
  s.detections.resize(spec.num_frames);
  for (int t = 1; t <= spec.num_frames; ++t) {
    const int steps = MovingSteps(spec.motion, t);
    std::vector<BBox> boxes(n);
    for (int i = 0; i < n; ++i) {
      const TargetSpec& ts = targets[i];
      boxes[i] = {ts.box.x + ts.vx * steps, ts.box.y + ts.vy * steps, ts.box.w,
                  ts.box.h};
      for (int j = 0; j < i; ++j) {
        if (boxes[j] == boxes[i]) {
          throw ConfigError("targets " + std::to_string(j + 1) + " and " +
                            std::to_string(i + 1) + " coincide in frame " +
                            std::to_string(t));
        }
      }
      s.gt[i].boxes.emplace(t, boxes[i]);
    }
    for (int i = 0; i < n; ++i) {
      std::vector<BBox> others;
      for (int j = 0; j < n; ++j) {
        if (j != i) others.push_back(boxes[j]);
      }
      // Draw noise even for dropped detections so visibility does not shift
      // the random stream.
      BBox box = boxes[i];
      double dx = 0.0, dy = 0.0, dw = 0.0, dh = 0.0;
      if (spec.noise > 0.0) {
        dx = spec.noise * jitter(rng);
        dy = spec.noise * jitter(rng);
        dw = spec.noise * jitter(rng);
        dh = spec.noise * jitter(rng);
      }
      box.x += dx;
      box.y += dy;
      box.w = std::max(1.0, box.w + dw);
      box.h = std::max(1.0, box.h + dh);
      const double score = Uniform(rng, 0.9, 1.0);
      Feature noise_dir = RandomUnit(rng, spec.feature_dim);
      if (HiddenFraction(boxes[i], others) > spec.occlusion_drop) continue;
      const Feature& base = s.identity_features[i + 1];
      Feature f(base.size());
      for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = (1.0 - spec.feature_noise) * base[k] + spec.feature_noise * noise_dir[k];
      }
      Detection d;
      d.frame = t;
      d.box = box;
      d.score = score;
      try {
        d.feature = Normalized(std::move(f));
      } catch (const DataError&) {
        d.feature = noise_dir;
      }
      s.detections[t - 1].push_back(std::move(d));
    }
  }

  std::map<int, const Fragmentation*> plan;
  for (const Fragmentation& f : spec.fragmentation) plan[f.target] = &f;
  std::vector<TrackBox> hyp_boxes;
  for (const Trajectory& g : s.gt) {
    const auto it = plan.find(g.id);
    for (const auto& [frame, box] : g.boxes) {
      int id = g.id;
      if (it != plan.end()) {
        const auto& splits = it->second->split_frames;
        const auto k = std::upper_bound(splits.begin(), splits.end(), frame) -
                       splits.begin();
        id = it->second->ids[k];
      }
      hyp_boxes.push_back({frame, id, box, 1.0});
    }
  }
  s.hyp = TrajectoriesFromBoxes(hyp_boxes);
  return s;
}

ScenarioSpec CrossingSpec(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.num_frames = 60;
  spec.num_targets = 2;
  spec.motion = Motion::kCrossing;
  spec.noise = 0.5;
  spec.feature_noise = 0.1;
  spec.seed = seed;
  return spec;
}

OracleHeatMaps::OracleHeatMaps(std::vector<Trajectory> gt, int width,
                               int height)
    : gt_(std::move(gt)), width_(width), height_(height) {}

std::optional<HeatMap> OracleHeatMaps::Lookup(int frame,
                                              const TrackState& track) const {
  int best_id = -1;
  double best_iou = 0.0;
  for (const Trajectory& g : gt_) {
    const auto it = g.boxes.find(frame - 1);
    if (it == g.boxes.end()) continue;
    const double iou = Iou(it->second, track.box);
    if (iou > best_iou) {
      best_iou = iou;
      best_id = g.id;
    }
  }
  if (best_id < 0) return std::nullopt;
  return ForIdentity(frame, best_id, track.box);
}

std::optional<HeatMap> OracleHeatMaps::ForIdentity(int frame, int id,
                                                   const BBox& prev_box) const {
  const auto self = std::find_if(gt_.begin(), gt_.end(),
                                 [&](const Trajectory& g) { return g.id == id; });
  if (self == gt_.end() || !self->Has(frame)) return std::nullopt;
  HeatMap map;
  map.geometry = SearchRegionFor(prev_box, width_, height_);
  const double sx = kSigmaRatio * map.geometry.template_w;
  const double sy = kSigmaRatio * map.geometry.template_h;
  map.values.assign(map.geometry.cell_count(), 0.0);
  for (const Trajectory& g : gt_) {
    const auto it = g.boxes.find(frame);
    if (it == g.boxes.end()) continue;
    const double peak = g.id == id ? kMainPeak : kSecondaryPeak;
    const double gx = it->second.center_x();
    const double gy = it->second.center_y();
    for (int row = 0; row < height_; ++row) {
      const double ny = (map.geometry.CellY(row) - gy) / sy;
      for (int col = 0; col < width_; ++col) {
        const double nx = (map.geometry.CellX(col) - gx) / sx;
        double& v = map.values[row * width_ + col];
        v = std::max(v, peak * std::exp(-0.5 * (nx * nx + ny * ny)));
      }
    }
  }
  return map;
}

std::vector<Fig5aCase> Fig5aCases() {
  const BBox box{100.0, 100.0, 50.0, 100.0};
  Trajectory truth{1, {}};
  for (int f = 1; f <= 100; ++f) truth.boxes.emplace(f, box);
  const auto make = [&](std::string name, auto id_of) {
    std::vector<TrackBox> boxes;
    for (int f = 1; f <= 100; ++f) {
      const int id = id_of(f);
      if (id > 0) boxes.push_back({f, id, box, 1.0});
    }
    return Fig5aCase{std::move(name), {truth}, TrajectoriesFromBoxes(boxes)};
  };
  return {
      make("case1", [](int f) { return f >= 49 && f <= 52 ? 2 : 1; }),
      make("case2", [](int f) { return f <= 60 ? 1 : 2; }),
      make("case3", [](int f) { return f > 50 ? 1 : f <= 25 ? 2 : 3; }),
      make("case4", [](int f) { return f > 50 ? 1 : 2 + (f - 1) / 5; }),
  };
}

std::vector<Trajectory> BenchmarkGroundTruth(int n_ig, int seq_len) {
  if (n_ig < 1 || seq_len < 1) {
    throw ConfigError("n_ig and seq_len must be positive");
  }
  std::vector<Trajectory> gt(n_ig);
  for (int i = 0; i < n_ig; ++i) {
    gt[i].id = i + 1;
    const BBox box{100.0 * (i % 10), 150.0 * (i / 10), 40.0, 80.0};
    for (int f = 1; f <= seq_len; ++f) gt[i].boxes.emplace(f, box);
  }
  return gt;
}

std::vector<Trajectory> FragmentIdentities(std::span<const Trajectory> gt,
                                           int n_ih, std::uint64_t seed) {
  const int n_ig = static_cast<int>(gt.size());
  long n_h = 0;
  for (const Trajectory& g : gt) n_h += g.len();
  if (n_ih < n_ig) {
    throw ConfigError("N_IH = " + std::to_string(n_ih) + " below N_IG = " +
                      std::to_string(n_ig));
  }
  if (n_ih > n_h) {
    throw ConfigError("N_IH = " + std::to_string(n_ih) +
                      " exceeds the number of boxes " + std::to_string(n_h));
  }
  // Boundary b of track k lies between its b-th and (b+1)-th box.
  std::vector<std::pair<int, int>> boundaries;
  for (int k = 0; k < n_ig; ++k) {
    for (int b = 1; b < gt[k].len(); ++b) boundaries.emplace_back(k, b);
  }
  std::seed_seq seq{seed, static_cast<std::uint64_t>(n_ih)};
  Rng rng(seq);
  std::shuffle(boundaries.begin(), boundaries.end(), rng);
  boundaries.resize(n_ih - n_ig);
  std::sort(boundaries.begin(), boundaries.end());
  std::vector<int> ids(n_ih);
  std::iota(ids.begin(), ids.end(), 1);
  std::shuffle(ids.begin(), ids.end(), rng);

  std::vector<TrackBox> boxes;
  boxes.reserve(n_h);
  int segment = 0;
  auto cut = boundaries.begin();
  for (int k = 0; k < n_ig; ++k) {
    int b = 0;
    for (const auto& [frame, box] : gt[k].boxes) {
      if (b > 0 && cut != boundaries.end() && *cut == std::pair(k, b)) {
        ++segment;
        ++cut;
      }
      boxes.push_back({frame, ids[segment], box, 1.0});
      ++b;
    }
    ++segment;
  }
  return TrajectoriesFromBoxes(boxes);
}

std::vector<BenchmarkRow> BenchmarkIdSets(std::span<const int> n_ih_values,
                                          int n_ig, int seq_len,
                                          std::uint64_t seed, int repeats) {
  if (repeats < 1) throw ConfigError("repeats must be positive");
  const std::vector<Trajectory> gt = BenchmarkGroundTruth(n_ig, seq_len);
  using Clock = std::chrono::steady_clock;
  const auto median_time = [&](auto&& fn) {
    std::vector<double> times;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = Clock::now();
      fn();
      times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };
  std::vector<BenchmarkRow> rows;
  volatile double sink = 0.0;
  for (int n_ih : n_ih_values) {
    const std::vector<Trajectory> hyp = FragmentIdentities(gt, n_ih, seed);
    const FrameMatching matching = MatchFrames(gt, hyp);
    BenchmarkRow row;
    row.n_ih = n_ih;
    row.t_saidf = median_time([&] { sink = sink + ComputeSaidf(matching, gt, hyp).saidf; });
    row.t_idf1 = median_time([&] { sink = sink + ComputeIdf1(matching, gt, hyp).idf1; });
    row.t_mota = median_time([&] { sink = sink + ComputeClearMot(matching, gt, hyp).mota; });
    rows.push_back(row);
  }
  return rows;
}

void ExportScenario(const Scenario& scenario, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  const std::vector<TrackBox> gt_boxes = scenario.GtBoxes();
  WriteTextFile(dir / "gt.txt", WriteGtFile(gt_boxes));
  std::vector<Detection> dets;
  std::vector<Feature> features;
  for (const auto& frame : scenario.detections) {
    for (const Detection& d : frame) {
      dets.push_back(d);
      if (d.feature) features.push_back(*d.feature);
    }
  }
  WriteTextFile(dir / "det.txt", WriteDetFile(dets));
  if (features.size() == dets.size()) {
    WriteTextFile(dir / "features.csv", WriteFeatureCsv(features));
  }
  OracleHeatMaps oracle(scenario.gt);
  HeatMapSidecar sidecar(31, 31);
  for (const Trajectory& g : scenario.gt) {
    for (const auto& [frame, box] : g.boxes) {
      const auto prev = g.boxes.find(frame - 1);
      if (prev == g.boxes.end()) continue;
      const auto map = oracle.ForIdentity(frame, g.id, prev->second);
      if (!map) continue;
      sidecar.Add(frame, g.id, std::vector<float>(map->values.begin(), map->values.end()));
    }
  }
  WriteTextFile(dir / "heatmaps.swhm", sidecar.Serialize());
}

}  // namespace swmot
