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

#include "swmot/metrics.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "swmot/errors.h"
#include "swmot/hungarian.h"

namespace swmot {
namespace {

struct FrameBox {
  int id;
  BBox box;
};

using FrameIndex = std::map<int, std::vector<FrameBox>>;

FrameIndex IndexByFrame(std::span<const Trajectory> tracks) {
  FrameIndex index;
  for (const Trajectory& t : tracks) {
    for (const auto& [frame, box] : t.boxes) index[frame].push_back({t.id, box});
  }
  return index;
}

std::unordered_map<int, int> IdToIndex(std::span<const Trajectory> tracks) {
  std::unordered_map<int, int> index;
  index.reserve(tracks.size());
  for (int i = 0; i < static_cast<int>(tracks.size()); ++i) {
    if (!index.emplace(tracks[i].id, i).second) {
      throw DataError("duplicate trajectory id " + std::to_string(tracks[i].id));
    }
  }
  return index;
}

long TotalLength(std::span<const Trajectory> tracks) {
  long total = 0;
  for (const Trajectory& t : tracks) total += t.len();
  return total;
}

std::uint64_t PairKey(int o, int q) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(o)) << 32) |
         static_cast<std::uint32_t>(q);
}

// Matched-frame counts M(o, q) keyed by trajectory indices.
std::unordered_map<std::uint64_t, int> MatchCounts(
    const FrameMatching& matching, const std::unordered_map<int, int>& gt_index,
    const std::unordered_map<int, int>& hyp_index) {
  std::unordered_map<std::uint64_t, int> counts;
  for (const FrameMatch& fm : matching.frames) {
    for (const auto& [g, h] : fm.pairs) {
      ++counts[PairKey(gt_index.at(g), hyp_index.at(h))];
    }
  }
  return counts;
}

int Intersection(const Trajectory& a, const Trajectory& b) {
  const Trajectory& small = a.len() <= b.len() ? a : b;
  const Trajectory& large = a.len() <= b.len() ? b : a;
  int count = 0;
  for (const auto& [frame, box] : small.boxes) {
    if (large.Has(frame)) ++count;
  }
  return count;
}

double Seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

double Ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double HarmonicMean(double a, double b) {
  return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0;
}

}  // namespace

std::vector<Trajectory> TrajectoriesFromBoxes(std::span<const TrackBox> boxes) {
  std::map<int, Trajectory> by_id;
  for (const TrackBox& b : boxes) {
    Trajectory& t = by_id[b.id];
    t.id = b.id;
    if (!t.boxes.emplace(b.frame, b.box).second) {
      throw DataError("duplicate (frame, id) = (" + std::to_string(b.frame) +
                      ", " + std::to_string(b.id) + ")");
    }
  }
  std::vector<Trajectory> out;
  out.reserve(by_id.size());
  for (auto& [id, t] : by_id) out.push_back(std::move(t));
  return out;
}

std::vector<TrackBox> BoxesFromTrajectories(std::span<const Trajectory> tracks) {
  std::vector<TrackBox> out;
  for (const Trajectory& t : tracks) {
    for (const auto& [frame, box] : t.boxes) out.push_back({frame, t.id, box, 1.0});
  }
  std::sort(out.begin(), out.end(), [](const TrackBox& a, const TrackBox& b) {
    return std::pair(a.frame, a.id) < std::pair(b.frame, b.id);
  });
  return out;
}

FrameMatching MatchFrames(std::span<const Trajectory> gt,
                          std::span<const Trajectory> hyp,
                          double iou_threshold) {
  FrameMatching matching;
  matching.iou_threshold = iou_threshold;
  const FrameIndex gt_at = IndexByFrame(gt);
  const FrameIndex hyp_at = IndexByFrame(hyp);
  std::vector<int> frames;
  for (const auto& [f, v] : gt_at) frames.push_back(f);
  for (const auto& [f, v] : hyp_at) frames.push_back(f);
  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());

  static const std::vector<FrameBox> kNone;
  std::unordered_map<int, int> prev_pairs;
  int prev_frame = -1;
  for (int frame : frames) {
    const auto git = gt_at.find(frame);
    const auto hit = hyp_at.find(frame);
    const auto& gs = git == gt_at.end() ? kNone : git->second;
    const auto& hs = hit == hyp_at.end() ? kNone : hit->second;
    const int n = static_cast<int>(gs.size());
    const int m = static_cast<int>(hs.size());
    std::vector<bool> g_used(n, false);
    std::vector<bool> h_used(m, false);
    struct Pair {
      int g, h;
      double iou;
    };
    std::vector<Pair> pairs;

    if (prev_frame == frame - 1 && !prev_pairs.empty()) {
      std::unordered_map<int, int> h_slot;
      for (int j = 0; j < m; ++j) h_slot.emplace(hs[j].id, j);
      for (int i = 0; i < n; ++i) {
        const auto pit = prev_pairs.find(gs[i].id);
        if (pit == prev_pairs.end()) continue;
        const auto sit = h_slot.find(pit->second);
        if (sit == h_slot.end() || h_used[sit->second]) continue;
        const double iou = Iou(gs[i].box, hs[sit->second].box);
        if (iou < iou_threshold) continue;
        g_used[i] = true;
        h_used[sit->second] = true;
        pairs.push_back({i, sit->second, iou});
      }
    }

    std::vector<int> rows, cols;
    for (int i = 0; i < n; ++i) if (!g_used[i]) rows.push_back(i);
    for (int j = 0; j < m; ++j) if (!h_used[j]) cols.push_back(j);
    if (!rows.empty() && !cols.empty()) {
      // Every valid pair is worth more than any total IoU, so cardinality
      // is maximized first and IoU second.
      const double bonus =
          static_cast<double>(std::min(rows.size(), cols.size())) + 1.0;
      Matrix<double> weight(static_cast<int>(rows.size()),
                            static_cast<int>(cols.size()), 0.0);
      Matrix<double> ious(weight.rows(), weight.cols(), 0.0);
      ForbidMask forbid(weight.rows(), weight.cols(), 0);
      bool any = false;
      for (int r = 0; r < weight.rows(); ++r) {
        for (int c = 0; c < weight.cols(); ++c) {
          const double iou = Iou(gs[rows[r]].box, hs[cols[c]].box);
          ious(r, c) = iou;
          if (iou >= iou_threshold && iou > 0.0) {
            weight(r, c) = bonus + iou;
            any = true;
          } else {
            forbid(r, c) = 1;
          }
        }
      }
      if (any) {
        for (const auto& [r, c] : Hungarian(weight, &forbid, 0.0)) {
          g_used[rows[r]] = true;
          h_used[cols[c]] = true;
          pairs.push_back({rows[r], cols[c], ious(r, c)});
        }
      }
    }

    std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      return gs[a.g].id < gs[b.g].id;
    });
    FrameMatch fm;
    fm.frame = frame;
    prev_pairs.clear();
    for (const Pair& p : pairs) {
      fm.pairs.emplace_back(gs[p.g].id, hs[p.h].id);
      fm.ious.push_back(p.iou);
      prev_pairs.emplace(gs[p.g].id, hs[p.h].id);
    }
    for (int i = 0; i < n; ++i) if (!g_used[i]) fm.unmatched_gt.push_back(gs[i].id);
    for (int j = 0; j < m; ++j) if (!h_used[j]) fm.unmatched_hyp.push_back(hs[j].id);
    std::sort(fm.unmatched_gt.begin(), fm.unmatched_gt.end());
    std::sort(fm.unmatched_hyp.begin(), fm.unmatched_hyp.end());
    matching.frames.push_back(std::move(fm));
    prev_frame = frame;
  }
  return matching;
}

ClearMotScores ComputeClearMot(const FrameMatching& matching,
                               std::span<const Trajectory> gt,
                               std::span<const Trajectory> hyp) {
  (void)hyp;
  ClearMotScores s;
  const auto gt_index = IdToIndex(gt);
  std::unordered_map<int, int> last_match;
  // Per ground-truth trajectory: matched frames, runs of matched frames.
  std::vector<int> matched(gt.size(), 0);
  std::vector<std::vector<int>> matched_frames(gt.size());
  for (const FrameMatch& fm : matching.frames) {
    s.num_gt_boxes += static_cast<long>(fm.pairs.size() + fm.unmatched_gt.size());
    s.fn += static_cast<long>(fm.unmatched_gt.size());
    s.fp += static_cast<long>(fm.unmatched_hyp.size());
    for (std::size_t k = 0; k < fm.pairs.size(); ++k) {
      const auto [g, h] = fm.pairs[k];
      const auto it = last_match.find(g);
      if (it != last_match.end() && it->second != h) ++s.ids;
      last_match[g] = h;
      s.iou_sum += fm.ious[k];
      ++s.num_matches;
      const int gi = gt_index.at(g);
      ++matched[gi];
      matched_frames[gi].push_back(fm.frame);
    }
  }
  if (s.num_gt_boxes == 0) throw DataError("empty ground truth");
  s.mota = 1.0 - static_cast<double>(s.fn + s.fp + s.ids) / s.num_gt_boxes;
  s.motp = Ratio(s.iou_sum, static_cast<double>(s.num_matches));
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const double ratio = Ratio(matched[i], gt[i].len());
    if (ratio >= 0.8) {
      ++s.mt;
    } else if (ratio <= 0.2) {
      ++s.ml;
    } else {
      ++s.pt;
    }
    // A fragmentation is a matched run that resumes after the trajectory
    // went untracked while still present.
    const auto& frames = matched_frames[i];
    if (frames.empty()) continue;
    auto it = gt[i].boxes.find(frames.front());
    std::size_t k = 0;
    bool tracking = true;
    for (; it != gt[i].boxes.end() && k < frames.size(); ++it) {
      const bool is_matched = it->first == frames[k];
      if (is_matched) {
        if (!tracking) ++s.fm;
        ++k;
      }
      tracking = is_matched;
    }
  }
  return s;
}

IdScores ComputeIdf1(const FrameMatching& matching,
                     std::span<const Trajectory> gt,
                     std::span<const Trajectory> hyp) {
  IdScores s;
  s.gt_len = TotalLength(gt);
  s.hyp_len = TotalLength(hyp);
  if (s.gt_len == 0) throw DataError("empty ground truth");
  if (s.hyp_len == 0) return s;
  const auto gt_index = IdToIndex(gt);
  const auto hyp_index = IdToIndex(hyp);
  const auto counts = MatchCounts(matching, gt_index, hyp_index);
  const int n_o = static_cast<int>(gt.size());
  const int n_q = static_cast<int>(hyp.size());
  const int n = n_o + n_q;
  // Rows: ground truth, then one false-positive slot per hypothesis.
  // Columns: hypotheses, then one false-negative slot per ground truth.
  const double forbidden = static_cast<double>(s.gt_len + s.hyp_len) + 1.0;
  Matrix<double> cost(n, n, 0.0);
  for (int o = 0; o < n_o; ++o) {
    for (int q = 0; q < n_q; ++q) cost(o, q) = gt[o].len() + hyp[q].len();
    for (int k = 0; k < n_o; ++k) cost(o, n_q + k) = k == o ? gt[o].len() : forbidden;
  }
  for (int q = 0; q < n_q; ++q) {
    for (int k = 0; k < n_q; ++k) cost(n_o + q, k) = k == q ? hyp[q].len() : forbidden;
  }
  for (const auto& [key, count] : counts) {
    const int o = static_cast<int>(key >> 32);
    const int q = static_cast<int>(key & 0xffffffffu);
    cost(o, q) -= 2.0 * count;
  }
  const std::vector<int> assigned = SolveMinCostAssignment(cost);
  for (int o = 0; o < n_o; ++o) {
    const int q = assigned[o];
    if (q < 0 || q >= n_q) continue;
    const auto it = counts.find(PairKey(o, q));
    if (it != counts.end()) s.idtp += it->second;
  }
  s.idr = Ratio(s.idtp, s.gt_len);
  s.idp = Ratio(s.idtp, s.hyp_len);
  s.idf1 = Ratio(2.0 * s.idtp, static_cast<double>(s.gt_len + s.hyp_len));
  return s;
}

SaidfScores ComputeSaidf(const FrameMatching& matching,
                         std::span<const Trajectory> gt,
                         std::span<const Trajectory> hyp) {
  SaidfScores s;
  s.gt_len = TotalLength(gt);
  s.hyp_len = TotalLength(hyp);
  if (s.gt_len == 0) throw DataError("empty ground truth");
  if (s.hyp_len == 0) return s;
  const auto gt_index = IdToIndex(gt);
  const auto hyp_index = IdToIndex(hyp);
  const auto counts = MatchCounts(matching, gt_index, hyp_index);

  // Pairs in (o, q) order so per-trajectory sums accumulate in index order.
  std::vector<std::pair<std::uint64_t, int>> pairs(counts.begin(), counts.end());
  std::sort(pairs.begin(), pairs.end());
  std::vector<double> recall_sq(gt.size(), 0.0);
  std::vector<double> precision_sq(hyp.size(), 0.0);
  for (const auto& [key, count] : pairs) {
    const int o = static_cast<int>(key >> 32);
    const int q = static_cast<int>(key & 0xffffffffu);
    const int union_len = gt[o].len() + hyp[q].len() - Intersection(gt[o], hyp[q]);
    const double lambda = static_cast<double>(count) / union_len;
    recall_sq[o] += lambda * lambda;
    precision_sq[q] += lambda * lambda;
  }
  for (std::size_t o = 0; o < gt.size(); ++o) {
    s.recall_num += gt[o].len() * std::sqrt(recall_sq[o]);
  }
  for (std::size_t q = 0; q < hyp.size(); ++q) {
    s.precision_num += hyp[q].len() * std::sqrt(precision_sq[q]);
  }
  s.saidr = s.recall_num / s.gt_len;
  s.saidp = s.precision_num / s.hyp_len;
  s.saidf = HarmonicMean(s.saidr, s.saidp);
  return s;
}

MetricsReport Evaluate(std::string name, std::span<const Trajectory> gt,
                       std::span<const Trajectory> hyp,
                       const EvalOptions& options) {
  using Clock = std::chrono::steady_clock;
  MetricsReport r;
  r.name = std::move(name);
  auto t0 = Clock::now();
  const FrameMatching matching = MatchFrames(gt, hyp, options.iou_threshold);
  auto t1 = Clock::now();
  r.clear = ComputeClearMot(matching, gt, hyp);
  auto t2 = Clock::now();
  r.id = ComputeIdf1(matching, gt, hyp);
  auto t3 = Clock::now();
  r.said = ComputeSaidf(matching, gt, hyp);
  auto t4 = Clock::now();
  r.timing = {Seconds(t1 - t0), Seconds(t2 - t1), Seconds(t3 - t2),
              Seconds(t4 - t3)};
  r.num_gt_ids = static_cast<long>(gt.size());
  r.num_hyp_boxes = TotalLength(hyp);
  r.recall = Ratio(r.clear.num_matches, r.clear.num_gt_boxes);
  r.precision = Ratio(r.clear.num_matches, r.num_hyp_boxes);
  return r;
}

MetricsReport PoolReports(std::span<const MetricsReport> reports,
                          std::string name) {
  MetricsReport p;
  p.name = std::move(name);
  for (const MetricsReport& r : reports) {
    p.clear.ids += r.clear.ids;
    p.clear.fp += r.clear.fp;
    p.clear.fn += r.clear.fn;
    p.clear.fm += r.clear.fm;
    p.clear.mt += r.clear.mt;
    p.clear.pt += r.clear.pt;
    p.clear.ml += r.clear.ml;
    p.clear.num_gt_boxes += r.clear.num_gt_boxes;
    p.clear.num_matches += r.clear.num_matches;
    p.clear.iou_sum += r.clear.iou_sum;
    p.id.idtp += r.id.idtp;
    p.id.gt_len += r.id.gt_len;
    p.id.hyp_len += r.id.hyp_len;
    p.said.recall_num += r.said.recall_num;
    p.said.precision_num += r.said.precision_num;
    p.said.gt_len += r.said.gt_len;
    p.said.hyp_len += r.said.hyp_len;
    p.num_gt_ids += r.num_gt_ids;
    p.num_hyp_boxes += r.num_hyp_boxes;
    p.timing.frame_match_s += r.timing.frame_match_s;
    p.timing.clear_s += r.timing.clear_s;
    p.timing.idf1_s += r.timing.idf1_s;
    p.timing.saidf_s += r.timing.saidf_s;
  }
  const auto& c = p.clear;
  p.clear.mota = c.num_gt_boxes > 0
                     ? 1.0 - static_cast<double>(c.fn + c.fp + c.ids) / c.num_gt_boxes
                     : 0.0;
  p.clear.motp = Ratio(c.iou_sum, static_cast<double>(c.num_matches));
  p.id.idr = Ratio(p.id.idtp, p.id.gt_len);
  p.id.idp = Ratio(p.id.idtp, p.id.hyp_len);
  p.id.idf1 = Ratio(2.0 * p.id.idtp, static_cast<double>(p.id.gt_len + p.id.hyp_len));
  p.said.saidr = Ratio(p.said.recall_num, p.said.gt_len);
  p.said.saidp = Ratio(p.said.precision_num, p.said.hyp_len);
  p.said.saidf = HarmonicMean(p.said.saidr, p.said.saidp);
  p.recall = Ratio(c.num_matches, c.num_gt_boxes);
  p.precision = Ratio(c.num_matches, p.num_hyp_boxes);
  return p;
}

namespace {

enum class Family { kClear, kId, kSaid };

struct Column {
  std::string token;
  std::string header;
  Family family;
  bool is_rate;
  double (*get)(const MetricsReport&);
};

const std::vector<Column>& Columns() {
  static const std::vector<Column> columns = {
      {"idf1", "IDF1", Family::kId, true, [](const MetricsReport& r) { return r.id.idf1; }},
      {"idp", "IDP", Family::kId, true, [](const MetricsReport& r) { return r.id.idp; }},
      {"idr", "IDR", Family::kId, true, [](const MetricsReport& r) { return r.id.idr; }},
      {"rcll", "Rcll", Family::kClear, true, [](const MetricsReport& r) { return r.recall; }},
      {"prcn", "Prcn", Family::kClear, true, [](const MetricsReport& r) { return r.precision; }},
      {"gt", "GT", Family::kClear, false, [](const MetricsReport& r) { return double(r.num_gt_ids); }},
      {"mt", "MT", Family::kClear, false, [](const MetricsReport& r) { return double(r.clear.mt); }},
      {"pt", "PT", Family::kClear, false, [](const MetricsReport& r) { return double(r.clear.pt); }},
      {"ml", "ML", Family::kClear, false, [](const MetricsReport& r) { return double(r.clear.ml); }},
      {"fp", "FP", Family::kClear, false, [](const MetricsReport& r) { return double(r.clear.fp); }},
      {"fn", "FN", Family::kClear, false, [](const MetricsReport& r) { return double(r.clear.fn); }},
      {"ids", "IDs", Family::kClear, false, [](const MetricsReport& r) { return double(r.clear.ids); }},
      {"fm", "FM", Family::kClear, false, [](const MetricsReport& r) { return double(r.clear.fm); }},
      {"mota", "MOTA", Family::kClear, true, [](const MetricsReport& r) { return r.clear.mota; }},
      {"motp", "MOTP", Family::kClear, true, [](const MetricsReport& r) { return r.clear.motp; }},
      {"saidf", "SAIDF", Family::kSaid, true, [](const MetricsReport& r) { return r.said.saidf; }},
      {"saidr", "SAIDR", Family::kSaid, true, [](const MetricsReport& r) { return r.said.saidr; }},
      {"saidp", "SAIDP", Family::kSaid, true, [](const MetricsReport& r) { return r.said.saidp; }},
  };
  return columns;
}

std::string FormatCell(double v, bool is_rate) {
  std::ostringstream ss;
  if (is_rate) {
    ss << std::fixed << std::setprecision(4) << v;
  } else {
    ss << static_cast<long long>(std::llround(v));
  }
  return ss.str();
}

std::string FormatSeconds(double s) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(6) << s;
  return ss.str();
}

}  // namespace

const std::vector<std::string>& AllMetricColumns() {
  static const std::vector<std::string> tokens = [] {
    std::vector<std::string> t;
    for (const Column& c : Columns()) t.push_back(c.token);
    return t;
  }();
  return tokens;
}

std::string FormatReport(std::span<const MetricsReport> rows,
                         const ReportFormat& format) {
  std::vector<const Column*> selected;
  if (format.columns.empty()) {
    for (const Column& c : Columns()) selected.push_back(&c);
  } else {
    for (const std::string& token : format.columns) {
      const auto it = std::find_if(Columns().begin(), Columns().end(),
                                   [&](const Column& c) { return c.token == token; });
      if (it == Columns().end()) throw ConfigError("unknown metric '" + token + "'");
      selected.push_back(&*it);
    }
  }
  std::vector<std::string> header = {"Sequence"};
  for (const Column* c : selected) header.push_back(c->header);
  std::vector<Family> time_families;
  if (format.timing) {
    for (Family f : {Family::kSaid, Family::kId, Family::kClear}) {
      if (std::any_of(selected.begin(), selected.end(),
                      [&](const Column* c) { return c->family == f; })) {
        time_families.push_back(f);
      }
    }
    for (Family f : time_families) {
      header.push_back(f == Family::kSaid ? "t_SAIDF"
                       : f == Family::kId ? "t_IDF1"
                                          : "t_MOTA");
    }
  }
  std::vector<std::vector<std::string>> table = {header};
  for (const MetricsReport& r : rows) {
    std::vector<std::string> line = {r.name};
    for (const Column* c : selected) line.push_back(FormatCell(c->get(r), c->is_rate));
    for (Family f : time_families) {
      line.push_back(FormatSeconds(f == Family::kSaid ? r.timing.saidf_s
                                   : f == Family::kId ? r.timing.idf1_s
                                                      : r.timing.clear_s));
    }
    table.push_back(std::move(line));
  }
  std::ostringstream out;
  if (format.csv) {
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (i > 0) out << ',';
        out << line[i];
      }
      out << '\n';
    }
    return out.str();
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i == 0) {
        out << std::left << std::setw(static_cast<int>(width[i])) << line[i];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[i])) << line[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string FormatKeyValues(std::span<const MetricsReport> rows) {
  std::ostringstream out;
  for (const MetricsReport& r : rows) {
    for (const Column& c : Columns()) {
      out << r.name << '.' << c.token << '=' << FormatCell(c.get(r), c.is_rate) << '\n';
    }
  }
  return out.str();
}

MotaLossShares ComputeMotaLossShares(long num_gt_boxes, double fp, double fn,
                                     double ids) {
  if (num_gt_boxes <= 0) throw DataError("empty ground truth");
  const double g = static_cast<double>(num_gt_boxes);
  return {fp / g, fn / g, ids / g};
}

std::vector<SensitivityRow> SensitivityCurve(std::span<const double> m_values,
                                             int l_g) {
  if (l_g < 2) throw ConfigError("l_g must be at least 2");
  const BBox box{0.0, 0.0, 10.0, 10.0};
  Trajectory truth{1, {}};
  for (int f = 1; f <= l_g; ++f) truth.boxes.emplace(f, box);
  const std::vector<Trajectory> gt = {truth};

  // Hypotheses covering [1, l], [l+1, 2l], [2l+1, l_g] with the given ids.
  const auto build = [&](int l, int first, int second) {
    std::vector<TrackBox> boxes;
    for (int f = 1; f <= l_g; ++f) {
      const int id = f <= l ? first : f <= 2 * l ? second : 3;
      boxes.push_back({f, id, box, 1.0});
    }
    return TrajectoriesFromBoxes(boxes);
  };
  const auto scores = [&](const std::vector<Trajectory>& hyp) {
    const FrameMatching matching = MatchFrames(gt, hyp);
    return std::tuple(ComputeClearMot(matching, gt, hyp).mota,
                      ComputeIdf1(matching, gt, hyp).idf1,
                      ComputeSaidf(matching, gt, hyp).saidf);
  };

  std::vector<SensitivityRow> rows;
  for (double m : m_values) {
    if (!(m > 0.0 && m <= 0.5)) {
      throw ConfigError("segment ratio m must be in (0, 0.5]");
    }
    const int l = static_cast<int>(std::llround(m * l_g));
    if (l < 1) throw ConfigError("segment ratio m too small for l_g");
    const auto [mota0, idf10, saidf0] = scores(build(l, 1, 2));
    const auto [mota1, idf11, saidf1] = scores(build(l, 1, 1));
    rows.push_back({m, mota1 - mota0, idf11 - idf10, saidf1 - saidf0});
  }
  return rows;
}

}  // namespace swmot
