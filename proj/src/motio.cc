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

#include "swmot/motio.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "swmot/errors.h"

namespace swmot {
namespace {

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      break;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::string LineError(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

double ParseReal(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last ||
      !std::isfinite(value)) {
    throw DataError(
        LineError(line_no, "invalid number '" + std::string(field) + "'"));
  }
  return value;
}

int ParseInt(std::string_view field, std::size_t line_no) {
  const double value = ParseReal(field, line_no);
  if (value != std::floor(value) || std::abs(value) > 2e9) {
    throw DataError(
        LineError(line_no, "expected integer, got '" + std::string(field) + "'"));
  }
  return static_cast<int>(value);
}

// Calls fn(line_no, fields) for every non-blank line.
template <typename Fn>
void ForEachDataLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++line_no;
    const std::string_view line = Trim(text.substr(pos, eol - pos));
    if (!line.empty()) fn(line_no, SplitFields(line));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
}

void AppendNumber(std::string& out, double v) { out += FormatNumber(v); }

}  // namespace

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";
  char buf[512];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  if (ec != std::errc()) throw DataError("number not representable");
  return std::string(buf, ptr);
}

DetectionParseResult ParseDetections(std::string_view text) {
  DetectionParseResult result;
  std::vector<std::pair<Detection, std::size_t>> rows;
  ForEachDataLine(text, [&](std::size_t line_no,
                            const std::vector<std::string_view>& f) {
    const std::size_t row = result.total_rows++;
    if (f.size() < 7) {
      throw DataError(LineError(line_no, "expected at least 7 fields"));
    }
    Detection d;
    d.frame = ParseInt(f[0], line_no);
    if (d.frame < 1) throw DataError(LineError(line_no, "frame must be >= 1"));
    d.box = BBox{ParseReal(f[2], line_no), ParseReal(f[3], line_no),
                 ParseReal(f[4], line_no), ParseReal(f[5], line_no)};
    d.score = ParseReal(f[6], line_no);
    if (!d.box.valid()) {
      ++result.skipped;
      return;
    }
    rows.emplace_back(std::move(d), row);
  });
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.first.frame < b.first.frame;
  });
  result.records.reserve(rows.size());
  result.source_rows.reserve(rows.size());
  for (auto& [d, row] : rows) {
    result.records.push_back(std::move(d));
    result.source_rows.push_back(row);
  }
  return result;
}

TrackParseResult ParseTracks(std::string_view text, MotFileKind kind,
                             const GtFilter& filter) {
  TrackParseResult result;
  ForEachDataLine(text, [&](std::size_t line_no,
                            const std::vector<std::string_view>& f) {
    const std::size_t min_fields = kind == MotFileKind::kResult ? 7 : 6;
    if (f.size() < min_fields) {
      throw DataError(LineError(line_no, "expected at least " +
                                             std::to_string(min_fields) +
                                             " fields"));
    }
    TrackBox t;
    t.frame = ParseInt(f[0], line_no);
    t.id = ParseInt(f[1], line_no);
    if (t.frame < 1) throw DataError(LineError(line_no, "frame must be >= 1"));
    t.box = BBox{ParseReal(f[2], line_no), ParseReal(f[3], line_no),
                 ParseReal(f[4], line_no), ParseReal(f[5], line_no)};
    if (f.size() > 6) t.conf = ParseReal(f[6], line_no);
    if (kind == MotFileKind::kGroundTruth) {
      if (f.size() > 6 && t.conf == 0.0) return;
      if (f.size() > 7 && !filter.class_whitelist.empty()) {
        const int cls = ParseInt(f[7], line_no);
        if (std::find(filter.class_whitelist.begin(),
                      filter.class_whitelist.end(),
                      cls) == filter.class_whitelist.end()) {
          return;
        }
      }
      t.conf = 1.0;
    }
    if (!t.box.valid()) {
      ++result.skipped;
      return;
    }
    result.records.push_back(t);
  });
  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const TrackBox& a, const TrackBox& b) {
                     return std::pair(a.frame, a.id) < std::pair(b.frame, b.id);
                   });
  for (std::size_t i = 1; i < result.records.size(); ++i) {
    const TrackBox& a = result.records[i - 1];
    const TrackBox& b = result.records[i];
    if (a.frame == b.frame && a.id == b.id) {
      throw DataError("duplicate (frame, id) = (" + std::to_string(a.frame) +
                      ", " + std::to_string(a.id) + ")");
    }
  }
  return result;
}

namespace {

std::vector<TrackBox> SortedUnique(std::span<const TrackBox> tracks) {
  std::vector<TrackBox> sorted(tracks.begin(), tracks.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TrackBox& a, const TrackBox& b) {
                     return std::pair(a.frame, a.id) < std::pair(b.frame, b.id);
                   });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].frame == sorted[i].frame &&
        sorted[i - 1].id == sorted[i].id) {
      throw DataError("duplicate (frame, id) = (" +
                      std::to_string(sorted[i].frame) + ", " +
                      std::to_string(sorted[i].id) + ")");
    }
  }
  return sorted;
}

void AppendBoxFields(std::string& out, int frame, int id, const BBox& b) {
  out += std::to_string(frame);
  out += ',';
  out += std::to_string(id);
  for (double v : {b.x, b.y, b.w, b.h}) {
    out += ',';
    AppendNumber(out, v);
  }
}

}  // namespace

std::string WriteMotFile(std::span<const TrackBox> tracks) {
  std::string out;
  for (const TrackBox& t : SortedUnique(tracks)) {
    AppendBoxFields(out, t.frame, t.id, t.box);
    out += ',';
    AppendNumber(out, t.conf);
    out += ",-1,-1,-1\n";
  }
  return out;
}

std::string WriteGtFile(std::span<const TrackBox> tracks) {
  std::string out;
  for (const TrackBox& t : SortedUnique(tracks)) {
    AppendBoxFields(out, t.frame, t.id, t.box);
    out += ",1,1,1\n";
  }
  return out;
}

std::string WriteDetFile(std::span<const Detection> dets) {
  std::string out;
  for (const Detection& d : dets) {
    AppendBoxFields(out, d.frame, -1, d.box);
    out += ',';
    AppendNumber(out, d.score);
    out += ",-1,-1,-1\n";
  }
  return out;
}

Feature Normalized(Feature v) {
  double norm_sq = 0.0;
  for (double x : v) norm_sq += x * x;
  const double norm = std::sqrt(norm_sq);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DataError("non-normalizable feature");
  }
  for (double& x : v) x /= norm;
  return v;
}

FeatureMap ParseFeatureCsv(std::string_view text,
                           const DetectionParseResult& dets) {
  std::vector<Feature> rows;
  ForEachDataLine(text, [&](std::size_t line_no,
                            const std::vector<std::string_view>& f) {
    Feature v;
    v.reserve(f.size());
    for (std::string_view field : f) v.push_back(ParseReal(field, line_no));
    if (!rows.empty() && v.size() != rows.front().size()) {
      throw DataError(LineError(line_no, "feature dimension mismatch"));
    }
    try {
      rows.push_back(Normalized(std::move(v)));
    } catch (const DataError& e) {
      throw DataError(LineError(line_no, e.what()));
    }
  });
  if (rows.size() != dets.total_rows) {
    throw DataError("feature sidecar has " + std::to_string(rows.size()) +
                    " rows but detection file has " +
                    std::to_string(dets.total_rows));
  }
  FeatureMap map;
  int frame = 0;
  int index = 0;
  for (std::size_t i = 0; i < dets.records.size(); ++i) {
    const int f = dets.records[i].frame;
    if (f != frame) {
      frame = f;
      index = 0;
    }
    map.emplace(std::pair(f, index++), rows[dets.source_rows[i]]);
  }
  return map;
}

std::optional<FeatureMap> LoadFeatureFile(const std::filesystem::path& path,
                                          const DetectionParseResult& dets) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  return ParseFeatureCsv(ReadTextFile(path), dets);
}

std::string WriteFeatureCsv(std::span<const Feature> rows) {
  std::string out;
  for (const Feature& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      AppendNumber(out, row[i]);
    }
    out += '\n';
  }
  return out;
}

std::span<const Detection> Sequence::FrameDetections(int frame) const {
  if (frame < 1 || frame > static_cast<int>(detections.size())) return {};
  return detections[frame - 1];
}

bool Sequence::has_features() const {
  for (const auto& frame : detections) {
    for (const Detection& d : frame) {
      if (!d.feature) return false;
    }
  }
  return true;
}

Sequence MakeSequence(std::string name, const DetectionParseResult& dets,
                      const FeatureMap* features,
                      std::optional<int> num_frames) {
  Sequence seq;
  seq.name = std::move(name);
  int max_frame = 0;
  for (const Detection& d : dets.records) max_frame = std::max(max_frame, d.frame);
  seq.num_frames = num_frames.value_or(max_frame);
  if (max_frame > seq.num_frames) {
    throw DataError("detection frame " + std::to_string(max_frame) +
                    " exceeds sequence length " +
                    std::to_string(seq.num_frames));
  }
  seq.detections.resize(seq.num_frames);
  for (const Detection& d : dets.records) {
    auto& frame = seq.detections[d.frame - 1];
    Detection copy = d;
    if (features != nullptr) {
      const auto it =
          features->find(std::pair(d.frame, static_cast<int>(frame.size())));
      if (it == features->end()) {
        throw DataError("missing feature for detection in frame " +
                        std::to_string(d.frame));
      }
      copy.feature = it->second;
    }
    frame.push_back(std::move(copy));
  }
  return seq;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace swmot
