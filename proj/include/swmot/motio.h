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

#ifndef SWMOT_MOTIO_H_
#define SWMOT_MOTIO_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swmot/geometry.h"

namespace swmot {

using Feature = std::vector<double>;

struct Detection {
  int frame = 1;
  BBox box;
  double score = 1.0;
  // Unit-norm appearance vector when available.
  std::optional<Feature> feature;
};

// One box of a tracking result or ground-truth file.
struct TrackBox {
  int frame = 1;
  int id = 1;
  BBox box;
  double conf = 1.0;

  friend bool operator==(const TrackBox&, const TrackBox&) = default;
};

enum class MotFileKind { kDetection, kGroundTruth, kResult };

// Ground-truth row filtering. Rows whose consideration flag is 0 are always
// dropped; when the class column is present it must be in the whitelist
// (empty whitelist keeps every class).
struct GtFilter {
  std::vector<int> class_whitelist = {1};
};

struct DetectionParseResult {
  // Sorted by frame; order within a frame follows the file.
  std::vector<Detection> records;
  // Data-line index in the source file for each record.
  std::vector<std::size_t> source_rows;
  // Number of data lines, including skipped ones.
  std::size_t total_rows = 0;
  int skipped = 0;
};

struct TrackParseResult {
  // Sorted by (frame, id).
  std::vector<TrackBox> records;
  int skipped = 0;
};

// Parses MOTChallenge CSV rows 'frame,id,x,y,w,h,conf,...'. Coordinates pass
// through verbatim. Rows with non-positive width or height are skipped and
// counted. Throws DataError naming the line on malformed input.
DetectionParseResult ParseDetections(std::string_view text);
TrackParseResult ParseTracks(std::string_view text, MotFileKind kind,
                             const GtFilter& filter = {});

// Writes 'frame,id,x,y,w,h,conf,-1,-1,-1' lines sorted by (frame, id).
// Throws DataError on a duplicate (frame, id).
std::string WriteMotFile(std::span<const TrackBox> tracks);

// Writes ground truth rows 'frame,id,x,y,w,h,1,1,1'.
std::string WriteGtFile(std::span<const TrackBox> tracks);

// Writes detections as 'frame,-1,x,y,w,h,score,-1,-1,-1' in the given order.
std::string WriteDetFile(std::span<const Detection> dets);

// Shortest round-trip decimal in fixed notation ("0.8", "5", "-12.25").
std::string FormatNumber(double value);

// Appearance vectors keyed by (frame, index of the detection within frame).
using FeatureMap = std::map<std::pair<int, int>, Feature>;

// Feature sidecar: CSV of reals, row i belongs to the i-th data line of the
// detection file. Vectors are L2-normalized on load. Throws DataError on a
// row-count mismatch or a zero row.
FeatureMap ParseFeatureCsv(std::string_view text,
                           const DetectionParseResult& dets);

// Returns nullopt when the file does not exist.
std::optional<FeatureMap> LoadFeatureFile(const std::filesystem::path& path,
                                          const DetectionParseResult& dets);

std::string WriteFeatureCsv(std::span<const Feature> rows);

struct Sequence {
  std::string name;
  int num_frames = 0;
  // detections[t - 1] holds the detections of frame t.
  std::vector<std::vector<Detection>> detections;
  std::optional<std::vector<TrackBox>> gt;

  std::span<const Detection> FrameDetections(int frame) const;
  bool has_features() const;
};

// Groups parsed detections per frame and attaches features when given.
// num_frames defaults to the largest frame index seen.
Sequence MakeSequence(std::string name, const DetectionParseResult& dets,
                      const FeatureMap* features = nullptr,
                      std::optional<int> num_frames = std::nullopt);

// Whole-file helpers; both throw IoError naming the path.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

Feature Normalized(Feature v);

}  // namespace swmot

#endif  // SWMOT_MOTIO_H_
