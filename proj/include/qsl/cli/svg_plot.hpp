// Copyright 2026 The QSL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace qsl::cli {

struct Point {
  double x;
  double y;
};

enum class SeriesStyle { Asterisks, DashedLine, ShadedBelow };

struct Series {
  std::string label;
  SeriesStyle style;
  std::vector<Point> points;
};

/// Single-panel plot on a fixed 800x600 canvas. Output is deterministic.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void add(Series series);
  std::string render() const;

  static constexpr int kWidth = 800;
  static constexpr int kHeight = 600;

 private:
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Series> series_;
};

}  // namespace qsl::cli
