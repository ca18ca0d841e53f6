// Copyright 2026 The netcm Authors
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

#include "netcm/matrix.hpp"

namespace netcm {

/// Real symmetric PSD matrix partitioned into one block per node.
/// Symmetry (1e-10) and PSD-ness (1e-8, scaled by 1 + spectral norm) are
/// checked on construction.
class BlockCovarianceMatrix {
 public:
  static constexpr double kSymmetryTol = 1e-10;
  static constexpr double kPsdTol = 1e-8;

  BlockCovarianceMatrix(RealMatrix matrix, BlockLayout layout, std::vector<std::string> node_labels);

  const RealMatrix& matrix() const { return matrix_; }
  const BlockLayout& layout() const { return layout_; }
  const std::vector<std::string>& node_labels() const { return labels_; }
  std::size_t dim() const { return matrix_.rows(); }

  /// Block index of a node; std::out_of_range if absent.
  std::size_t node_index(const std::string& node) const;
  RealMatrix block(std::size_t x, std::size_t y) const;
  RealMatrix block(const std::string& x, const std::string& y) const;

 private:
  RealMatrix matrix_;
  BlockLayout layout_;
  std::vector<std::string> labels_;
};

/// Sub-block (x, y) of a matrix under a block layout.
RealMatrix block_of(const RealMatrix& m, const BlockLayout& layout, std::size_t x, std::size_t y);

}  // namespace netcm
