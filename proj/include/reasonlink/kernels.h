// Copyright 2026 The ReasonLink Authors.
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

#ifndef REASONLINK_KERNELS_H_
#define REASONLINK_KERNELS_H_

// Data-parallel inner loops. Every parallel kernel has a serial twin with the
// same signature; tests hold them equal and bench/ times them against each
// other.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "reasonlink/aggregation.h"

namespace reasonlink::kernels {

// Up to eight small votes stored inline. Binary votes use 0/1, scores 1..5.
struct PackedVotes {
  std::array<uint8_t, 8> values{};
  uint8_t size = 0;

  void push(uint8_t v) { values[size++] = v; }
};

Decision ClassifyBinary(const PackedVotes& votes, int k);
Decision ClassifyScores(const PackedVotes& votes, int k, ScoreRule rule);

void ClassifyBinarySerial(std::span<const PackedVotes> in, std::span<Decision> out, int k);
void ClassifyBinaryParallel(std::span<const PackedVotes> in, std::span<Decision> out, int k);
void ClassifyScoresSerial(std::span<const PackedVotes> in, std::span<Decision> out, int k,
                          ScoreRule rule);
void ClassifyScoresParallel(std::span<const PackedVotes> in, std::span<Decision> out, int k,
                            ScoreRule rule);

// Square matrix of pair coincidences over value codes 0..size-1.
struct CoincidenceMatrix {
  int size = 0;
  std::vector<double> cells;
  int pairable_units = 0;

  explicit CoincidenceMatrix(int n = 0) : size(n), cells(static_cast<size_t>(n) * n, 0.0) {}
  double& at(int c, int k) { return cells[static_cast<size_t>(c) * size + k]; }
  double at(int c, int k) const { return cells[static_cast<size_t>(c) * size + k]; }
};

// codes is row-major items x raters; -1 marks a missing cell. Each unit with
// m >= 2 values adds 1/(m-1) for every ordered pair of distinct positions.
CoincidenceMatrix AccumulateCoincidencesSerial(std::span<const int> codes, int items, int raters,
                                               int values);
CoincidenceMatrix AccumulateCoincidencesParallel(std::span<const int> codes, int items,
                                                 int raters, int values);

}  // namespace reasonlink::kernels

#endif  // REASONLINK_KERNELS_H_
