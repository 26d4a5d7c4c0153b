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

#include "reasonlink/kernels.h"

#include <omp.h>

#include <cassert>

namespace reasonlink::kernels {

Decision ClassifyBinary(const PackedVotes& votes, int k) {
  int yes = 0;
  for (int i = 0; i < votes.size; ++i) yes += votes.values[i] != 0;
  const int no = votes.size - yes;
  if (yes >= k) return Decision::kKeep;
  if (no >= k) return Decision::kDiscard;
  return Decision::kDoubtful;
}

Decision ClassifyScores(const PackedVotes& votes, int k, ScoreRule rule) {
  if (rule == ScoreRule::kBipartition) {
    int high = 0;
    for (int i = 0; i < votes.size; ++i) high += votes.values[i] >= 4;
    const int low = votes.size - high;
    if (high >= k) return Decision::kKeep;
    if (low >= k) return Decision::kDiscard;
    return Decision::kDoubtful;
  }
  int counts[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < votes.size; ++i) ++counts[votes.values[i]];
  int best = 0, mode = 0;
  bool tie = false;
  for (int s = 1; s <= 5; ++s) {
    if (counts[s] > best) {
      best = counts[s];
      mode = s;
      tie = false;
    } else if (counts[s] == best && best > 0) {
      tie = true;
    }
  }
  if (best == 0 || tie) return Decision::kDoubtful;
  return mode >= 4 ? Decision::kKeep : Decision::kDiscard;
}

void ClassifyBinarySerial(std::span<const PackedVotes> in, std::span<Decision> out, int k) {
  assert(in.size() == out.size());
  for (size_t i = 0; i < in.size(); ++i) out[i] = ClassifyBinary(in[i], k);
}

void ClassifyBinaryParallel(std::span<const PackedVotes> in, std::span<Decision> out, int k) {
  assert(in.size() == out.size());
  const long n = static_cast<long>(in.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = ClassifyBinary(in[i], k);
}

void ClassifyScoresSerial(std::span<const PackedVotes> in, std::span<Decision> out, int k,
                          ScoreRule rule) {
  assert(in.size() == out.size());
  for (size_t i = 0; i < in.size(); ++i) out[i] = ClassifyScores(in[i], k, rule);
}

void ClassifyScoresParallel(std::span<const PackedVotes> in, std::span<Decision> out, int k,
                            ScoreRule rule) {
  assert(in.size() == out.size());
  const long n = static_cast<long>(in.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = ClassifyScores(in[i], k, rule);
}

namespace {

// Adds one unit's pairs into dst; returns whether the unit was pairable.
bool AccumulateUnit(const int* row, int raters, CoincidenceMatrix& dst) {
  int m = 0;
  for (int r = 0; r < raters; ++r) m += row[r] >= 0;
  if (m < 2) return false;
  const double w = 1.0 / (m - 1);
  for (int a = 0; a < raters; ++a) {
    if (row[a] < 0) continue;
    for (int b = 0; b < raters; ++b) {
      if (b == a || row[b] < 0) continue;
      dst.at(row[a], row[b]) += w;
    }
  }
  return true;
}

}  // namespace

CoincidenceMatrix AccumulateCoincidencesSerial(std::span<const int> codes, int items, int raters,
                                               int values) {
  assert(codes.size() == static_cast<size_t>(items) * raters);
  CoincidenceMatrix o(values);
  for (int u = 0; u < items; ++u) {
    o.pairable_units += AccumulateUnit(codes.data() + static_cast<size_t>(u) * raters, raters, o);
  }
  return o;
}

CoincidenceMatrix AccumulateCoincidencesParallel(std::span<const int> codes, int items,
                                                 int raters, int values) {
  assert(codes.size() == static_cast<size_t>(items) * raters);
  // Per-thread partials reduced in thread order so results are reproducible
  // for a fixed thread count.
  std::vector<CoincidenceMatrix> partials;
#pragma omp parallel
  {
#pragma omp single
    partials.assign(static_cast<size_t>(omp_get_num_threads()), CoincidenceMatrix(values));
    CoincidenceMatrix& local = partials[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (int u = 0; u < items; ++u) {
      local.pairable_units +=
          AccumulateUnit(codes.data() + static_cast<size_t>(u) * raters, raters, local);
    }
  }
  CoincidenceMatrix o(values);
  for (const CoincidenceMatrix& p : partials) {
    for (size_t i = 0; i < o.cells.size(); ++i) o.cells[i] += p.cells[i];
    o.pairable_units += p.pairable_units;
  }
  return o;
}

}  // namespace reasonlink::kernels
