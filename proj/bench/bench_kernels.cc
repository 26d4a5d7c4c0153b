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

// Times the serial and OpenMP variants of the batch kernels on synthetic
// inputs and checks that both produce identical results.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "reasonlink/kernels.h"

namespace k = reasonlink::kernels;

namespace {

double BestOf(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void Report(const char* name, size_t n, double serial, double parallel, bool equal) {
  std::printf("%-22s n=%-9zu serial %8.2f ms  parallel %8.2f ms  speedup %5.2fx  %s\n", name, n,
              serial * 1e3, parallel * 1e3, serial / parallel, equal ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2'000'000;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  std::mt19937 rng(7);
  std::printf("threads: %d\n", omp_get_max_threads());
  bool all_equal = true;

  std::vector<k::PackedVotes> binary(n), scores(n);
  std::uniform_int_distribution<int> bit(0, 1), score(1, 5), len(3, 8);
  for (size_t i = 0; i < n; ++i) {
    const int m = len(rng);
    for (int j = 0; j < m; ++j) {
      binary[i].push(static_cast<uint8_t>(bit(rng)));
      scores[i].push(static_cast<uint8_t>(score(rng)));
    }
  }
  std::vector<reasonlink::Decision> a(n), b(n);

  double s = BestOf(reps, [&] { k::ClassifyBinarySerial(binary, a, 3); });
  double p = BestOf(reps, [&] { k::ClassifyBinaryParallel(binary, b, 3); });
  Report("classify_binary", n, s, p, a == b);
  all_equal &= a == b;

  s = BestOf(reps, [&] { k::ClassifyScoresSerial(scores, a, 3, reasonlink::ScoreRule::kBipartition); });
  p = BestOf(reps, [&] { k::ClassifyScoresParallel(scores, b, 3, reasonlink::ScoreRule::kBipartition); });
  Report("classify_scores", n, s, p, a == b);
  all_equal &= a == b;

  const int raters = 5, values = 5;
  const int items = static_cast<int>(n / raters);
  std::vector<int> codes(static_cast<size_t>(items) * raters);
  std::uniform_int_distribution<int> code(-1, values - 1);
  for (int& c : codes) c = code(rng);
  k::CoincidenceMatrix cs, cp;
  s = BestOf(reps, [&] { cs = k::AccumulateCoincidencesSerial(codes, items, raters, values); });
  p = BestOf(reps, [&] { cp = k::AccumulateCoincidencesParallel(codes, items, raters, values); });
  bool close = cs.pairable_units == cp.pairable_units;
  for (size_t i = 0; i < cs.cells.size(); ++i) close &= std::abs(cs.cells[i] - cp.cells[i]) <= 1e-6 * (1 + cs.cells[i]);
  Report("coincidence_matrix", codes.size(), s, p, close);
  all_equal &= close;

  return all_equal ? 0 : 1;
}
