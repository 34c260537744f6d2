#include "taxo/model_selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "taxo/errors.hpp"

namespace taxo {

double wcv(const TfIdfMatrix& matrix, const ClusteringSolution& solution) {
  return objective(matrix, solution);
}

double bcv(const ClusteringSolution& solution) {
  if (solution.k < 2) throw DomainError("bcv: requires k >= 2");
  double sum = 0.0;
  const std::size_t k = solution.centroids.size();
  for (std::size_t i = 0; i < k; i++) {
    for (std::size_t j = 0; j < k; j++) {
      if (i == j) continue;  // self-pairs contribute 0
      const Centroid& a = solution.centroids[i];
      const Centroid& b = solution.centroids[j];
      double sim = 0.0;
      if (a.norm != 0.0 && b.norm != 0.0) {
        double dot = 0.0;
        for (std::size_t t = 0; t < a.mean.size(); t++)
          dot += a.mean[t] * b.mean[t];
        sim = std::clamp(dot / (a.norm * b.norm), 0.0, 1.0);
      }
      const double d = 1.0 - sim;
      sum += d * d;
    }
  }
  return sum / 2.0;
}

double quality_ratio(double wcv, double bcv) {
  if (wcv < 0.0 || bcv < 0.0)
    throw DomainError("quality_ratio: variations must be non-negative");
  if (wcv == 0.0) {
    if (bcv == 0.0)
      throw DomainError("quality_ratio: degenerate solution (wcv = bcv = 0)");
    return std::numeric_limits<double>::infinity();
  }
  return bcv / wcv;
}

ScanReport scan_k(const TfIdfMatrix& matrix, int k_min, int k_max,
                  const KMeansConfig& config, int threads,
                  std::ostream* progress) {
  if (k_min < 2) throw ConfigError("k_min must be >= 2");
  if (k_max < k_min) throw ConfigError("k_max must be >= k_min");
  std::size_t usable = 0;
  for (const DocVector& row : matrix.rows)
    if (!row.empty()) usable++;
  if (static_cast<std::size_t>(k_max) > usable)
    throw DegenerateCorpusError(
        "corpus too small for requested k range: " + std::to_string(usable) +
        " usable documents, k_max = " + std::to_string(k_max));

  const int count = k_max - k_min + 1;
  std::vector<ClusteringSolution> solutions(static_cast<std::size_t>(count));

  // Every k gets its own seed stream inside run_kmeans, so execution order
  // cannot change any result; threads only change the wall clock.
  std::atomic<int> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    while (true) {
      const int slot = next.fetch_add(1);
      if (slot >= count) return;
      solutions[static_cast<std::size_t>(slot)] =
          run_kmeans(matrix, k_min + slot, config);
      if (progress) {
        const ClusteringSolution& sol = solutions[static_cast<std::size_t>(slot)];
        char line[96];
        std::snprintf(line, sizeof line, "[scan] k=%d objective=%.6g (%d iterations)",
                      k_min + slot, sol.objective, sol.iterations);
        const std::lock_guard<std::mutex> lock(progress_mutex);
        *progress << line << '\n';
      }
    }
  };
  const int pool = std::max(1, std::min(threads, count));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; t++) workers.emplace_back(worker);
    for (std::thread& t : workers) t.join();
  }

  ScanReport report;
  report.scores.reserve(static_cast<std::size_t>(count));
  int best_index = -1;
  for (int i = 0; i < count; i++) {
    const ClusteringSolution& sol = solutions[static_cast<std::size_t>(i)];
    QualityScore score;
    score.k = k_min + i;
    score.wcv = wcv(matrix, sol);
    score.bcv = bcv(sol);
    score.q = quality_ratio(score.wcv, score.bcv);
    report.scores.push_back(score);
    if (best_index < 0 || score.q > report.scores[static_cast<std::size_t>(
                                        best_index)].q)
      best_index = i;
  }
  report.best_k = k_min + best_index;
  report.best_solution = std::move(solutions[static_cast<std::size_t>(best_index)]);
  return report;
}

void write_scan_csv(const ScanReport& report, std::ostream& out) {
  out << "k,wcv,bcv,q,best\n";
  char buf[96];
  for (const QualityScore& s : report.scores) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%d", s.k, s.wcv,
                  s.bcv, s.q, s.k == report.best_k ? 1 : 0);
    out << buf << '\n';
  }
}

}  // namespace taxo
