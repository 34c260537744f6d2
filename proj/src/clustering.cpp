#include "taxo/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "taxo/errors.hpp"
#include "taxo/rng.hpp"

namespace taxo {
namespace {

std::vector<std::size_t> nonempty_rows(const TfIdfMatrix& matrix) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < matrix.rows.size(); i++)
    if (!matrix.rows[i].empty()) rows.push_back(i);
  return rows;
}

double vector_norm(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

Centroid centroid_from_row(const TfIdfMatrix& matrix, std::size_t row,
                           int cluster_id) {
  Centroid c;
  c.cluster_id = cluster_id;
  c.mean.assign(matrix.vocabulary.size(), 0.0);
  for (const auto& [idx, w] : matrix.rows[row].weights) c.mean[idx] = w;
  c.member_count = 1;
  c.norm = vector_norm(c.mean);
  return c;
}

double distance_to(const TfIdfMatrix& matrix, std::size_t row,
                   const Centroid& c) {
  return cosine_distance(matrix.rows[row], c.mean, c.norm);
}

// One full Lloyd run from a fixed seed.
ClusteringSolution single_run(const TfIdfMatrix& matrix, int k,
                              const KMeansConfig& config, std::uint64_t seed,
                              int restart_index) {
  const std::size_t n = matrix.rows.size();
  ClusteringSolution sol;
  sol.k = k;
  sol.seed = seed;
  sol.assignments.assign(n, 0);

  std::vector<std::size_t> seeds = seed_centroids(matrix, k, seed);
  sol.centroids.clear();
  for (int c = 0; c < k; c++)
    sol.centroids.push_back(centroid_from_row(matrix, seeds[c], c));

  std::vector<int> previous(n, -1);
  double previous_objective = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= config.max_iterations; iter++) {
    // Assignment: nearest centroid, ties to the lowest cluster id.
    for (std::size_t i = 0; i < n; i++) {
      int best = 0;
      double best_d = distance_to(matrix, i, sol.centroids[0]);
      for (int c = 1; c < k; c++) {
        const double d = distance_to(matrix, i, sol.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      sol.assignments[i] = best;
    }

    // Empty-cluster repair: reseed with the point farthest from its
    // centroid, never stealing a cluster's only member.
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; i++)
      counts[static_cast<std::size_t>(sol.assignments[i])]++;
    for (int c = 0; c < k; c++) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      std::size_t farthest = std::numeric_limits<std::size_t>::max();
      double farthest_d = -1.0;
      for (std::size_t i = 0; i < n; i++) {
        const int owner = sol.assignments[i];
        if (counts[static_cast<std::size_t>(owner)] <= 1) continue;
        if (matrix.rows[i].empty()) continue;
        const double d = distance_to(matrix, i, sol.centroids[owner]);
        if (d > farthest_d) {
          farthest_d = d;
          farthest = i;
        }
      }
      if (farthest == std::numeric_limits<std::size_t>::max())
        throw DegenerateCorpusError("k too large for corpus");
      counts[static_cast<std::size_t>(sol.assignments[farthest])]--;
      sol.assignments[farthest] = c;
      counts[static_cast<std::size_t>(c)] = 1;
      sol.centroids[static_cast<std::size_t>(c)] =
          centroid_from_row(matrix, farthest, c);
    }

    // Update: arithmetic mean of member rows.
    for (Centroid& c : sol.centroids) {
      std::fill(c.mean.begin(), c.mean.end(), 0.0);
      c.member_count = 0;
    }
    for (std::size_t i = 0; i < n; i++) {
      Centroid& c =
          sol.centroids[static_cast<std::size_t>(sol.assignments[i])];
      c.member_count++;
      for (const auto& [idx, w] : matrix.rows[i].weights) c.mean[idx] += w;
    }
    for (Centroid& c : sol.centroids) {
      const double inv = 1.0 / static_cast<double>(c.member_count);
      for (double& x : c.mean) x *= inv;
      c.norm = vector_norm(c.mean);
    }

    sol.objective = objective(matrix, sol);
    sol.iterations = iter;
    sol.iteration_objectives.push_back(sol.objective);
    if (config.trace) {
      char line[128];
      std::snprintf(line, sizeof line, "k=%d restart=%d iter=%d objective=%.17g",
                    k, restart_index, iter, sol.objective);
      *config.trace << line << '\n';
    }

    const bool stable = (sol.assignments == previous);
    const bool converged =
        std::abs(previous_objective - sol.objective) < config.epsilon;
    if (stable || converged) break;
    previous = sol.assignments;
    previous_objective = sol.objective;
  }

  sol.unassignable = 0;
  for (std::size_t i = 0; i < n; i++) {
    bool all_max = true;
    for (const Centroid& c : sol.centroids)
      if (distance_to(matrix, i, c) < 1.0) {
        all_max = false;
        break;
      }
    if (all_max) sol.unassignable++;
  }
  return sol;
}

}  // namespace

std::vector<std::size_t> seed_centroids(const TfIdfMatrix& matrix, int k,
                                        std::uint64_t seed) {
  if (k < 1) throw DomainError("seed_centroids: k must be >= 1");
  const std::vector<std::size_t> candidates = nonempty_rows(matrix);
  if (candidates.empty())
    throw DegenerateCorpusError("degenerate corpus: all rows empty");
  if (static_cast<std::size_t>(k) > candidates.size())
    throw DegenerateCorpusError("k too large for corpus");

  SplitMix64 rng(seed);
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(matrix.rows.size(), false);

  const std::size_t first = candidates[rng.next_below(candidates.size())];
  chosen.push_back(first);
  taken[first] = true;

  // Squared distance to the nearest already-chosen row, updated after
  // every pick.
  std::vector<double> nearest_sq(matrix.rows.size(),
                                 std::numeric_limits<double>::infinity());
  auto account = [&](std::size_t pick) {
    for (std::size_t row : candidates) {
      if (taken[row]) continue;
      const double d = cosine_distance(matrix.rows[row], matrix.rows[pick]);
      nearest_sq[row] = std::min(nearest_sq[row], d * d);
    }
  };
  account(first);

  while (chosen.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t row : candidates)
      if (!taken[row]) total += nearest_sq[row];

    std::size_t pick = std::numeric_limits<std::size_t>::max();
    if (total > 0.0) {
      const double target = rng.next_double() * total;
      double cumulative = 0.0;
      for (std::size_t row : candidates) {
        if (taken[row]) continue;
        cumulative += nearest_sq[row];
        if (cumulative > target) {
          pick = row;
          break;
        }
      }
    }
    if (pick == std::numeric_limits<std::size_t>::max()) {
      // All remaining candidates coincide with a chosen row; fall back to
      // the first untaken one so the picks stay distinct rows.
      for (std::size_t row : candidates) {
        if (!taken[row]) {
          pick = row;
          break;
        }
      }
    }
    chosen.push_back(pick);
    taken[pick] = true;
    account(pick);
  }
  return chosen;
}

ClusteringSolution run_kmeans(const TfIdfMatrix& matrix, int k,
                              const KMeansConfig& config) {
  if (k < 1) throw DomainError("run_kmeans: k must be >= 1");
  if (config.max_iterations < 1)
    throw ConfigError("max_iterations must be >= 1");
  if (config.restarts < 1) throw ConfigError("restarts must be >= 1");
  if (nonempty_rows(matrix).empty())
    throw DegenerateCorpusError("degenerate corpus: all rows empty");

  ClusteringSolution best;
  bool have = false;
  for (int r = 0; r < config.restarts; r++) {
    const std::uint64_t seed =
        derive_seed(config.seed, static_cast<std::uint64_t>(k),
                    static_cast<std::uint64_t>(r));
    ClusteringSolution sol = single_run(matrix, k, config, seed, r);
    if (!have || sol.objective < best.objective) {
      best = std::move(sol);
      have = true;
    }
  }
  return best;
}

double objective(const TfIdfMatrix& matrix, const ClusteringSolution& solution) {
  double sum = 0.0;
  for (std::size_t i = 0; i < matrix.rows.size(); i++) {
    const Centroid& c =
        solution.centroids[static_cast<std::size_t>(solution.assignments[i])];
    const double d = cosine_distance(matrix.rows[i], c.mean, c.norm);
    sum += d * d;
  }
  return sum;
}

}  // namespace taxo
