#ifndef TAXO_CLUSTERING_HPP
#define TAXO_CLUSTERING_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "taxo/vsm.hpp"

namespace taxo {

struct KMeansConfig {
  int max_iterations = 100;
  double epsilon = 1e-6;  // convergence threshold on objective change
  int restarts = 5;
  std::uint64_t seed = 1;
  std::ostream* trace = nullptr;  // optional per-iteration objective log
};

struct Centroid {
  int cluster_id = 0;
  std::vector<double> mean;  // arithmetic average of member rows
  std::size_t member_count = 0;
  double norm = 0.0;
};

struct ClusteringSolution {
  int k = 0;
  std::vector<int> assignments;  // row -> cluster id
  std::vector<Centroid> centroids;
  double objective = 0.0;  // total within-cluster squared cosine distance
  int iterations = 0;
  std::uint64_t seed = 0;  // derived seed of the winning restart
  std::vector<double> iteration_objectives;  // winning restart's trajectory
  std::size_t unassignable = 0;  // rows at distance 1 from every centroid
};

// Picks k distinct row indices by distance-weighted sampling: the first
// uniformly among nonempty rows, each next with probability proportional to
// its squared cosine distance from the nearest pick so far.
std::vector<std::size_t> seed_centroids(const TfIdfMatrix& matrix, int k,
                                        std::uint64_t seed);

// Lloyd iterations under cosine distance with arithmetic-mean updates.
// Assignment ties go to the lowest cluster id; empty clusters are reseeded
// with the point farthest from its centroid. Returns the best of
// config.restarts independent seeded runs (lowest objective).
ClusteringSolution run_kmeans(const TfIdfMatrix& matrix, int k,
                              const KMeansConfig& config);

// Sum over clusters of squared cosine distances from members to their
// centroid, accumulated in row order.
double objective(const TfIdfMatrix& matrix, const ClusteringSolution& solution);

}  // namespace taxo

#endif
