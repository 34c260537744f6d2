#ifndef TAXO_MODEL_SELECTION_HPP
#define TAXO_MODEL_SELECTION_HPP

#include <iosfwd>
#include <vector>

#include "taxo/clustering.hpp"

namespace taxo {

// Scores for one clustering solution: within-cluster variation, between-
// cluster variation, and their quality ratio q = bcv / wcv.
struct QualityScore {
  int k = 0;
  double wcv = 0.0;
  double bcv = 0.0;
  double q = 0.0;  // +infinity sentinel when wcv is exactly 0
};

struct ScanReport {
  std::vector<QualityScore> scores;  // one per scanned k, ascending
  int best_k = 0;                    // argmax of q, ties to the smallest k
  ClusteringSolution best_solution;
};

// Within-cluster variation: the clustering objective (same accumulation, so
// the two values are identical for the same solution).
double wcv(const TfIdfMatrix& matrix, const ClusteringSolution& solution);

// Between-cluster variation: the double sum of squared centroid-pair cosine
// distances over all ordered pairs, halved. Requires k >= 2.
double bcv(const ClusteringSolution& solution);

// bcv / wcv. Returns +infinity when wcv = 0 and bcv > 0; throws DomainError
// when both are 0 (nothing to rank).
double quality_ratio(double wcv, double bcv);

// Clusters once per k in [k_min, k_max] (each the best of the configured
// restarts, with a per-k derived seed), scores every solution, and keeps the
// argmax-q solution. `threads` bounds the number of concurrent k-runs; the
// result is identical for every thread count. `progress`, when set, gets one
// line per completed k.
ScanReport scan_k(const TfIdfMatrix& matrix, int k_min, int k_max,
                  const KMeansConfig& config, int threads = 1,
                  std::ostream* progress = nullptr);

// `k,wcv,bcv,q,best` rows, one per scanned k.
void write_scan_csv(const ScanReport& report, std::ostream& out);

}  // namespace taxo

#endif
