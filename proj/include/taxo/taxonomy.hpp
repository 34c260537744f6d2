#ifndef TAXO_TAXONOMY_HPP
#define TAXO_TAXONOMY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "taxo/clustering.hpp"

namespace taxo {

struct WeightedTerm {
  std::string term;
  double weight = 0.0;

  bool operator==(const WeightedTerm&) const = default;
};

// A cluster centroid's nonzero terms, sorted by weight descending with
// lexicographic tie-break.
struct CentroidTermList {
  int cluster_id = 0;
  std::vector<WeightedTerm> terms;
};

struct LabelConfig {
  double ratio_threshold = 0.5;
  std::size_t max_label_terms = 3;
  std::size_t max_descriptors = 29;
};

struct Category {
  std::vector<std::string> label_terms;
  std::vector<WeightedTerm> descriptors;  // weight non-increasing
  std::vector<std::string> member_doc_ids;

  bool operator==(const Category&) const = default;
};

struct Taxonomy {
  int k = 0;
  std::vector<Category> categories;  // one per cluster, in cluster-id order
  nlohmann::json provenance;         // config snapshot and scan summary
  std::string created_at;            // optional; empty keeps output reproducible

  bool operator==(const Taxonomy& other) const {
    return k == other.k && categories == other.categories &&
           provenance == other.provenance && created_at == other.created_at;
  }
};

CentroidTermList centroid_terms(const Centroid& centroid,
                                const Vocabulary& vocabulary);

// Label rule: the heaviest term is always included; each next candidate is
// included while the ratio of its weight to the previously included term's
// weight exceeds ratio_threshold, up to max_label_terms. A candidate that is
// a constituent token of an included 2-gram is skipped without breaking the
// chain.
std::vector<std::string> extract_label(const CentroidTermList& terms,
                                       double ratio_threshold = 0.5,
                                       std::size_t max_label_terms = 3);

// The top max_descriptors terms by weight, label terms included.
std::vector<WeightedTerm> fill_descriptors(const CentroidTermList& terms,
                                           std::size_t max_descriptors = 29);

Taxonomy build_taxonomy(const ClusteringSolution& solution,
                        const TfIdfMatrix& matrix,
                        const LabelConfig& config = {});

// Human-readable label: terms joined with " & ".
std::string label_string(const Category& category);

nlohmann::json taxonomy_to_json(const Taxonomy& taxonomy);
Taxonomy taxonomy_from_json(const nlohmann::json& j);

// Review table for offline curation: `category_id,label,descriptor,weight`.
void write_review_csv(const Taxonomy& taxonomy, std::ostream& out);

}  // namespace taxo

#endif
