#include "taxo/taxonomy.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <unordered_set>

#include "taxo/errors.hpp"

namespace taxo {
namespace {

// Splits a 2-gram into its constituent tokens.
std::vector<std::string> constituents(const std::string& term) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t us = term.find('_', start);
    if (us == std::string::npos) {
      parts.push_back(term.substr(start));
      return parts;
    }
    parts.push_back(term.substr(start, us - start));
    start = us + 1;
  }
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

CentroidTermList centroid_terms(const Centroid& centroid,
                                const Vocabulary& vocabulary) {
  CentroidTermList list;
  list.cluster_id = centroid.cluster_id;
  for (std::size_t i = 0; i < centroid.mean.size(); i++)
    if (centroid.mean[i] > 0.0)
      list.terms.push_back({vocabulary.terms[i], centroid.mean[i]});
  std::sort(list.terms.begin(), list.terms.end(),
            [](const WeightedTerm& a, const WeightedTerm& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.term < b.term;
            });
  return list;
}

std::vector<std::string> extract_label(const CentroidTermList& terms,
                                       double ratio_threshold,
                                       std::size_t max_label_terms) {
  if (terms.terms.empty()) throw DomainError("extract_label: empty centroid");
  if (max_label_terms < 1)
    throw ConfigError("max_label_terms must be >= 1");

  std::vector<std::string> label{terms.terms[0].term};
  std::unordered_set<std::string> included_constituents;
  if (is_2gram(label[0]))
    for (std::string& part : constituents(label[0]))
      included_constituents.insert(std::move(part));

  double previous_weight = terms.terms[0].weight;
  for (std::size_t i = 1;
       i < terms.terms.size() && label.size() < max_label_terms; i++) {
    const auto& [term, weight] = terms.terms[i];
    if (included_constituents.count(term)) continue;  // redundant with a 2-gram
    if (previous_weight <= 0.0 || weight / previous_weight <= ratio_threshold)
      break;  // discontinuity ends the label
    label.push_back(term);
    previous_weight = weight;
    if (is_2gram(term))
      for (std::string& part : constituents(term))
        included_constituents.insert(std::move(part));
  }
  return label;
}

std::vector<WeightedTerm> fill_descriptors(const CentroidTermList& terms,
                                           std::size_t max_descriptors) {
  if (terms.terms.empty()) throw DomainError("fill_descriptors: empty centroid");
  std::vector<WeightedTerm> descriptors = terms.terms;
  if (descriptors.size() > max_descriptors) descriptors.resize(max_descriptors);
  return descriptors;
}

Taxonomy build_taxonomy(const ClusteringSolution& solution,
                        const TfIdfMatrix& matrix, const LabelConfig& config) {
  if (config.max_descriptors < config.max_label_terms)
    throw ConfigError("max_descriptors must be >= max_label_terms");
  Taxonomy taxonomy;
  taxonomy.k = solution.k;
  taxonomy.categories.reserve(solution.centroids.size());

  for (const Centroid& centroid : solution.centroids) {
    const CentroidTermList terms = centroid_terms(centroid, matrix.vocabulary);
    Category category;
    category.label_terms = extract_label(terms, config.ratio_threshold,
                                         config.max_label_terms);
    category.descriptors = fill_descriptors(terms, config.max_descriptors);

    // Every label term must appear among the descriptors; with very small
    // descriptor caps a label term can fall outside the top slice, in which
    // case it displaces the lightest non-label descriptor.
    std::unordered_set<std::string> present;
    for (const WeightedTerm& d : category.descriptors) present.insert(d.term);
    for (const std::string& label_term : category.label_terms) {
      if (present.count(label_term)) continue;
      const auto source =
          std::find_if(terms.terms.begin(), terms.terms.end(),
                       [&](const WeightedTerm& t) { return t.term == label_term; });
      for (auto it = category.descriptors.rbegin();
           it != category.descriptors.rend(); ++it) {
        if (std::find(category.label_terms.begin(), category.label_terms.end(),
                      it->term) == category.label_terms.end()) {
          *it = *source;
          break;
        }
      }
      std::sort(category.descriptors.begin(), category.descriptors.end(),
                [](const WeightedTerm& a, const WeightedTerm& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  return a.term < b.term;
                });
      present.insert(label_term);
    }
    taxonomy.categories.push_back(std::move(category));
  }

  for (std::size_t row = 0; row < solution.assignments.size(); row++) {
    const auto cluster = static_cast<std::size_t>(solution.assignments[row]);
    taxonomy.categories[cluster].member_doc_ids.push_back(
        matrix.rows[row].doc_id);
  }
  return taxonomy;
}

std::string label_string(const Category& category) {
  std::string out;
  for (const std::string& term : category.label_terms) {
    if (!out.empty()) out += " & ";
    out += term;
  }
  return out;
}

nlohmann::json taxonomy_to_json(const Taxonomy& taxonomy) {
  nlohmann::json j;
  j["k"] = taxonomy.k;
  j["config"] = taxonomy.provenance;
  if (!taxonomy.created_at.empty()) j["created_at"] = taxonomy.created_at;
  nlohmann::json categories = nlohmann::json::array();
  for (const Category& category : taxonomy.categories) {
    nlohmann::json c;
    c["label"] = label_string(category);
    c["label_terms"] = category.label_terms;
    nlohmann::json descriptors = nlohmann::json::array();
    for (const WeightedTerm& d : category.descriptors)
      descriptors.push_back({{"term", d.term}, {"weight", d.weight}});
    c["descriptors"] = std::move(descriptors);
    c["member_doc_ids"] = category.member_doc_ids;
    categories.push_back(std::move(c));
  }
  j["categories"] = std::move(categories);
  return j;
}

Taxonomy taxonomy_from_json(const nlohmann::json& j) {
  Taxonomy taxonomy;
  taxonomy.k = j.at("k").get<int>();
  taxonomy.provenance = j.value("config", nlohmann::json::object());
  taxonomy.created_at = j.value("created_at", std::string{});
  for (const nlohmann::json& c : j.at("categories")) {
    Category category;
    category.label_terms = c.at("label_terms").get<std::vector<std::string>>();
    for (const nlohmann::json& d : c.at("descriptors"))
      category.descriptors.push_back(
          {d.at("term").get<std::string>(), d.at("weight").get<double>()});
    category.member_doc_ids =
        c.at("member_doc_ids").get<std::vector<std::string>>();
    taxonomy.categories.push_back(std::move(category));
  }
  return taxonomy;
}

void write_review_csv(const Taxonomy& taxonomy, std::ostream& out) {
  out << "category_id,label,descriptor,weight\n";
  char buf[64];
  for (std::size_t id = 0; id < taxonomy.categories.size(); id++) {
    const Category& category = taxonomy.categories[id];
    const std::string label = csv_quote(label_string(category));
    for (const WeightedTerm& d : category.descriptors) {
      std::snprintf(buf, sizeof buf, "%.17g", d.weight);
      out << id << ',' << label << ',' << csv_quote(d.term) << ',' << buf
          << '\n';
    }
  }
}

}  // namespace taxo
