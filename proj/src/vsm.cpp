#include "taxo/vsm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "taxo/errors.hpp"

namespace taxo {

double tfidf_weight(std::size_t tf, std::size_t doc_len, std::size_t df,
                    std::size_t n_docs) {
  if (df == 0) throw DomainError("tfidf_weight: df must be positive");
  if (doc_len == 0) throw DomainError("tfidf_weight: doc_len must be positive");
  if (df > n_docs) throw DomainError("tfidf_weight: df exceeds corpus size");
  if (tf > doc_len) throw DomainError("tfidf_weight: tf exceeds doc_len");
  if (tf == 0 || df == n_docs) return 0.0;
  const double rel_tf = static_cast<double>(tf) / static_cast<double>(doc_len);
  const double idf =
      std::log(static_cast<double>(n_docs) / static_cast<double>(df));
  return rel_tf * idf;
}

namespace {

void normalize_row(DocVector& row) {
  double sum = 0.0;
  for (const auto& [idx, w] : row.weights) sum += w * w;
  if (sum <= 0.0) {
    row.weights.clear();
    return;
  }
  const double inv = 1.0 / std::sqrt(sum);
  for (auto& [idx, w] : row.weights) w *= inv;
}

}  // namespace

TfIdfMatrix build_matrix(const std::vector<TokenizedDoc>& docs,
                         const Vocabulary& vocab) {
  TfIdfMatrix matrix;
  matrix.vocabulary = vocab;
  matrix.n_docs = docs.size();
  matrix.rows.reserve(docs.size());

  const auto dim = static_cast<std::uint32_t>(vocab.size());
  for (const TokenizedDoc& doc : docs) {
    DocVector row;
    row.doc_id = doc.doc_id;
    row.dim = dim;
    std::unordered_map<std::uint32_t, std::size_t> tf;
    for (const std::string& term : doc.terms) {
      auto it = vocab.index.find(term);
      if (it != vocab.index.end()) tf[it->second]++;
    }
    row.weights.reserve(tf.size());
    for (const auto& [idx, count] : tf) {
      const double w =
          tfidf_weight(count, doc.terms.size(), vocab.df[idx], docs.size());
      if (w > 0.0) row.weights.emplace_back(idx, w);
    }
    std::sort(row.weights.begin(), row.weights.end());
    normalize_row(row);
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

TfIdfMatrix cap_features(const TfIdfMatrix& matrix, std::size_t max_features) {
  if (max_features < 1) throw ConfigError("max_features must be >= 1");
  if (matrix.vocabulary.size() <= max_features) return matrix;

  // Rank terms by total weight across the corpus.
  std::vector<double> summed(matrix.vocabulary.size(), 0.0);
  for (const DocVector& row : matrix.rows)
    for (const auto& [idx, w] : row.weights) summed[idx] += w;

  std::vector<std::uint32_t> order(matrix.vocabulary.size());
  for (std::uint32_t i = 0; i < order.size(); i++) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (summed[a] != summed[b]) return summed[a] > summed[b];
    return matrix.vocabulary.terms[a] < matrix.vocabulary.terms[b];
  });
  order.resize(max_features);

  // Remap keeping the vocabulary's (df desc, lexicographic) ordering.
  std::sort(order.begin(), order.end());
  std::vector<std::uint32_t> remap(matrix.vocabulary.size(),
                                   std::numeric_limits<std::uint32_t>::max());
  TfIdfMatrix capped;
  capped.n_docs = matrix.n_docs;
  for (std::uint32_t new_idx = 0; new_idx < order.size(); new_idx++) {
    const std::uint32_t old_idx = order[new_idx];
    remap[old_idx] = new_idx;
    const std::string& term = matrix.vocabulary.terms[old_idx];
    capped.vocabulary.terms.push_back(term);
    capped.vocabulary.df.push_back(matrix.vocabulary.df[old_idx]);
    capped.vocabulary.index.emplace(term, new_idx);
  }

  const auto dim = static_cast<std::uint32_t>(max_features);
  capped.rows.reserve(matrix.rows.size());
  for (const DocVector& row : matrix.rows) {
    DocVector projected;
    projected.doc_id = row.doc_id;
    projected.dim = dim;
    for (const auto& [idx, w] : row.weights)
      if (remap[idx] != std::numeric_limits<std::uint32_t>::max())
        projected.weights.emplace_back(remap[idx], w);
    normalize_row(projected);
    capped.rows.push_back(std::move(projected));
  }
  return capped;
}

double dot(const DocVector& a, const DocVector& b) {
  double sum = 0.0;
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() && ib != b.weights.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double norm(const DocVector& a) {
  double sum = 0.0;
  for (const auto& [idx, w] : a.weights) sum += w * w;
  return std::sqrt(sum);
}

double cosine_similarity(const DocVector& a, const DocVector& b) {
  if (a.dim != b.dim)
    throw DomainError("cosine_similarity: dimension mismatch");
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), 0.0, 1.0);
}

double cosine_distance(const DocVector& a, const DocVector& b) {
  return 1.0 - cosine_similarity(a, b);
}

double dot(const DocVector& a, const std::vector<double>& dense) {
  double sum = 0.0;
  for (const auto& [idx, w] : a.weights) sum += w * dense[idx];
  return sum;
}

double cosine_similarity(const DocVector& a, const std::vector<double>& dense,
                         double dense_norm) {
  if (a.dim != dense.size())
    throw DomainError("cosine_similarity: dimension mismatch");
  const double na = norm(a);
  if (na == 0.0 || dense_norm == 0.0) return 0.0;
  return std::clamp(dot(a, dense) / (na * dense_norm), 0.0, 1.0);
}

double cosine_distance(const DocVector& a, const std::vector<double>& dense,
                       double dense_norm) {
  return 1.0 - cosine_similarity(a, dense, dense_norm);
}

void dump_matrix_csv(const TfIdfMatrix& matrix, std::ostream& out) {
  out << "doc_id,term,weight\n";
  char buf[64];
  for (const DocVector& row : matrix.rows) {
    for (const auto& [idx, w] : row.weights) {
      std::snprintf(buf, sizeof buf, "%.17g", w);
      out << row.doc_id << ',' << matrix.vocabulary.terms[idx] << ',' << buf
          << '\n';
    }
  }
}

}  // namespace taxo
