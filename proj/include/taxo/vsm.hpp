#ifndef TAXO_VSM_HPP
#define TAXO_VSM_HPP

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "taxo/textprep.hpp"

namespace taxo {

// Sparse document row over the vocabulary. Entries are (term index, weight),
// sorted by index, weights strictly positive. After build_matrix every
// nonempty row has unit L2 norm.
struct DocVector {
  std::string doc_id;
  std::uint32_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> weights;

  bool empty() const { return weights.empty(); }
};

// The document-term matrix: rows in corpus order, one per document, with
// empty documents kept as empty rows so row indices match the corpus.
struct TfIdfMatrix {
  Vocabulary vocabulary;
  std::vector<DocVector> rows;
  std::size_t n_docs = 0;
};

// Relative term frequency times natural-log inverse document frequency:
// (tf / doc_len) * ln(n_docs / df). Zero when tf = 0 or df = n_docs.
double tfidf_weight(std::size_t tf, std::size_t doc_len, std::size_t df,
                    std::size_t n_docs);

// Builds the matrix over `vocab`, then L2-normalizes each row.
TfIdfMatrix build_matrix(const std::vector<TokenizedDoc>& docs,
                         const Vocabulary& vocab);

// Keeps the max_features terms with the highest summed weight across the
// matrix (ties broken lexicographically) and re-normalizes the rows.
TfIdfMatrix cap_features(const TfIdfMatrix& matrix,
                         std::size_t max_features = 2000);

double dot(const DocVector& a, const DocVector& b);
double norm(const DocVector& a);

// dot(a,b) / (|a||b|), clamped to [0,1]; defined as 0 when either norm is 0.
// Throws DomainError on dimension mismatch.
double cosine_similarity(const DocVector& a, const DocVector& b);
double cosine_distance(const DocVector& a, const DocVector& b);

// Sparse-against-dense variants used by the clustering loop. `dense_norm`
// is the precomputed L2 norm of `dense`.
double dot(const DocVector& a, const std::vector<double>& dense);
double cosine_similarity(const DocVector& a, const std::vector<double>& dense,
                         double dense_norm);
double cosine_distance(const DocVector& a, const std::vector<double>& dense,
                       double dense_norm);

// Sparse triplet dump, one `doc_id,term,weight` line per stored cell.
void dump_matrix_csv(const TfIdfMatrix& matrix, std::ostream& out);

}  // namespace taxo

#endif
