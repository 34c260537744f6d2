#ifndef TAXO_TEXTPREP_HPP
#define TAXO_TEXTPREP_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "taxo/corpus.hpp"

namespace taxo {

struct PreprocessConfig {
  std::vector<std::filesystem::path> stopword_files;  // up to 4 tiers
  int min_2gram_df = 3;
  bool stemming_enabled = true;
  std::size_t min_token_length = 2;  // applied after stemming
  bool seed_usernames_from_authors = true;
};

// A post body reduced to its term stream: surviving stemmed unigrams followed
// by the 2-grams formed over adjacent survivors.
struct TokenizedDoc {
  std::string doc_id;
  std::vector<std::string> terms;
};

// Corpus-wide term list with document frequencies. Term order is descending
// df with lexicographic tie-break, so identical corpora produce identical
// vocabularies.
struct Vocabulary {
  std::vector<std::string> terms;
  std::vector<std::uint32_t> df;  // parallel to terms
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t size() const { return terms.size(); }
  bool contains(const std::string& term) const { return index.count(term) > 0; }
  std::uint32_t df_of(const std::string& term) const { return df[index.at(term)]; }
};

// Merged stopword set. Matching is exact, case-insensitive, against
// unstemmed tokens.
class StopwordSet {
 public:
  // Loads one term per line; '#' starts a comment; blank lines ignored.
  void load_file(const std::filesystem::path& path);
  void add(std::string_view term);
  bool contains(const std::string& token) const { return words_.count(token) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Lowercases and splits on every character outside letters, digits and
// underscore; drops empty and all-digit tokens. Bytes >= 0x80 are kept so
// multi-byte UTF-8 sequences survive intact.
std::vector<std::string> tokenize(std::string_view body);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordSet& stopwords);

// Adjacent pairs of the (already filtered and stemmed) token stream, joined
// with '_'.
std::vector<std::string> generate_2grams(const std::vector<std::string>& tokens);

// Full per-document pipeline: tokenize, stopword removal, stemming, length
// filter, then unigrams followed by 2-grams.
TokenizedDoc preprocess_body(const std::string& doc_id, std::string_view body,
                             const StopwordSet& stopwords,
                             const PreprocessConfig& config);

std::vector<TokenizedDoc> preprocess_corpus(const Corpus& corpus,
                                            const StopwordSet& stopwords,
                                            const PreprocessConfig& config);

// Builds the vocabulary and drops 2-grams below the df threshold from both
// the vocabulary and every document's term list.
Vocabulary build_vocabulary(std::vector<TokenizedDoc>& docs,
                            const PreprocessConfig& config);

// Loads the configured stopword tiers, optionally seeding usernames from
// post authors.
StopwordSet load_stopwords(const PreprocessConfig& config, const Corpus& corpus);

inline bool is_2gram(const std::string& term) {
  return term.find('_') != std::string::npos;
}

}  // namespace taxo

#endif
