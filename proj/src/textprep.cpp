#include "taxo/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "taxo/errors.hpp"
#include "taxo/porter.hpp"

namespace taxo {

void StopwordSet::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read stopword file: " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    // trim and lowercase
    std::string term;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      term += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (!term.empty()) words_.insert(std::move(term));
  }
}

void StopwordSet::add(std::string_view term) {
  std::string lower;
  for (char c : term)
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!lower.empty()) words_.insert(std::move(lower));
}

std::vector<std::string> tokenize(std::string_view body) {
  std::vector<std::string> tokens;
  std::string current;
  bool has_non_digit = false;
  auto flush = [&] {
    if (!current.empty() && has_non_digit) tokens.push_back(current);
    current.clear();
    has_non_digit = false;
  };
  for (char raw : body) {
    const unsigned char c = static_cast<unsigned char>(raw);
    const bool keep =
        c >= 0x80 || std::isalnum(c) || c == '_';
    if (!keep) {
      flush();
      continue;
    }
    if (!std::isdigit(c)) has_non_digit = true;
    current += static_cast<char>(c < 0x80 ? std::tolower(c) : c);
  }
  flush();
  return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordSet& stopwords) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const std::string& t : tokens)
    if (!stopwords.contains(t)) kept.push_back(t);
  return kept;
}

std::vector<std::string> generate_2grams(const std::vector<std::string>& tokens) {
  std::vector<std::string> grams;
  if (tokens.size() < 2) return grams;
  grams.reserve(tokens.size() - 1);
  for (std::size_t i = 0; i + 1 < tokens.size(); i++)
    grams.push_back(tokens[i] + "_" + tokens[i + 1]);
  return grams;
}

TokenizedDoc preprocess_body(const std::string& doc_id, std::string_view body,
                             const StopwordSet& stopwords,
                             const PreprocessConfig& config) {
  std::vector<std::string> tokens = remove_stopwords(tokenize(body), stopwords);
  if (config.stemming_enabled)
    for (std::string& t : tokens) t = porter_stem(t);
  std::erase_if(tokens, [&](const std::string& t) {
    return t.size() < config.min_token_length;
  });

  TokenizedDoc doc;
  doc.doc_id = doc_id;
  doc.terms = tokens;
  for (std::string& gram : generate_2grams(tokens))
    doc.terms.push_back(std::move(gram));
  return doc;
}

std::vector<TokenizedDoc> preprocess_corpus(const Corpus& corpus,
                                            const StopwordSet& stopwords,
                                            const PreprocessConfig& config) {
  std::vector<TokenizedDoc> docs;
  docs.reserve(corpus.posts.size());
  for (const Post& post : corpus.posts)
    docs.push_back(preprocess_body(post.id, post.body, stopwords, config));
  return docs;
}

Vocabulary build_vocabulary(std::vector<TokenizedDoc>& docs,
                            const PreprocessConfig& config) {
  if (docs.empty()) throw DegenerateCorpusError("no documents");
  if (config.min_2gram_df < 1)
    throw ConfigError("min_2gram_df must be >= 1");

  // Document frequency over unique terms per document. std::map keeps the
  // downstream ordering deterministic.
  std::map<std::string, std::uint32_t> df;
  for (const TokenizedDoc& doc : docs) {
    std::unordered_set<std::string> unique(doc.terms.begin(), doc.terms.end());
    for (const std::string& term : unique) df[term]++;
  }

  const auto min_df = static_cast<std::uint32_t>(config.min_2gram_df);
  std::erase_if(df, [&](const auto& entry) {
    return is_2gram(entry.first) && entry.second < min_df;
  });
  for (TokenizedDoc& doc : docs) {
    std::erase_if(doc.terms, [&](const std::string& term) {
      return is_2gram(term) && !df.count(term);
    });
  }

  std::vector<std::pair<std::string, std::uint32_t>> ordered(df.begin(), df.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });

  Vocabulary vocab;
  vocab.terms.reserve(ordered.size());
  vocab.df.reserve(ordered.size());
  for (auto& [term, count] : ordered) {
    vocab.index.emplace(term, static_cast<std::uint32_t>(vocab.terms.size()));
    vocab.terms.push_back(std::move(term));
    vocab.df.push_back(count);
  }
  return vocab;
}

StopwordSet load_stopwords(const PreprocessConfig& config, const Corpus& corpus) {
  if (config.stopword_files.size() > 4)
    throw ConfigError("at most four stopword files are supported");
  StopwordSet set;
  for (const auto& path : config.stopword_files) set.load_file(path);
  if (config.seed_usernames_from_authors)
    for (const Post& post : corpus.posts)
      if (post.author) set.add(*post.author);
  return set;
}

}  // namespace taxo
