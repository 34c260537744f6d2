#ifndef TAXO_CORPUS_HPP
#define TAXO_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace taxo {

// One social-media message in canonical form; the unit of clustering.
struct Post {
  std::string id;
  std::string source;
  std::optional<std::string> thread_id;
  std::optional<std::string> author;
  std::optional<std::string> timestamp;
  std::string body;  // non-empty after whitespace trimming
};

// Records skipped per input, with one human-readable reason each.
struct SkipReport {
  std::size_t total_records = 0;
  std::size_t skipped = 0;
  std::vector<std::string> reasons;
};

struct Corpus {
  std::vector<Post> posts;  // stable order; defines the matrix row order
  std::map<std::string, std::size_t> source_counts;
  SkipReport skips;
};

// Column-name mapping for CSV inputs. Only the body column is required to
// exist; a missing id column synthesizes zero-based row ordinals.
struct CsvSchema {
  std::string id = "id";
  std::string source = "source";
  std::string thread_id = "thread_id";
  std::string author = "author";
  std::string timestamp = "timestamp";
  std::string body = "body";
};

// Parses an RFC-4180 CSV file (header row required, UTF-8). Rows with an
// empty body are skipped and counted. Duplicate ids reject the whole corpus.
Corpus parse_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

// Parses the canonical corpus XML: <corpus> of <post> elements with <id>,
// <source>, optional <thread_id>/<author>/<timestamp>, and a required <body>.
Corpus parse_xml(const std::filesystem::path& path);

// Merges corpora in argument order, revalidating id uniqueness.
Corpus merge_corpora(std::vector<Corpus> parts);

}  // namespace taxo

#endif
