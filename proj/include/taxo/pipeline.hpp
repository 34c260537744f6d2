#ifndef TAXO_PIPELINE_HPP
#define TAXO_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "taxo/clustering.hpp"
#include "taxo/corpus.hpp"
#include "taxo/textprep.hpp"

namespace taxo {

// Everything one batch run needs. Defaults match the pipeline's standard
// operating constraints (feature cap 2000, k window [2,30], 2-gram df >= 3,
// label ratio 0.5, at most 29 descriptors).
struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  std::string format = "csv";  // "csv" or "xml"
  CsvSchema csv_schema;

  std::vector<std::filesystem::path> stopword_files;
  bool seed_usernames_from_authors = true;
  int min_2gram_df = 3;
  bool stemming_enabled = true;
  std::size_t min_token_length = 2;

  std::size_t max_features = 2000;

  int k_min = 2;
  int k_max = 30;
  int fixed_k = 0;  // > 0 bypasses the scan and clusters at this k
  bool unsafe_k = false;  // allows k bounds outside [2, 30]

  double ratio_threshold = 0.5;
  std::size_t max_label_terms = 3;
  std::size_t max_descriptors = 29;

  int max_iterations = 100;
  double epsilon = 1e-6;
  int restarts = 5;
  std::uint64_t seed = 1;

  std::filesystem::path out_dir = ".";
  int threads = 1;
  bool dump_vsm = false;
};

// Reads `key = value` lines ('#' comments allowed). List values
// (inputs, stopwords) are comma-separated. Unknown keys are rejected.
PipelineConfig load_config_file(const std::filesystem::path& path);

// Returns one message per violated constraint; empty means the config is
// runnable. Pure value checks; nothing is executed.
std::vector<std::string> validate_config(const PipelineConfig& config);

// Runs ingest -> preprocess -> matrix -> k scan -> taxonomy, writing
// taxonomy.json, review.csv, kscan.csv and manifest.json into out_dir.
// Returns a process exit code; failures report the failing stage on stderr.
int run_pipeline(const PipelineConfig& config);

}  // namespace taxo

#endif
