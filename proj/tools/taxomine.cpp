// Command-line front end: one `taxomine` invocation runs the whole batch
// pipeline (ingest -> preprocess -> matrix -> k scan -> taxonomy).

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "taxo/errors.hpp"
#include "taxo/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "taxomine: extract a one-level topical taxonomy from a corpus of short "
      "social-media posts"};

  std::string config_path;
  app.add_option("--config", config_path,
                 "Config file (`key = value` lines); flags override it");

  std::vector<std::string> inputs;
  app.add_option("--input", inputs, "Input corpus file (repeatable)");
  std::string format;
  app.add_option("--format", format, "Input format: csv or xml")
      ->check(CLI::IsMember({"csv", "xml"}));
  std::vector<std::string> stopwords;
  app.add_option("--stopwords", stopwords,
                 "Stopword file, one term per line (repeatable, up to 4)");

  int k_min = -1, k_max = -1, fixed_k = -1;
  app.add_option("--k-min", k_min, "Smallest k to scan (default 2)");
  app.add_option("--k-max", k_max, "Largest k to scan (default 30)");
  app.add_option("--k", fixed_k, "Skip the scan and cluster at this fixed k");
  bool unsafe_k = false;
  app.add_flag("--unsafe-k", unsafe_k, "Allow k bounds outside [2, 30]");

  long long seed = -1;
  app.add_option("--seed", seed, "Random seed for clustering (default 1)");
  long long max_features = -1;
  app.add_option("--max-features", max_features,
                 "Feature cap for the matrix (default 2000)");
  int restarts = -1;
  app.add_option("--restarts", restarts,
                 "Independent seeded runs per k (default 5)");

  std::string out_dir;
  app.add_option("--out", out_dir, "Output directory (default .)");
  int threads = -1;
  app.add_option("--threads", threads,
                 "Maximum concurrent k-runs; output is identical for every "
                 "value (default 1)");
  bool dump_vsm = false;
  app.add_flag("--dump-vsm", dump_vsm,
               "Also write the sparse matrix as vsm.csv");
  bool validate_only = false;
  app.add_flag("--validate", validate_only,
               "Validate the configuration and exit");

  CLI11_PARSE(app, argc, argv);

  taxo::PipelineConfig config;
  if (!config_path.empty()) {
    try {
      config = taxo::load_config_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return taxo::kExitConfigError;
    }
  }

  for (const std::string& p : inputs) config.inputs.emplace_back(p);
  if (!format.empty()) config.format = format;
  for (const std::string& p : stopwords) config.stopword_files.emplace_back(p);
  if (k_min >= 0) config.k_min = k_min;
  if (k_max >= 0) config.k_max = k_max;
  if (fixed_k >= 0) config.fixed_k = fixed_k;
  if (unsafe_k) config.unsafe_k = true;
  if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
  if (max_features >= 0)
    config.max_features = static_cast<std::size_t>(max_features);
  if (restarts >= 0) config.restarts = restarts;
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (threads >= 0) config.threads = threads;
  if (dump_vsm) config.dump_vsm = true;

  if (validate_only) {
    const std::vector<std::string> violations = taxo::validate_config(config);
    if (violations.empty()) {
      std::cout << "ok\n";
      return taxo::kExitOk;
    }
    for (const std::string& v : violations)
      std::cerr << "config error: " << v << '\n';
    return taxo::kExitConfigError;
  }

  return taxo::run_pipeline(config);
}
