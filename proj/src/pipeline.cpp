#include "taxo/pipeline.hpp"

#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "taxo/errors.hpp"
#include "taxo/model_selection.hpp"
#include "taxo/taxonomy.hpp"
#include "taxo/vsm.hpp"

namespace taxo {
namespace {

std::string trim_copy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) b++;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) e--;
  return s.substr(b, e - b);
}

std::vector<std::filesystem::path> split_paths(const std::string& value) {
  std::vector<std::filesystem::path> paths;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_copy(item);
    if (!item.empty()) paths.emplace_back(item);
  }
  return paths;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" +
                    value + "'");
}

long parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      value + "'");
  }
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" +
                      value + "'");
  }
}

nlohmann::json config_snapshot(const PipelineConfig& c) {
  nlohmann::json j;
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& p : c.inputs) inputs.push_back(p.string());
  j["inputs"] = std::move(inputs);
  j["format"] = c.format;
  j["columns"] = {{"id", c.csv_schema.id},
                  {"source", c.csv_schema.source},
                  {"thread_id", c.csv_schema.thread_id},
                  {"author", c.csv_schema.author},
                  {"timestamp", c.csv_schema.timestamp},
                  {"body", c.csv_schema.body}};
  nlohmann::json stopwords = nlohmann::json::array();
  for (const auto& p : c.stopword_files) stopwords.push_back(p.string());
  j["stopwords"] = std::move(stopwords);
  j["seed_usernames_from_authors"] = c.seed_usernames_from_authors;
  j["min_2gram_df"] = c.min_2gram_df;
  j["stemming_enabled"] = c.stemming_enabled;
  j["min_token_length"] = c.min_token_length;
  j["max_features"] = c.max_features;
  j["k_min"] = c.k_min;
  j["k_max"] = c.k_max;
  j["fixed_k"] = c.fixed_k;
  j["ratio_threshold"] = c.ratio_threshold;
  j["max_label_terms"] = c.max_label_terms;
  j["max_descriptors"] = c.max_descriptors;
  j["max_iterations"] = c.max_iterations;
  j["epsilon"] = c.epsilon;
  j["restarts"] = c.restarts;
  j["seed"] = c.seed;
  // threads and out_dir are execution details, not part of the result
  // identity, so they stay out of the snapshot embedded in artifacts.
  return j;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write output file: " + path.string());
  out << content;
  if (!out) throw InputError("failed writing output file: " + path.string());
}

}  // namespace

PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());

  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected `key = value`");
    const std::string key = trim_copy(line.substr(0, eq));
    const std::string value = trim_copy(line.substr(eq + 1));

    if (key == "inputs") config.inputs = split_paths(value);
    else if (key == "format") config.format = value;
    else if (key == "stopwords") config.stopword_files = split_paths(value);
    else if (key == "seed_usernames_from_authors")
      config.seed_usernames_from_authors = parse_bool(value, key);
    else if (key == "min_2gram_df")
      config.min_2gram_df = static_cast<int>(parse_int(value, key));
    else if (key == "stemming_enabled")
      config.stemming_enabled = parse_bool(value, key);
    else if (key == "min_token_length")
      config.min_token_length =
          static_cast<std::size_t>(parse_int(value, key));
    else if (key == "max_features")
      config.max_features = static_cast<std::size_t>(parse_int(value, key));
    else if (key == "k_min")
      config.k_min = static_cast<int>(parse_int(value, key));
    else if (key == "k_max")
      config.k_max = static_cast<int>(parse_int(value, key));
    else if (key == "k")
      config.fixed_k = static_cast<int>(parse_int(value, key));
    else if (key == "unsafe_k") config.unsafe_k = parse_bool(value, key);
    else if (key == "ratio_threshold")
      config.ratio_threshold = parse_double(value, key);
    else if (key == "max_label_terms")
      config.max_label_terms = static_cast<std::size_t>(parse_int(value, key));
    else if (key == "max_descriptors")
      config.max_descriptors = static_cast<std::size_t>(parse_int(value, key));
    else if (key == "max_iterations")
      config.max_iterations = static_cast<int>(parse_int(value, key));
    else if (key == "epsilon") config.epsilon = parse_double(value, key);
    else if (key == "restarts")
      config.restarts = static_cast<int>(parse_int(value, key));
    else if (key == "seed")
      config.seed = static_cast<std::uint64_t>(parse_int(value, key));
    else if (key == "out_dir") config.out_dir = value;
    else if (key == "threads")
      config.threads = static_cast<int>(parse_int(value, key));
    else if (key == "dump_vsm") config.dump_vsm = parse_bool(value, key);
    else if (key == "id_column") config.csv_schema.id = value;
    else if (key == "source_column") config.csv_schema.source = value;
    else if (key == "thread_id_column") config.csv_schema.thread_id = value;
    else if (key == "author_column") config.csv_schema.author = value;
    else if (key == "timestamp_column") config.csv_schema.timestamp = value;
    else if (key == "body_column") config.csv_schema.body = value;
    else
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": unknown config key '" + key + "'");
  }
  return config;
}

std::vector<std::string> validate_config(const PipelineConfig& config) {
  std::vector<std::string> violations;
  auto bad = [&](const std::string& msg) { violations.push_back(msg); };

  if (config.inputs.empty()) bad("inputs: at least one input file is required");
  if (config.format != "csv" && config.format != "xml")
    bad("format: must be 'csv' or 'xml'");
  if (config.stopword_files.size() > 4)
    bad("stopwords: at most four stopword files are supported");
  if (config.min_2gram_df < 1) bad("min_2gram_df: must be >= 1");
  if (config.max_features < 1) bad("max_features: must be >= 1");
  if (config.fixed_k != 0) {
    if (config.fixed_k < 2) bad("k: must be >= 2");
    if (config.fixed_k > 30 && !config.unsafe_k)
      bad("k: must be <= 30 (override with unsafe_k)");
  } else {
    if (config.k_min < 2) bad("k_min: must be >= 2");
    if (config.k_max < config.k_min) bad("k_max: must be >= k_min");
    if (config.k_max > 30 && !config.unsafe_k)
      bad("k_max: must be <= 30 (override with unsafe_k)");
  }
  if (config.ratio_threshold < 0.0 || config.ratio_threshold >= 1.0)
    bad("ratio_threshold: must be in [0, 1)");
  if (config.max_label_terms < 1) bad("max_label_terms: must be >= 1");
  if (config.max_descriptors < config.max_label_terms)
    bad("max_descriptors: must be >= max_label_terms");
  if (config.max_iterations < 1) bad("max_iterations: must be >= 1");
  if (config.epsilon < 0.0) bad("epsilon: must be >= 0");
  if (config.restarts < 1) bad("restarts: must be >= 1");
  if (config.threads < 1) bad("threads: must be >= 1");
  return violations;
}

int run_pipeline(const PipelineConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  std::string stage = "config";
  try {
    const std::vector<std::string> violations = validate_config(config);
    if (!violations.empty()) {
      for (const std::string& v : violations)
        std::cerr << "config error: " << v << '\n';
      return kExitConfigError;
    }
    std::filesystem::create_directories(config.out_dir);

    stage = "ingest";
    std::vector<Corpus> parts;
    for (const auto& input : config.inputs) {
      std::cerr << "[ingest] " << input.string() << '\n';
      parts.push_back(config.format == "xml" ? parse_xml(input)
                                             : parse_csv(input, config.csv_schema));
    }
    const Corpus corpus = merge_corpora(std::move(parts));
    std::cerr << "[ingest] " << corpus.posts.size() << " posts, "
              << corpus.skips.skipped << " skipped\n";
    if (corpus.posts.empty()) throw DegenerateCorpusError("no documents");

    stage = "preprocess";
    PreprocessConfig prep;
    prep.stopword_files = config.stopword_files;
    prep.min_2gram_df = config.min_2gram_df;
    prep.stemming_enabled = config.stemming_enabled;
    prep.min_token_length = config.min_token_length;
    prep.seed_usernames_from_authors = config.seed_usernames_from_authors;
    const StopwordSet stopwords = load_stopwords(prep, corpus);
    std::vector<TokenizedDoc> docs = preprocess_corpus(corpus, stopwords, prep);
    const Vocabulary vocabulary = build_vocabulary(docs, prep);
    std::cerr << "[preprocess] vocabulary of " << vocabulary.size()
              << " terms\n";

    stage = "matrix";
    TfIdfMatrix matrix = build_matrix(docs, vocabulary);
    matrix = cap_features(matrix, config.max_features);
    std::cerr << "[matrix] " << matrix.rows.size() << " rows x "
              << matrix.vocabulary.size() << " features\n";
    if (config.dump_vsm) {
      std::ostringstream dump;
      dump_matrix_csv(matrix, dump);
      write_text_file(config.out_dir / "vsm.csv", dump.str());
    }

    stage = "scan";
    KMeansConfig kmeans;
    kmeans.max_iterations = config.max_iterations;
    kmeans.epsilon = config.epsilon;
    kmeans.restarts = config.restarts;
    kmeans.seed = config.seed;

    ScanReport report;
    if (config.fixed_k > 0) {
      std::cerr << "[scan] fixed k = " << config.fixed_k << '\n';
      report.best_solution = run_kmeans(matrix, config.fixed_k, kmeans);
      QualityScore score;
      score.k = config.fixed_k;
      score.wcv = wcv(matrix, report.best_solution);
      score.bcv = config.fixed_k >= 2 ? bcv(report.best_solution) : 0.0;
      score.q = quality_ratio(score.wcv, score.bcv);
      report.scores.push_back(score);
      report.best_k = config.fixed_k;
    } else {
      std::cerr << "[scan] k in [" << config.k_min << ", " << config.k_max
                << "], " << config.restarts << " restarts each\n";
      report = scan_k(matrix, config.k_min, config.k_max, kmeans,
                      config.threads, &std::cerr);
    }
    std::cerr << "[scan] best k = " << report.best_k << '\n';
    {
      std::ostringstream scan_csv;
      write_scan_csv(report, scan_csv);
      write_text_file(config.out_dir / "kscan.csv", scan_csv.str());
    }

    stage = "taxonomy";
    LabelConfig labels;
    labels.ratio_threshold = config.ratio_threshold;
    labels.max_label_terms = config.max_label_terms;
    labels.max_descriptors = config.max_descriptors;
    Taxonomy taxonomy = build_taxonomy(report.best_solution, matrix, labels);
    taxonomy.provenance = config_snapshot(config);
    taxonomy.provenance["best_k"] = report.best_k;
    taxonomy.provenance["scan_report"] = "kscan.csv";
    write_text_file(config.out_dir / "taxonomy.json",
                    taxonomy_to_json(taxonomy).dump(2) + "\n");
    {
      std::ostringstream review;
      write_review_csv(taxonomy, review);
      write_text_file(config.out_dir / "review.csv", review.str());
    }

    stage = "manifest";
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    nlohmann::json manifest;
    manifest["config"] = config_snapshot(config);
    manifest["config"]["threads"] = config.threads;
    manifest["config"]["out_dir"] = config.out_dir.string();
    manifest["corpus"] = {
        {"documents", corpus.posts.size()},
        {"records", corpus.skips.total_records},
        {"skipped", corpus.skips.skipped},
        {"skip_reasons", corpus.skips.reasons},
    };
    nlohmann::json sources = nlohmann::json::object();
    for (const auto& [source, count] : corpus.source_counts)
      sources[source] = count;
    manifest["corpus"]["source_counts"] = std::move(sources);
    manifest["vocabulary"] = {{"terms", matrix.vocabulary.size()}};
    manifest["scan"] = {{"best_k", report.best_k},
                        {"unassignable", report.best_solution.unassignable}};
    manifest["timing_ms"] = elapsed.count();
    {
      // wall-clock stamp lives here, not in the deterministic artifacts
      const std::time_t now = std::time(nullptr);
      char stamp[32];
      std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ",
                    std::gmtime(&now));
      manifest["created_at"] = stamp;
    }
    manifest["artifacts"] = {"taxonomy.json", "review.csv", "kscan.csv"};
    write_text_file(config.out_dir / "manifest.json", manifest.dump(2) + "\n");

    std::cerr << "[done] " << (config.out_dir / "taxonomy.json").string()
              << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "error in stage " << stage << ": " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DegenerateCorpusError& e) {
    std::cerr << "error in stage " << stage << ": " << e.what() << '\n';
    return kExitDegenerateCorpus;
  } catch (const InputError& e) {
    std::cerr << "error in stage " << stage << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error in stage " << stage << ": " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace taxo
