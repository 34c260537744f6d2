#ifndef TAXO_ERRORS_HPP
#define TAXO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace taxo {

// Process exit codes used by the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitInputError = 3,
  kExitDegenerateCorpus = 4,
};

// Bad configuration (unreadable stopword file, invalid bounds, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed input data (CSV/XML parse failures, duplicate ids).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Corpus cannot support the requested computation (no documents, all rows
// empty, k larger than the number of usable rows).
class DegenerateCorpusError : public std::runtime_error {
 public:
  explicit DegenerateCorpusError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Violated numeric precondition (df = 0, dimension mismatch, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace taxo

#endif
