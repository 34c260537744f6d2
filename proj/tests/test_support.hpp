#ifndef TAXO_TEST_SUPPORT_HPP
#define TAXO_TEST_SUPPORT_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

namespace taxo::test {

// Absolute-tolerance comparison.
inline bool near(double a, double b, double tol) {
  return std::fabs(a - b) <= tol;
}

// Scratch directory for fixture files, cleaned up per test.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("taxomine_test_" + tag + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return dir_; }

  std::filesystem::path write(const std::string& name,
                              const std::string& content) const {
    const std::filesystem::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::filesystem::path dir_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace taxo::test

#endif
