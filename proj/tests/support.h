#pragma once

#include "hdbprep/aggregate.h"
#include "hdbprep/identity.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace hdbprep::support {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string &tag) {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() /
                ("hdbprep-" + tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        auto ec = std::error_code{};
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;
    const std::filesystem::path &path() const { return path_; }
    std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out{path, std::ios::binary};
    out << content;
}

inline std::string slurp(const std::filesystem::path &path) {
    std::ifstream in{path, std::ios::binary};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::vector<std::string> lines_of(const std::filesystem::path &path) {
    auto out = std::vector<std::string>{};
    std::ifstream in{path, std::ios::binary};
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

inline Member member(std::size_t line, std::string age, std::string gender, bool chief,
                     std::string area = "1", std::optional<double> income = std::nullopt) {
    return Member{line, std::move(area), std::move(age), std::move(gender), chief, income};
}

inline HouseholdKey key_of(const std::string &household, const std::string &cluster = "1") {
    return make_household_key(Strata{"1", "1", cluster, household}, PrefixScheme::rmch());
}

inline double relative_error(double actual, double expected) {
    const auto scale = expected == 0.0 ? 1.0 : (expected < 0 ? -expected : expected);
    const auto diff = actual - expected;
    return (diff < 0 ? -diff : diff) / scale;
}

} // namespace hdbprep::support
