#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "zeta_osc/zeros_ingest.hpp"

namespace zeta_osc::test {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(ZETA_OSC_TEST_DATA_DIR) / name;
}

// First 100 zeros from the mpmath-generated reference table.
inline const ZeroTable& reference_zeros() {
    static const ZeroTable table = parse_zeros_file(data_path("zeros_100.txt"));
    return table;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("zeta_osc_test_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace zeta_osc::test
