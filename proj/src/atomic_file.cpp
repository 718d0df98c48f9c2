#include "zeta_osc/atomic_file.hpp"

#include <atomic>
#include <fstream>
#include <string>

#include <unistd.h>

#include "zeta_osc/error.hpp"

namespace zeta_osc {

namespace {

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
    static std::atomic<unsigned> counter{0};
    auto name = path.filename().string() + ".tmp-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter.fetch_add(1));
    return path.parent_path() / name;
}

}  // namespace

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& write, bool binary) {
    const auto tmp = temp_sibling(path);
    try {
        {
            std::ofstream out(tmp, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
            if (!out) throw IoError("cannot open for writing: " + path.string());
            write(out);
            out.flush();
            if (!out) throw IoError("write failed: " + path.string());
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

}  // namespace zeta_osc
