#pragma once

#include <filesystem>
#include <functional>
#include <ostream>

namespace zeta_osc {

// Runs `write` against a temporary file next to `path` and renames it into
// place only if `write` returns normally and the stream is still good.
// On any failure the temporary is removed and `path` is left untouched.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& write,
                           bool binary = false);

}  // namespace zeta_osc
