#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace zeta_osc {

/// Imaginary parts b_j of the first non-trivial zeros s_j = 1/2 + i b_j,
/// in increasing order.
///
/// Invariants (enforced by validate_zeros): strictly increasing, every value
/// above kMinZeroHeight. `source` is free-text provenance; it is not part of
/// the value identity and is not stored in the binary cache.
struct ZeroTable {
    std::vector<double> values;
    std::string source;

    std::size_t count() const noexcept { return values.size(); }
    double front() const { return values.front(); }
    double back() const { return values.back(); }

    friend bool operator==(const ZeroTable& a, const ZeroTable& b) { return a.values == b.values; }
};

/// Anything at or below this cannot be a zero (b_1 = 14.1347...).
inline constexpr double kMinZeroHeight = 14.0;

/// Throws ValidationError naming the first offending index/pair.
void validate_zeros(std::span<const double> values);

/// Parses "<value>" or "<index> <value>" records; '#' lines are comments.
/// The first record fixes the layout. Indices must be 1-based and consecutive.
/// Throws ParseError (with line number) or ValidationError.
ZeroTable parse_zeros_text(std::istream& in, std::string source = "text");
ZeroTable parse_zeros_file(const std::filesystem::path& path);

/// Canonical text form: indexed layout, shortest round-trip decimals.
void write_zeros_text(const ZeroTable& table, std::ostream& out);

// Binary cache layout, all little-endian:
//   "ZOSC" | u16 version | u64 count | count x f64 | u32 CRC-32 of the f64 block
inline constexpr std::uint16_t kCacheVersion = 1;

std::vector<std::uint8_t> encode_cache(const ZeroTable& table);
ZeroTable decode_cache(std::span<const std::uint8_t> bytes);

/// Validates, then writes atomically. Throws ValidationError / IoError.
void save_cache(const ZeroTable& table, const std::filesystem::path& path);
/// Throws CacheError (kind distinguishes io / magic / version / truncated /
/// checksum / malformed) or ValidationError.
ZeroTable load_cache(const std::filesystem::path& path);

}  // namespace zeta_osc
