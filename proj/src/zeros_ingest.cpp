#include "zeta_osc/zeros_ingest.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>
#include <algorithm>
#include <cctype>

#include <zlib.h>

#include "zeta_osc/atomic_file.hpp"
#include "zeta_osc/error.hpp"

namespace zeta_osc {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\v\f";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_decimal(std::string_view tok, std::size_t line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError(line, "malformed decimal '" + std::string(tok) + "'");
    return v;
}

std::uint64_t parse_index(std::string_view tok, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "malformed index '" + std::string(tok) + "'");
    return v;
}

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[at + i]} << (8 * i);
    return v;
}

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in bounded pieces.
    std::size_t off = 0;
    while (off < bytes.size()) {
        auto n = static_cast<uInt>(std::min<std::size_t>(bytes.size() - off, 1u << 30));
        crc = ::crc32(crc, bytes.data() + off, n);
        off += n;
    }
    return static_cast<std::uint32_t>(crc);
}

constexpr std::size_t kHeaderBytes = 4 + 2 + 8;

}  // namespace

MissedZeroError::MissedZeroError(double lo, double hi, std::size_t expected, std::size_t found)
    : NumericError("missed zero in Gram block [" + fmt_double(lo) + ", " + fmt_double(hi) +
                   "]: expected " + std::to_string(expected) + " zeros, found " +
                   std::to_string(found)),
      lo_(lo),
      hi_(hi) {}

void validate_zeros(std::span<const double> values) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!(values[j] > kMinZeroHeight))
            throw ValidationError("value " + fmt_double(values[j]) + " at index " +
                                  std::to_string(j) + " is not above 14.0");
        if (j > 0 && !(values[j] > values[j - 1]))
            throw ValidationError("non-increasing at index " + std::to_string(j) + " (" +
                                  fmt_double(values[j - 1]) + " followed by " +
                                  fmt_double(values[j]) + ")");
    }
}

ZeroTable parse_zeros_text(std::istream& in, std::string source) {
    enum class Layout { unknown, bare, indexed };
    Layout layout = Layout::unknown;
    ZeroTable table;
    table.source = std::move(source);
    std::vector<std::size_t> lines;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto toks = split_ws(line);
        Layout this_layout = toks.size() == 1   ? Layout::bare
                             : toks.size() == 2 ? Layout::indexed
                                                : Layout::unknown;
        if (this_layout == Layout::unknown)
            throw ParseError(line_no, "expected '<value>' or '<index> <value>'");
        if (layout == Layout::unknown) layout = this_layout;
        if (this_layout != layout) throw ParseError(line_no, "mixed bare and indexed records");

        double value = 0.0;
        if (layout == Layout::indexed) {
            auto idx = parse_index(toks[0], line_no);
            if (idx != table.values.size() + 1)
                throw ParseError(line_no, "index " + std::to_string(idx) + " out of sequence (expected " +
                                              std::to_string(table.values.size() + 1) + ")");
            value = parse_decimal(toks[1], line_no);
        } else {
            value = parse_decimal(toks[0], line_no);
        }

        if (!(value > kMinZeroHeight))
            throw ValidationError("value " + fmt_double(value) + " at line " +
                                  std::to_string(line_no) + " is not above 14.0");
        if (!table.values.empty() && !(value > table.values.back()))
            throw ValidationError("non-increasing at line " + std::to_string(line_no) + " (" +
                                  fmt_double(table.values.back()) + " followed by " +
                                  fmt_double(value) + ")");
        table.values.push_back(value);
    }
    if (in.bad()) throw IoError("read failure in " + table.source);
    return table;
}

ZeroTable parse_zeros_file(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw IoError("file not found: " + path.string());
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    return parse_zeros_text(in, path.string());
}

void write_zeros_text(const ZeroTable& table, std::ostream& out) {
    if (!table.source.empty()) out << "# " << table.source << '\n';
    for (std::size_t j = 0; j < table.values.size(); ++j)
        out << (j + 1) << ' ' << fmt_double(table.values[j]) << '\n';
}

std::vector<std::uint8_t> encode_cache(const ZeroTable& table) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + 8 * table.count() + 4);
    for (char c : std::string_view("ZOSC")) out.push_back(static_cast<std::uint8_t>(c));
    put_le(out, kCacheVersion, 2);
    put_le(out, table.count(), 8);
    for (double v : table.values) put_le(out, std::bit_cast<std::uint64_t>(v), 8);
    auto payload = std::span<const std::uint8_t>(out).subspan(kHeaderBytes);
    put_le(out, crc32_of(payload), 4);
    return out;
}

ZeroTable decode_cache(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderBytes)
        throw CacheError(CacheErrorKind::truncated, "cache truncated: header incomplete");
    if (!(bytes[0] == 'Z' && bytes[1] == 'O' && bytes[2] == 'S' && bytes[3] == 'C'))
        throw CacheError(CacheErrorKind::bad_magic, "not a zero cache (bad magic)");
    auto version = static_cast<std::uint16_t>(get_le(bytes, 4, 2));
    if (version != kCacheVersion)
        throw CacheError(CacheErrorKind::version_mismatch,
                         "cache version " + std::to_string(version) + " unsupported (expected " +
                             std::to_string(kCacheVersion) + ")");
    const std::uint64_t count = get_le(bytes, 6, 8);
    const std::size_t available = (bytes.size() - kHeaderBytes);
    if (count > available / 8 || available < 8 * count + 4)
        throw CacheError(CacheErrorKind::truncated,
                         "cache truncated: header announces " + std::to_string(count) + " values");
    if (available != 8 * count + 4)
        throw CacheError(CacheErrorKind::malformed, "cache has trailing bytes");

    auto payload = bytes.subspan(kHeaderBytes, 8 * count);
    auto stored = static_cast<std::uint32_t>(get_le(bytes, kHeaderBytes + 8 * count, 4));
    if (crc32_of(payload) != stored)
        throw CacheError(CacheErrorKind::checksum, "cache checksum mismatch");

    ZeroTable table;
    table.values.resize(count);
    for (std::size_t j = 0; j < count; ++j)
        table.values[j] = std::bit_cast<double>(get_le(payload, 8 * j, 8));
    validate_zeros(table.values);
    return table;
}

void save_cache(const ZeroTable& table, const std::filesystem::path& path) {
    validate_zeros(table.values);
    auto bytes = encode_cache(table);
    write_file_atomically(
        path,
        [&](std::ostream& out) {
            out.write(reinterpret_cast<const char*>(bytes.data()),
                      static_cast<std::streamsize>(bytes.size()));
        },
        /*binary=*/true);
}

ZeroTable load_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError(CacheErrorKind::io, "cannot open cache: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw CacheError(CacheErrorKind::io, "read failure: " + path.string());
    auto table = decode_cache(bytes);
    table.source = path.string();
    return table;
}

}  // namespace zeta_osc
