#include "bolab/snapshot_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bolab/error.hpp"

namespace bolab::io {

namespace {

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

template <class T>
void put(std::vector<std::uint8_t>& out, T value) {
    std::uint8_t buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.insert(out.end(), buf, buf + sizeof(T));
}

template <class T>
T get(std::span<const std::uint8_t> bytes, std::size_t offset) {
    if (offset + sizeof(T) > bytes.size()) throw Error("format", "snapshot truncated");
    T value;
    std::memcpy(&value, bytes.data() + offset, sizeof(T));
    return value;
}

constexpr std::size_t header_size = 48;

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const Snapshot& s) {
    const Grid& g = s.field.grid();
    std::vector<std::uint8_t> out;
    out.reserve(header_size + 8 * g.size());
    out.insert(out.end(), snapshot_magic.begin(), snapshot_magic.end());
    put<std::uint64_t>(out, g.size());
    put<double>(out, g.length());
    put<double>(out, s.t);
    put<std::uint64_t>(out, s.frame == solver::Frame::moving ? 1 : 0);
    put<double>(out, s.frame_speed);
    for (double v : s.field.values()) put<double>(out, v);
    return out;
}

Snapshot decode_snapshot(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < header_size ||
        std::memcmp(bytes.data(), snapshot_magic.data(), snapshot_magic.size()) != 0)
        throw Error("format", "not a snapshot file");
    const auto n = get<std::uint64_t>(bytes, 8);
    const double L = get<double>(bytes, 16);
    if (bytes.size() != header_size + 8 * n) throw Error("format", "snapshot size does not match header");
    Grid g(n, L);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = get<double>(bytes, header_size + 8 * i);
    Snapshot s{Field(g, std::move(v)), get<double>(bytes, 24),
               get<std::uint64_t>(bytes, 32) == 1 ? solver::Frame::moving : solver::Frame::lab,
               get<double>(bytes, 40)};
    return s;
}

void atomic_write(const std::string& path, std::string_view contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("io", "cannot open " + tmp.string());
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!os) throw Error("io", "write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_snapshot(const std::string& path, const Snapshot& s) {
    const auto bytes = encode_snapshot(s);
    atomic_write(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("io", "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

std::string ledger_csv(std::span<const solver::LedgerRow> rows) {
    std::ostringstream os;
    os.precision(17);
    os << "t,mass,l2,hamiltonian\n";
    for (const auto& r : rows) os << r.t << ',' << r.q.mass << ',' << r.q.l2 << ',' << r.q.hamiltonian << '\n';
    return os.str();
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a(std::string_view text, std::uint64_t seed) {
    return fnv1a(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()),
                 seed);
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace bolab::io
