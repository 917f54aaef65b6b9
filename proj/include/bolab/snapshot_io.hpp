#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bolab/grid.hpp"
#include "bolab/solver.hpp"

namespace bolab::io {

// Snapshot layout, little-endian:
//   0   8 bytes  magic "BOSNAP01"
//   8   u64      n
//   16  f64      L
//   24  f64      t
//   32  u64      frame (0 lab, 1 moving)
//   40  f64      frame speed
//   48  n x f64  samples u(x_i), x_i = -L/2 + i L/n
inline constexpr std::string_view snapshot_magic = "BOSNAP01";

struct Snapshot {
    Field field;
    double t = 0.0;
    solver::Frame frame = solver::Frame::moving;
    double frame_speed = 0.0;
};

std::vector<std::uint8_t> encode_snapshot(const Snapshot& s);
Snapshot decode_snapshot(std::span<const std::uint8_t> bytes);

void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path);

// Writes to a sibling temporary file, then renames over the target.
void atomic_write(const std::string& path, std::string_view contents);

// Columns t,mass,l2,hamiltonian.
std::string ledger_csv(std::span<const solver::LedgerRow> rows);

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a(std::string_view text, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t h);

}  // namespace bolab::io
