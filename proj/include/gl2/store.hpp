#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "gl2/bfs.hpp"

namespace gl2 {

// Distance database, all integers little-endian:
//
//   magic        8 bytes  "GL2DIST\0"
//   version      u32      kFormatVersion
//   n            u8
//   isometry     u8       0 = sym, 1 = sym-ti
//   depth        u8       deepest exactly known level
//   flags        u8       bit 0 complete, bit 1 last level complete
//   levels       u32      number of sphere-table rows
//   entries      u64      number of (key, distance) records
//   records      entries x { key u64, distance u8 }, strictly ascending keys
//   sphere table levels x { orbits u64, length u32, decimal digits }
inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 8 + 4 + 4 + 4 + 8;
inline constexpr std::size_t kRecordSize = 9;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatabaseHeader {
  std::uint32_t version = kFormatVersion;
  int n = 0;
  IsometryGroup group = IsometryGroup::Sym;
  int max_complete_depth = 0;
  bool complete = false;
  bool last_level_complete = true;
  std::uint32_t levels = 0;
  std::uint64_t entries = 0;
};

void save(const ExplorationResult& res, std::ostream& out);
void save(const ExplorationResult& res, const std::string& path);
ExplorationResult load(std::istream& in);
ExplorationResult load(const std::string& path);

DatabaseHeader read_header(std::istream& in);
DatabaseHeader read_header(const std::string& path);

/// Binary search over the records on disk; the matrix is canonicalized
/// under the stored isometry group first. nullopt when the key is absent.
std::optional<int> lookup(const std::string& path, const BitMatrix& m);
std::optional<int> lookup(const ExplorationResult& res, const BitMatrix& m);

// Sphere-table exports: columns d, orbits, elements.
void write_sphere_csv(std::ostream& out, const ExplorationResult& res);
void write_sphere_json(std::ostream& out, const ExplorationResult& res);

}  // namespace gl2
