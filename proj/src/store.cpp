#include "gl2/store.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace gl2 {
namespace {

constexpr std::array<char, 8> kMagic{'G', 'L', '2', 'D', 'I', 'S', 'T', '\0'};

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
  out.write(buf.data(), buf.size());
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) {
    throw FormatError(std::string("truncated database while reading ") + what);
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return static_cast<T>(v);
}

void check_result(const ExplorationResult& res) {
  if (res.n < 1 || res.n > kMaxOrder) throw std::invalid_argument("cannot save: order out of range");
  if (res.sphere_sizes.size() != res.orbit_counts.size() || res.sphere_sizes.empty()) {
    throw std::invalid_argument("cannot save: sphere table is malformed");
  }
  for (std::size_t i = 1; i < res.entries.size(); ++i) {
    if (res.entries[i - 1].key >= res.entries[i].key) throw std::invalid_argument("cannot save: keys not strictly sorted");
  }
}

}  // namespace

void save(const ExplorationResult& res, std::ostream& out) {
  check_result(res);
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kFormatVersion);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(res.n));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(res.group));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(std::max(res.max_complete_depth(), 0)));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>((res.complete ? 1 : 0) | (res.last_level_complete ? 2 : 0)));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(res.sphere_sizes.size()));
  put_le<std::uint64_t>(out, res.entries.size());
  for (const auto& e : res.entries) {
    put_le<std::uint64_t>(out, e.key);
    put_le<std::uint8_t>(out, e.dist);
  }
  for (std::size_t d = 0; d < res.sphere_sizes.size(); ++d) {
    const std::string digits = res.sphere_sizes[d].get_str();
    put_le<std::uint64_t>(out, res.orbit_counts[d]);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(digits.size()));
    out.write(digits.data(), static_cast<std::streamsize>(digits.size()));
  }
  if (!out) throw std::runtime_error("failed writing database");
}

void save(const ExplorationResult& res, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  save(res, out);
}

DatabaseHeader read_header(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size())) throw FormatError("truncated database header");
  if (magic != kMagic) throw FormatError("not a distance database (bad magic)");
  DatabaseHeader h;
  h.version = get_le<std::uint32_t>(in, "version");
  if (h.version != kFormatVersion) {
    throw FormatError("unsupported database version " + std::to_string(h.version) + " (expected " +
                      std::to_string(kFormatVersion) + ")");
  }
  h.n = get_le<std::uint8_t>(in, "order");
  const auto group = get_le<std::uint8_t>(in, "isometry");
  h.max_complete_depth = get_le<std::uint8_t>(in, "depth");
  const auto flags = get_le<std::uint8_t>(in, "flags");
  h.levels = get_le<std::uint32_t>(in, "level count");
  h.entries = get_le<std::uint64_t>(in, "entry count");
  if (h.n < 1 || h.n > kMaxOrder) throw FormatError("order out of range in header");
  if (group > 1) throw FormatError("unknown isometry tag in header");
  if (flags > 3) throw FormatError("unknown flag bits in header");
  if (h.levels == 0 || h.levels > 256) throw FormatError("level count out of range in header");
  h.group = static_cast<IsometryGroup>(group);
  h.complete = flags & 1;
  h.last_level_complete = flags & 2;
  const int expected_depth = static_cast<int>(h.levels) - (h.last_level_complete ? 1 : 2);
  if (std::max(expected_depth, 0) != h.max_complete_depth) throw FormatError("header depth disagrees with level count");
  return h;
}

DatabaseHeader read_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open database '" + path + "'");
  return read_header(in);
}

ExplorationResult load(std::istream& in) {
  const DatabaseHeader h = read_header(in);
  ExplorationResult res;
  res.n = h.n;
  res.group = h.group;
  res.complete = h.complete;
  res.last_level_complete = h.last_level_complete;
  res.entries.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(h.entries, std::uint64_t{1} << 28)));
  const std::uint64_t limit = h.n == kMaxOrder ? ~std::uint64_t{0} : (std::uint64_t{1} << (h.n * h.n)) - 1;
  for (std::uint64_t i = 0; i < h.entries; ++i) {
    DistanceEntry e;
    e.key = get_le<std::uint64_t>(in, "record key");
    e.dist = get_le<std::uint8_t>(in, "record distance");
    if (e.key > limit) throw FormatError("record key has bits beyond n^2");
    if (!res.entries.empty() && res.entries.back().key >= e.key) throw FormatError("records are not strictly sorted");
    if (e.dist >= h.levels) throw FormatError("record distance beyond the sphere table");
    res.entries.push_back(e);
  }
  std::uint64_t stored = 0;
  for (std::uint32_t d = 0; d < h.levels; ++d) {
    res.orbit_counts.push_back(get_le<std::uint64_t>(in, "orbit count"));
    const auto len = get_le<std::uint32_t>(in, "digit count");
    if (len == 0 || len > 4096) throw FormatError("sphere size length out of range");
    std::string digits(len, '\0');
    if (!in.read(digits.data(), len)) throw FormatError("truncated database while reading sphere size");
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw FormatError("sphere size is not a decimal integer");
    }
    res.sphere_sizes.emplace_back(digits, 10);
    stored += res.orbit_counts.back();
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after sphere table");
  if (!res.entries.empty() && stored != h.entries) throw FormatError("orbit counts do not match the record count");
  return res;
}

ExplorationResult load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open database '" + path + "'");
  return load(in);
}

std::optional<int> lookup(const std::string& path, const BitMatrix& m) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open database '" + path + "'");
  const DatabaseHeader h = read_header(in);
  if (m.order() != h.n) throw std::invalid_argument("matrix order does not match the database");
  const std::uint64_t key = canonicalize(m, h.group).key.bits();
  std::uint64_t lo = 0;
  std::uint64_t hi = h.entries;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    in.seekg(static_cast<std::streamoff>(kHeaderSize + mid * kRecordSize));
    const auto k = get_le<std::uint64_t>(in, "record key");
    if (k == key) return get_le<std::uint8_t>(in, "record distance");
    if (k < key) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return std::nullopt;
}

std::optional<int> lookup(const ExplorationResult& res, const BitMatrix& m) {
  if (m.order() != res.n) throw std::invalid_argument("matrix order does not match the database");
  return res.find(canonicalize(m, res.group).key.bits());
}

void write_sphere_csv(std::ostream& out, const ExplorationResult& res) {
  out << "d,orbits,elements\n";
  for (std::size_t d = 0; d < res.sphere_sizes.size(); ++d) {
    out << d << ',' << res.orbit_counts[d] << ',' << res.sphere_sizes[d].get_str() << '\n';
  }
}

void write_sphere_json(std::ostream& out, const ExplorationResult& res) {
  nlohmann::json j;
  j["n"] = res.n;
  j["isometry"] = std::string(to_string(res.group));
  j["complete"] = res.complete;
  j["last_level_complete"] = res.last_level_complete;
  BigInt total = 0;
  auto levels = nlohmann::json::array();
  for (std::size_t d = 0; d < res.sphere_sizes.size(); ++d) {
    levels.push_back({{"d", d}, {"orbits", res.orbit_counts[d]}, {"elements", res.sphere_sizes[d].get_str()}});
    total += res.sphere_sizes[d];
  }
  j["levels"] = std::move(levels);
  j["total_elements"] = total.get_str();
  out << j.dump(2) << '\n';
}

}  // namespace gl2
