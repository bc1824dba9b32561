#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tspcp/geometry.hpp"

namespace tspcp {

enum class Family { Hex, HexNoisy, Mesh, Square };

Family family_from_string(const std::string& name);
const char* to_string(Family family);

struct InstanceSpec {
  Family family = Family::Hex;
  int n = 3;
  double spacing = 50.0;
  double noise = -1.0;  // hex_noisy displacement bound; <0 means 0.3*spacing
  std::uint64_t seed = 1;
  std::string name;
};

// Deterministic point sets: hex takes the n lattice points nearest the
// origin, square fills a ceil(sqrt(n)) grid row by row, hex_noisy displaces
// hex points uniformly inside a disk, mesh rejection-samples a square while
// keeping pairwise distances >= spacing.
std::vector<Point> generate(const InstanceSpec& spec);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedInstance {
  std::string name;
  std::string type = "TSPCP";  // TSPCP or TSPSD
  std::vector<Point> points;
  std::vector<std::array<int, 3>> deletions;  // 0-based (v, from, to)
};

// Line-oriented instance format; ids are 1-based on disk, '#' starts a
// comment. Malformed or unknown content is rejected with the line number.
ParsedInstance parse_instance(const std::string& text);
std::string write_instance(const ParsedInstance& instance);

struct SolutionRecord {
  std::string instance;
  std::string variant;  // tspsd | tspcp | dtspcp
  std::uint64_t seed = 0;
  double radius = 0.0;
  double cost = 0.0;
  std::vector<int> tour;          // 0-based in memory, 1-based on disk
  std::vector<double> headings;   // per tour position; empty unless dubins
  double dubins_radius = 0.0;
  std::vector<Disk> circles;      // per tour position
  std::int64_t wall_ms = 0;
  bool valid = false;
};

// Key-value text blocks, one per record, reals at 17 significant digits so
// the round trip is lossless.
std::string write_solutions(const std::vector<SolutionRecord>& records);
std::vector<SolutionRecord> parse_solutions(const std::string& text);

}  // namespace tspcp
