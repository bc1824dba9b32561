#pragma once

#include <array>
#include <cstdint>

#include "tspcp/geometry.hpp"

namespace tspcp {

// Candidate maneuver types, in fixed tie-break order.
enum class DubinsWord : std::uint8_t { LSL, RSR, LSR, RSL, RLR, LRL };

const char* to_string(DubinsWord w);

inline bool is_ccc(DubinsWord w) {
  return w == DubinsWord::RLR || w == DubinsWord::LRL;
}

// One primitive piece of a maneuver: a turning arc or a straight segment.
struct DubinsPrimitive {
  enum class Kind : std::uint8_t { Left, Right, Straight } kind;
  Segment segment;  // valid for Straight
  Arc arc;          // valid for Left/Right (sweep > 0 left, < 0 right)
  double length = 0.0;
};

// Shortest curvature-constrained maneuver between two oriented configs.
// params[0] and params[2] are arc angles in radians; params[1] is the middle
// arc angle for CCC words and the straight length (in length units) for CSC
// words.
struct DubinsPath {
  DubinsWord word = DubinsWord::LSL;
  std::array<double, 3> params{0.0, 0.0, 0.0};
  double rho = 1.0;
  Config start;
  Config end;
  double length = 0.0;

  std::array<double, 3> segment_lengths() const;
  std::array<DubinsPrimitive, 3> primitives() const;
  // Position after travelling arclength s from the start, s in [0, length].
  Point point_at(double s) const;
};

// Evaluates all six word types in closed form and returns the shortest
// existing one; ties broken by the enum order LSL < RSR < LSR < RSL < RLR
// < LRL. rho must be positive. LSL or RSR always exists, so this never fails.
DubinsPath dubins_shortest(const Config& from, const Config& to, double rho);

// True iff any primitive of the path penetrates the open disk interior
// shrunk by tol.
bool dubins_disk_collides(const DubinsPath& path, const Disk& disk,
                          double tol = kEps);

}  // namespace tspcp
