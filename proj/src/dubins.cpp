#include "tspcp/dubins.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace tspcp {

namespace {

struct WordSolution {
  double t, p, q;  // normalized: arc angles and straight length / rho
};

double mod2pi(double a) { return normalize_angle(a); }

// Closed-form solutions of the six word types in the normalized frame
// (start at origin heading alpha, goal at (d, 0) heading beta, unit turning
// radius). Words that do not exist for the given configuration return
// nothing.
std::optional<WordSolution> solve_lsl(double alpha, double beta, double d) {
  const double tmp0 = d + std::sin(alpha) - std::sin(beta);
  const double tmp1 = std::atan2(std::cos(beta) - std::cos(alpha), tmp0);
  // Equals tmp0^2 + (cos beta - cos alpha)^2, so never negative.
  const double p2 = std::max(
      0.0, 2.0 + d * d - 2.0 * std::cos(alpha - beta) +
               2.0 * d * (std::sin(alpha) - std::sin(beta)));
  return WordSolution{mod2pi(-alpha + tmp1), std::sqrt(p2),
                      mod2pi(beta - tmp1)};
}

std::optional<WordSolution> solve_rsr(double alpha, double beta, double d) {
  const double tmp0 = d - std::sin(alpha) + std::sin(beta);
  const double tmp1 = std::atan2(std::cos(alpha) - std::cos(beta), tmp0);
  const double p2 = std::max(
      0.0, 2.0 + d * d - 2.0 * std::cos(alpha - beta) +
               2.0 * d * (std::sin(beta) - std::sin(alpha)));
  return WordSolution{mod2pi(alpha - tmp1), std::sqrt(p2),
                      mod2pi(-beta + tmp1)};
}

std::optional<WordSolution> solve_lsr(double alpha, double beta, double d) {
  const double p2 = -2.0 + d * d + 2.0 * std::cos(alpha - beta) +
                    2.0 * d * (std::sin(alpha) + std::sin(beta));
  if (p2 < 0.0) return std::nullopt;
  const double p = std::sqrt(p2);
  const double tmp2 =
      std::atan2(-std::cos(alpha) - std::cos(beta),
                 d + std::sin(alpha) + std::sin(beta)) -
      std::atan2(-2.0, p);
  return WordSolution{mod2pi(-alpha + tmp2), p, mod2pi(-mod2pi(beta) + tmp2)};
}

std::optional<WordSolution> solve_rsl(double alpha, double beta, double d) {
  const double p2 = d * d - 2.0 + 2.0 * std::cos(alpha - beta) -
                    2.0 * d * (std::sin(alpha) + std::sin(beta));
  if (p2 < 0.0) return std::nullopt;
  const double p = std::sqrt(p2);
  const double tmp2 =
      std::atan2(std::cos(alpha) + std::cos(beta),
                 d - std::sin(alpha) - std::sin(beta)) -
      std::atan2(2.0, p);
  return WordSolution{mod2pi(alpha - tmp2), p, mod2pi(beta - tmp2)};
}

std::optional<WordSolution> solve_rlr(double alpha, double beta, double d) {
  const double tmp = (6.0 - d * d + 2.0 * std::cos(alpha - beta) +
                      2.0 * d * (std::sin(alpha) - std::sin(beta))) /
                     8.0;
  if (std::abs(tmp) > 1.0) return std::nullopt;
  const double p = mod2pi(kTwoPi - std::acos(tmp));
  const double t = mod2pi(alpha -
                          std::atan2(std::cos(alpha) - std::cos(beta),
                                     d - std::sin(alpha) + std::sin(beta)) +
                          mod2pi(p / 2.0));
  return WordSolution{t, p, mod2pi(alpha - beta - t + mod2pi(p))};
}

std::optional<WordSolution> solve_lrl(double alpha, double beta, double d) {
  const double tmp = (6.0 - d * d + 2.0 * std::cos(alpha - beta) +
                      2.0 * d * (std::sin(beta) - std::sin(alpha))) /
                     8.0;
  if (std::abs(tmp) > 1.0) return std::nullopt;
  const double p = mod2pi(kTwoPi - std::acos(tmp));
  const double t = mod2pi(-alpha -
                          std::atan2(std::cos(alpha) - std::cos(beta),
                                     d + std::sin(alpha) - std::sin(beta)) +
                          p / 2.0);
  return WordSolution{t, p, mod2pi(mod2pi(beta) - alpha - t + mod2pi(p))};
}

using Solver = std::optional<WordSolution> (*)(double, double, double);

constexpr std::array<Solver, 6> kSolvers = {solve_lsl, solve_rsr, solve_lsr,
                                            solve_rsl, solve_rlr, solve_lrl};

constexpr std::array<std::array<DubinsPrimitive::Kind, 3>, 6> kSegments = {{
    {DubinsPrimitive::Kind::Left, DubinsPrimitive::Kind::Straight,
     DubinsPrimitive::Kind::Left},
    {DubinsPrimitive::Kind::Right, DubinsPrimitive::Kind::Straight,
     DubinsPrimitive::Kind::Right},
    {DubinsPrimitive::Kind::Left, DubinsPrimitive::Kind::Straight,
     DubinsPrimitive::Kind::Right},
    {DubinsPrimitive::Kind::Right, DubinsPrimitive::Kind::Straight,
     DubinsPrimitive::Kind::Left},
    {DubinsPrimitive::Kind::Right, DubinsPrimitive::Kind::Left,
     DubinsPrimitive::Kind::Right},
    {DubinsPrimitive::Kind::Left, DubinsPrimitive::Kind::Right,
     DubinsPrimitive::Kind::Left},
}};

}  // namespace

const char* to_string(DubinsWord w) {
  switch (w) {
    case DubinsWord::LSL: return "LSL";
    case DubinsWord::RSR: return "RSR";
    case DubinsWord::LSR: return "LSR";
    case DubinsWord::RSL: return "RSL";
    case DubinsWord::RLR: return "RLR";
    case DubinsWord::LRL: return "LRL";
  }
  return "?";
}

std::array<double, 3> DubinsPath::segment_lengths() const {
  const double mid = is_ccc(word) ? rho * params[1] : params[1];
  return {rho * params[0], mid, rho * params[2]};
}

std::array<DubinsPrimitive, 3> DubinsPath::primitives() const {
  std::array<DubinsPrimitive, 3> out;
  const auto kinds = kSegments[static_cast<std::size_t>(word)];
  const auto lengths = segment_lengths();
  Point pos = start.position;
  double heading = start.heading;
  for (int s = 0; s < 3; ++s) {
    DubinsPrimitive prim;
    prim.kind = kinds[static_cast<std::size_t>(s)];
    prim.length = lengths[static_cast<std::size_t>(s)];
    if (prim.kind == DubinsPrimitive::Kind::Straight) {
      const Point dir{std::cos(heading), std::sin(heading)};
      prim.segment = {pos, pos + prim.length * dir};
      pos = prim.segment.b;
    } else {
      const bool left = prim.kind == DubinsPrimitive::Kind::Left;
      const double angle = prim.length / rho;
      const Point normal = left ? Point{-std::sin(heading), std::cos(heading)}
                                : Point{std::sin(heading), -std::cos(heading)};
      prim.arc.center = pos + rho * normal;
      prim.arc.radius = rho;
      prim.arc.start_angle = left ? heading - kPi / 2.0 : heading + kPi / 2.0;
      prim.arc.sweep = left ? angle : -angle;
      heading = normalize_angle(left ? heading + angle : heading - angle);
      pos = prim.arc.end();
    }
    out[static_cast<std::size_t>(s)] = prim;
  }
  return out;
}

Point DubinsPath::point_at(double s) const {
  s = std::max(0.0, std::min(s, length));
  for (const auto& prim : primitives()) {
    if (s <= prim.length) {
      if (prim.kind == DubinsPrimitive::Kind::Straight) {
        if (prim.length == 0.0) return prim.segment.a;
        const double t = s / prim.length;
        return prim.segment.a + t * (prim.segment.b - prim.segment.a);
      }
      const double u = prim.arc.sweep >= 0.0 ? s / rho : -s / rho;
      return prim.arc.point_at_angle(prim.arc.start_angle + u);
    }
    s -= prim.length;
  }
  return end.position;
}

DubinsPath dubins_shortest(const Config& from, const Config& to, double rho) {
  const Point delta = to.position - from.position;
  const double d = norm(delta) / rho;
  const double phi = std::atan2(delta.y, delta.x);
  const double alpha = normalize_angle(from.heading - phi);
  const double beta = normalize_angle(to.heading - phi);

  DubinsPath best;
  double best_len = std::numeric_limits<double>::infinity();
  for (int w = 0; w < 6; ++w) {
    const auto sol = kSolvers[static_cast<std::size_t>(w)](alpha, beta, d);
    if (!sol) continue;
    const double len = rho * (sol->t + sol->p + sol->q);
    if (len < best_len) {
      best_len = len;
      best.word = static_cast<DubinsWord>(w);
      best.params = {sol->t, is_ccc(best.word) ? sol->p : rho * sol->p,
                     sol->q};
    }
  }
  best.rho = rho;
  best.start = {from.position, normalize_angle(from.heading)};
  best.end = {to.position, normalize_angle(to.heading)};
  best.length = best_len;
  return best;
}

bool dubins_disk_collides(const DubinsPath& path, const Disk& disk,
                          double tol) {
  for (const auto& prim : path.primitives()) {
    if (prim.length == 0.0) continue;
    if (prim.kind == DubinsPrimitive::Kind::Straight) {
      if (segment_disk_collides(prim.segment, disk, tol)) return true;
    } else {
      if (arc_disk_collides(prim.arc, disk, tol)) return true;
    }
  }
  return false;
}

}  // namespace tspcp
