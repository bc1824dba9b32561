#include "tspcp/geometry.hpp"

#include <algorithm>

namespace tspcp {

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod can land exactly on 2*pi after the correction when theta is a tiny
  // negative value.
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double point_segment_distance(Point p, const Segment& s) {
  const Point d = s.b - s.a;
  const double len2 = squared_norm(d);
  if (len2 == 0.0) return distance(p, s.a);
  double t = dot(p - s.a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

bool segment_disk_collides(const Segment& s, const Disk& d, double tol) {
  return point_segment_distance(d.center, s) < d.radius - tol;
}

bool disks_disjoint(const Disk& a, const Disk& b, double tol) {
  return distance(a.center, b.center) >= a.radius + b.radius - tol;
}

double point_arc_distance(Point p, const Arc& arc) {
  const Point v = p - arc.center;
  const double r = norm(v);
  // Nearest point on the supporting circle is the radial projection; it lies
  // on the arc iff its angle falls inside the swept interval.
  if (r > 0.0) {
    const double theta = std::atan2(v.y, v.x);
    const double a0 = normalize_angle(arc.start_angle);
    const double span = std::abs(arc.sweep);
    // Offset of theta from the arc start, measured in the sweep direction.
    double off = arc.sweep >= 0.0 ? normalize_angle(theta - a0)
                                  : normalize_angle(a0 - theta);
    if (off <= span) return std::abs(r - arc.radius);
  } else if (std::abs(arc.sweep) > 0.0) {
    return arc.radius;  // center itself; every arc point is at distance r
  }
  return std::min(distance(p, arc.start()), distance(p, arc.end()));
}

bool arc_disk_collides(const Arc& arc, const Disk& d, double tol) {
  return point_arc_distance(d.center, arc) < d.radius - tol;
}

}  // namespace tspcp
