#pragma once

#include <cmath>

namespace tspcp {

// Default tolerance for all geometric predicates. Collision predicates test
// the open disk interior shrunk by this amount, so exact tangency never
// counts as a collision.
inline constexpr double kEps = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double squared_norm(Point p) { return p.x * p.x + p.y * p.y; }
inline double distance(Point a, Point b) { return norm(b - a); }

// Degenerate segments (a == b) are allowed and behave as points.
struct Segment {
  Point a;
  Point b;
};

struct Disk {
  Point center;
  double radius = 0.0;
};

// Maps any angle to [0, 2*pi).
double normalize_angle(double theta);

// Oriented planar configuration; heading stored normalized to [0, 2*pi).
struct Config {
  Point position;
  double heading = 0.0;
};

inline Config make_config(double x, double y, double theta) {
  return Config{{x, y}, normalize_angle(theta)};
}

double point_segment_distance(Point p, const Segment& s);

// True iff the segment penetrates the open interior of the disk shrunk by
// tol, i.e. dist(segment, center) < radius - tol. Tangency does not collide.
bool segment_disk_collides(const Segment& s, const Disk& d, double tol = kEps);

// True iff |c1 - c2| >= r1 + r2 - tol; touching disks are disjoint.
bool disks_disjoint(const Disk& a, const Disk& b, double tol = kEps);

// Circular arc starting at angle `start_angle` (measured at the center) and
// sweeping by `sweep` radians; positive sweep is counterclockwise.
struct Arc {
  Point center;
  double radius = 0.0;
  double start_angle = 0.0;
  double sweep = 0.0;

  Point point_at_angle(double theta) const {
    return {center.x + radius * std::cos(theta),
            center.y + radius * std::sin(theta)};
  }
  Point start() const { return point_at_angle(start_angle); }
  Point end() const { return point_at_angle(start_angle + sweep); }
};

// Minimum distance from a point to the arc (endpoints included).
double point_arc_distance(Point p, const Arc& arc);

bool arc_disk_collides(const Arc& arc, const Disk& d, double tol = kEps);

}  // namespace tspcp
