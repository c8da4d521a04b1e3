#pragma once

#include <cmath>
#include <iosfwd>

namespace reebdom {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  double operator[](int axis) const { return axis == 1 ? x : y; }

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Exchanges the two coordinates; used to run axis-2 computations through
// the axis-1 machinery.
inline Point2 swapped(Point2 p) { return {p.y, p.x}; }

std::ostream& operator<<(std::ostream& os, Point2 p);

// Axis index as used throughout: 1 projects to x, 2 projects to y.
enum class Axis : int { X = 1, Y = 2 };

inline int index(Axis a) { return static_cast<int>(a); }
inline double coord(Point2 p, Axis a) { return a == Axis::X ? p.x : p.y; }
inline Axis other(Axis a) { return a == Axis::X ? Axis::Y : Axis::X; }

}  // namespace reebdom
