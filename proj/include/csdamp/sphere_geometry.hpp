#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csdamp {

/// Mean Earth radius in metres.
inline constexpr double kEarthRadius = 6371220.0;

/// Cartesian point (or direction) in R^3.
struct CartPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr CartPoint operator+(const CartPoint& a, const CartPoint& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr CartPoint operator-(const CartPoint& a, const CartPoint& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr CartPoint operator*(double s, const CartPoint& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend constexpr bool operator==(const CartPoint&, const CartPoint&) = default;
};

constexpr double dot(const CartPoint& a, const CartPoint& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr CartPoint cross(const CartPoint& a, const CartPoint& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const CartPoint& a) { return std::sqrt(dot(a, a)); }

/// Longitude in (-pi, pi], latitude in [-pi/2, pi/2], both radians.
struct LonLat {
  double lon = 0.0;
  double lat = 0.0;
};

/// Raised when two points do not span a great circle.
class DegenerateEdgeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Longitude/latitude of the direction of `p`. At the poles the longitude is
/// atan2(0, 0) = 0. Throws std::domain_error for the zero vector.
LonLat cart_to_lonlat(const CartPoint& p);

/// Unit vector pointing at `ll`.
CartPoint lonlat_to_unit(const LonLat& ll);

/// Great-circle distance on a sphere of radius `radius`, using the spherical
/// law of cosines with the arccos argument clamped to [-1, 1].
double great_circle_distance(const LonLat& a, const LonLat& b, double radius);

/// Central angle between the directions of `a` and `b`, in [0, pi].
double central_angle(const CartPoint& a, const CartPoint& b);

/// Unit normal of the great circle through `pa` and `pb`, oriented along
/// pa x pb. Throws DegenerateEdgeError for (anti)parallel inputs.
CartPoint edge_unit_normal(const CartPoint& pa, const CartPoint& pb);

/// Interior angle at `pb` of the spherical corner a-b-c, measured between the
/// great-circle normals e_ba and e_bc. Result in [0, pi]; symmetric in a and c.
double interior_angle(const CartPoint& pa, const CartPoint& pb, const CartPoint& pc);

/// Interior angles of the quadrilateral p1..p4 in cyclic order, returned as
/// {a412, a123, a234, a341}.
struct QuadAngles {
  double at1 = 0.0;
  double at2 = 0.0;
  double at3 = 0.0;
  double at4 = 0.0;

  double sum() const { return at1 + at2 + at3 + at4; }
};

QuadAngles quad_interior_angles(const CartPoint& p1, const CartPoint& p2,
                                const CartPoint& p3, const CartPoint& p4);

/// Area of a convex spherical quadrilateral by the spherical excess,
/// R^2 (a412 + a123 + a234 + a341 - 2 pi).
///
/// The corners must be supplied in cyclic order (either orientation); a
/// self-intersecting ordering is not detected and yields a meaningless value.
double quad_area(const CartPoint& p1, const CartPoint& p2, const CartPoint& p3,
                 const CartPoint& p4, double radius);

}  // namespace csdamp
