#include "csdamp/sphere_geometry.hpp"

#include <algorithm>

namespace csdamp {

LonLat cart_to_lonlat(const CartPoint& p) {
  const double r = norm(p);
  if (!(r > 0.0)) {
    throw std::domain_error("cart_to_lonlat: zero vector has no direction");
  }
  double lon = std::atan2(p.y, p.x);
  // atan2 can return -pi for y = -0.0; keep the half-open range (-pi, pi].
  if (lon <= -std::numbers::pi) lon = std::numbers::pi;
  const double lat = std::asin(std::clamp(p.z / r, -1.0, 1.0));
  return {lon, lat};
}

CartPoint lonlat_to_unit(const LonLat& ll) {
  const double c = std::cos(ll.lat);
  return {c * std::cos(ll.lon), c * std::sin(ll.lon), std::sin(ll.lat)};
}

double great_circle_distance(const LonLat& a, const LonLat& b, double radius) {
  const double c = std::sin(a.lat) * std::sin(b.lat) +
                   std::cos(a.lat) * std::cos(b.lat) * std::cos(a.lon - b.lon);
  return radius * std::acos(std::clamp(c, -1.0, 1.0));
}

double central_angle(const CartPoint& a, const CartPoint& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

CartPoint edge_unit_normal(const CartPoint& pa, const CartPoint& pb) {
  const CartPoint n = cross(pa, pb);
  const double len = norm(n);
  // Relative test so the check is independent of the sphere radius.
  if (!(len > 1e-15 * norm(pa) * norm(pb))) {
    throw DegenerateEdgeError("edge_unit_normal: points are parallel or antiparallel");
  }
  return (1.0 / len) * n;
}

double interior_angle(const CartPoint& pa, const CartPoint& pb, const CartPoint& pc) {
  const CartPoint e_ba = edge_unit_normal(pb, pa);
  const CartPoint e_bc = edge_unit_normal(pb, pc);
  // Same value as arccos(e_ba . e_bc), without the loss of precision near 0 and pi.
  return std::atan2(norm(cross(e_ba, e_bc)), dot(e_ba, e_bc));
}

QuadAngles quad_interior_angles(const CartPoint& p1, const CartPoint& p2,
                                const CartPoint& p3, const CartPoint& p4) {
  return {interior_angle(p4, p1, p2), interior_angle(p1, p2, p3),
          interior_angle(p2, p3, p4), interior_angle(p3, p4, p1)};
}

double quad_area(const CartPoint& p1, const CartPoint& p2, const CartPoint& p3,
                 const CartPoint& p4, double radius) {
  const QuadAngles a = quad_interior_angles(p1, p2, p3, p4);
  return radius * radius * (a.sum() - 2.0 * std::numbers::pi);
}

}  // namespace csdamp
