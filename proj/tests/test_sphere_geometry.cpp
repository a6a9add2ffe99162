#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "csdamp/gnomonic_grid.hpp"
#include "csdamp/sphere_geometry.hpp"

using namespace csdamp;
using std::numbers::pi;

namespace {

CartPoint unit(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  return {x / n, y / n, z / n};
}

// Oriented triangle excess from the triple product (Van Oosterom & Strackee),
// independent of the edge-normal route used by the library.
double triangle_area(const CartPoint& a, const CartPoint& b, const CartPoint& c, double r) {
  const CartPoint ua = (1.0 / norm(a)) * a;
  const CartPoint ub = (1.0 / norm(b)) * b;
  const CartPoint uc = (1.0 / norm(c)) * c;
  const double num = std::abs(dot(ua, cross(ub, uc)));
  const double den = 1.0 + dot(ua, ub) + dot(ub, uc) + dot(uc, ua);
  return 2.0 * std::atan2(num, den) * r * r;
}

// Angle at B from the spherical law of cosines on the three side arcs.
double law_of_cosines_angle(const CartPoint& a, const CartPoint& b, const CartPoint& c) {
  const double ab = central_angle(a, b);
  const double bc = central_angle(b, c);
  const double ac = central_angle(a, c);
  return std::acos((std::cos(ac) - std::cos(ab) * std::cos(bc)) / (std::sin(ab) * std::sin(bc)));
}

struct Rotation {
  std::array<std::array<double, 3>, 3> m{};

  CartPoint operator()(const CartPoint& p) const {
    return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
            m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z};
  }
};

// Rodrigues rotation about a random axis.
Rotation random_rotation(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const CartPoint k = unit(u(gen), u(gen), u(gen));
  const double t = pi * u(gen);
  const double c = std::cos(t), s = std::sin(t), v = 1.0 - c;
  Rotation r;
  r.m = {{{c + k.x * k.x * v, k.x * k.y * v - k.z * s, k.x * k.z * v + k.y * s},
          {k.y * k.x * v + k.z * s, c + k.y * k.y * v, k.y * k.z * v - k.x * s},
          {k.z * k.x * v - k.y * s, k.z * k.y * v + k.x * s, c + k.z * k.z * v}}};
  return r;
}

CartPoint random_point(std::mt19937_64& gen, double r) {
  std::normal_distribution<double> g;
  return r * unit(g(gen), g(gen), g(gen));
}

}  // namespace

TEST_CASE("cart_to_lonlat axis points") {
  const double r = kEarthRadius;
  auto ll = cart_to_lonlat({r, 0, 0});
  CHECK(ll.lon == doctest::Approx(0.0));
  CHECK(ll.lat == doctest::Approx(0.0));

  ll = cart_to_lonlat({0, 0, r});
  CHECK(ll.lat == doctest::Approx(pi / 2));
  CHECK(std::isfinite(ll.lon));

  ll = cart_to_lonlat({r / std::sqrt(2.0), r / std::sqrt(2.0), 0});
  CHECK(ll.lon == doctest::Approx(pi / 4));
  CHECK(ll.lat == doctest::Approx(0.0));

  CHECK_THROWS_AS(cart_to_lonlat({0, 0, 0}), std::domain_error);
}

TEST_CASE("lonlat round trip") {
  std::mt19937_64 gen(7);
  for (int k = 0; k < 200; ++k) {
    const CartPoint p = random_point(gen, 1.0);
    const CartPoint q = lonlat_to_unit(cart_to_lonlat(p));
    CHECK(norm(p - q) < 1e-14);
  }
}

TEST_CASE("great_circle_distance") {
  const LonLat a{0.3, -0.2};
  CHECK(great_circle_distance(a, a, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(great_circle_distance({0, 0}, {pi, 0}, kEarthRadius) ==
        doctest::Approx(pi * kEarthRadius));
  CHECK(great_circle_distance({0, 0}, {pi / 2, 0}, 1.0) == doctest::Approx(pi / 2));

  SUBCASE("triangle inequality") {
    std::mt19937_64 gen(3);
    for (int k = 0; k < 500; ++k) {
      const LonLat x = cart_to_lonlat(random_point(gen, 1.0));
      const LonLat y = cart_to_lonlat(random_point(gen, 1.0));
      const LonLat z = cart_to_lonlat(random_point(gen, 1.0));
      CHECK(great_circle_distance(x, z, 1.0) <=
            great_circle_distance(x, y, 1.0) + great_circle_distance(y, z, 1.0) + 1e-12);
    }
  }
}

TEST_CASE("edge_unit_normal") {
  const CartPoint n1 = edge_unit_normal({1, 0, 0}, {0, 1, 0});
  CHECK(norm(n1 - CartPoint{0, 0, 1}) < 1e-15);
  const CartPoint n2 = edge_unit_normal({1, 0, 0}, {0, 0, 1});
  CHECK(norm(n2 - CartPoint{0, -1, 0}) < 1e-15);
  CHECK_THROWS_AS(edge_unit_normal({1, 2, 3}, {1, 2, 3}), DegenerateEdgeError);
  CHECK_THROWS_AS(edge_unit_normal({1, 2, 3}, {2, 4, 6}), DegenerateEdgeError);
}

TEST_CASE("interior_angle") {
  CHECK(interior_angle({1, 0, 0}, {0, 0, 1}, {0, 1, 0}) == doctest::Approx(pi / 2));

  SUBCASE("panel corner is 2pi/3") {
    for (auto kind : {MappingKind::equidistant, MappingKind::equiangular, MappingKind::equi_edge}) {
      const GridSpec spec{kind, 8, 1.0};
      const double t = theta_max(kind);
      const double d = t / 4.0;
      const CartPoint corner = panel_point(spec, 1, t, t);
      const CartPoint along_x = panel_point(spec, 1, t - d, t);
      const CartPoint along_y = panel_point(spec, 1, t, t - d);
      CHECK(interior_angle(along_x, corner, along_y) == doctest::Approx(2 * pi / 3).epsilon(1e-13));
    }
  }

  SUBCASE("nearly collinear against the law of cosines") {
    for (double eps : {1e-2, 1e-3}) {
      const CartPoint a = unit(1, -0.3, 0.0);
      const CartPoint b = unit(1, 0.0, eps);
      const CartPoint c = unit(1, 0.3, 0.0);
      const double got = interior_angle(a, b, c);
      CHECK(got > 3.0);
      CHECK(got == doctest::Approx(law_of_cosines_angle(a, b, c)).epsilon(1e-8));
    }
  }

  SUBCASE("symmetric in its outer points") {
    std::mt19937_64 gen(11);
    for (int k = 0; k < 200; ++k) {
      const CartPoint a = random_point(gen, 2.0);
      const CartPoint b = random_point(gen, 2.0);
      const CartPoint c = random_point(gen, 2.0);
      CHECK(interior_angle(a, b, c) == doctest::Approx(interior_angle(c, b, a)).epsilon(1e-14));
    }
  }
}

TEST_CASE("quad_area") {
  SUBCASE("one full panel is a sixth of the sphere") {
    for (auto kind : {MappingKind::equidistant, MappingKind::equiangular, MappingKind::equi_edge}) {
      const double r = kEarthRadius;
      const GridSpec spec{kind, 4, r};
      const double t = theta_max(kind);
      const double a = quad_area(panel_point(spec, 1, -t, -t), panel_point(spec, 1, t, -t),
                                 panel_point(spec, 1, t, t), panel_point(spec, 1, -t, t), r);
      CHECK(a == doctest::Approx(4 * pi * r * r / 6).epsilon(1e-13));
    }
  }

  SUBCASE("equals the sum of its two triangles") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int k = 0; k < 200; ++k) {
      const double r = 3.0;
      // Convex quad around a random centre: jittered square in a tangent frame.
      const CartPoint p1 = r * unit(1, -0.3 + 0.1 * u(gen), -0.3 + 0.1 * u(gen));
      const CartPoint p2 = r * unit(1, 0.3 + 0.1 * u(gen), -0.3 + 0.1 * u(gen));
      const CartPoint p3 = r * unit(1, 0.3 + 0.1 * u(gen), 0.3 + 0.1 * u(gen));
      const CartPoint p4 = r * unit(1, -0.3 + 0.1 * u(gen), 0.3 + 0.1 * u(gen));
      const double oracle = triangle_area(p1, p2, p3, r) + triangle_area(p1, p3, p4, r);
      CHECK(quad_area(p1, p2, p3, p4, r) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }

  SUBCASE("planar limit near the panel centre") {
    double prev_err = 1.0;
    for (double h : {1e-1, 1e-2, 1e-3}) {
      const CartPoint p1 = unit(1, -h / 2, -h / 2);
      const CartPoint p2 = unit(1, h / 2, -h / 2);
      const CartPoint p3 = unit(1, h / 2, h / 2);
      const CartPoint p4 = unit(1, -h / 2, h / 2);
      const double err = std::abs(quad_area(p1, p2, p3, p4, 1.0) / (h * h) - 1.0);
      CHECK(err < h * h);
      CHECK(err < prev_err);
      prev_err = err;
    }
  }
}

TEST_CASE("rotation invariance") {
  std::mt19937_64 gen(13);
  for (int k = 0; k < 100; ++k) {
    const Rotation rot = random_rotation(gen);
    const double r = 5.0;
    const CartPoint p1 = r * unit(1, -0.2, -0.25);
    const CartPoint p2 = r * unit(1, 0.3, -0.2);
    const CartPoint p3 = r * unit(1, 0.25, 0.3);
    const CartPoint p4 = r * unit(1, -0.3, 0.2);

    CHECK(central_angle(rot(p1), rot(p3)) == doctest::Approx(central_angle(p1, p3)).epsilon(1e-12));
    CHECK(great_circle_distance(cart_to_lonlat(rot(p1)), cart_to_lonlat(rot(p2)), r) ==
          doctest::Approx(great_circle_distance(cart_to_lonlat(p1), cart_to_lonlat(p2), r))
              .epsilon(1e-12));
    CHECK(interior_angle(rot(p1), rot(p2), rot(p3)) ==
          doctest::Approx(interior_angle(p1, p2, p3)).epsilon(1e-12));
    CHECK(quad_area(rot(p1), rot(p2), rot(p3), rot(p4), r) ==
          doctest::Approx(quad_area(p1, p2, p3, p4, r)).epsilon(1e-12));
    const CartPoint n = edge_unit_normal(p1, p2);
    CHECK(norm(edge_unit_normal(rot(p1), rot(p2)) - rot(n)) < 1e-12);
  }
}
