#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hol/bundle.hpp"
#include "hol/group.hpp"
#include "hol/report.hpp"

namespace hol {

using Point = std::array<double, 3>;

// Gauge potential from a fixed analytic catalog; components are
// Lie-algebra valued (imaginary scalars for U1, pure-imaginary quaternions
// for SU2), evaluable at any chart point.
struct GaugePotential {
  enum class Catalog { ConstantAbelian, PolynomialAbelian, ConstantSU2 };

  int dim = 2;  // 2 or 3
  GroupDescriptor group;
  Catalog catalog = Catalog::ConstantAbelian;
  // Abelian: per-axis monomial coefficients in the basis
  //   dim 2: [1, x, y, x^2, xy, y^2]
  //   dim 3: [1, x, y, z, x^2, xy, y^2, xz, yz, z^2]
  // (constant catalog uses the leading entry only).
  std::vector<std::vector<double>> coeffs;
  // SU2: constant su(2) coefficient per axis as an imaginary 3-vector.
  std::vector<std::array<double, 3>> su2;

  static GaugePotential zero_u1(int dim, double tol = 1e-9);
  static GaugePotential constant_u1(int dim, const std::vector<double>& per_axis,
                                    double tol = 1e-9);
  static GaugePotential polynomial_u1(int dim, const std::vector<std::vector<double>>& per_axis,
                                      double tol = 1e-9);
  static GaugePotential constant_su2(int dim, const std::vector<std::array<double, 3>>& per_axis,
                                     double tol = 1e-9);

  double u1_component(int axis, const Point& x) const;
  const std::array<double, 3>& su2_component(int axis) const;
  // Scalar curl coefficients (value, d/dx, d/dy) of dA_y/dx - dA_x/dy for
  // 2-dimensional abelian catalog entries; degree <= 1 by construction.
  std::array<double, 3> u1_curl_2d() const;
};

struct Segment {
  enum class Type { Line, Arc, Cubic };

  Type type = Type::Line;
  Point p0{}, p1{}, p2{}, p3{};  // line uses p0,p1; cubic all four
  Point center{};
  double radius = 0, ang0 = 0, ang1 = 0;  // arc in the z = center_z plane

  Point at(double t) const;  // t in [0,1]
  static Segment line(const Point& a, const Point& b);
  static Segment arc(const Point& center, double radius, double ang0, double ang1);
  static Segment cubic(const Point& a, const Point& b, const Point& c, const Point& d);
};

struct PiecewiseSmoothCurve {
  int dim = 2;
  std::vector<Segment> segments;

  static PiecewiseSmoothCurve make(int dim, std::vector<Segment> segments);
  Point start() const;
  Point end() const;
  bool closed() const;
};

PiecewiseSmoothCurve invert(const PiecewiseSmoothCurve& c);
PiecewiseSmoothCurve concat(const PiecewiseSmoothCurve& second, const PiecewiseSmoothCurve& first);

// Path-ordered product of per-step exponentials exp(-A(midpoint).dx);
// midpoint sampling makes the scheme second order and exact on constant
// potentials along straight segments.
GroupElement transport_ode(const GaugePotential& A, const PiecewiseSmoothCurve& curve, int steps);

// Thin invariance (spur insertion) and multiplicativity on seeded random
// polygon loops at the base point.
Report axiom_check(const GaugePotential& A, const Point& basepoint, std::uint64_t seed,
                   std::uint64_t trials, int steps);

// Smooth finite-dimensional loop families from a fixed catalog, each
// parameter yielding a closed curve at the pinned base point.
struct LoopFamily {
  enum class Catalog { Circles, Rectangles, Lasso };

  Catalog catalog = Catalog::Circles;
  Point basepoint{};
  // Circles: radius r in [lo0, hi0], center at basepoint + r * normal.
  // Rectangles: width/height in [lo0,hi0] x [lo1,hi1], corner pinned.
  // Lasso: tail offset in [lo0,hi0] x [lo1,hi1], fixed circle of radius
  //   `lasso_radius` reached by a straight tail.
  double lo0 = 0.1, hi0 = 1.0, lo1 = 0.1, hi1 = 1.0;
  Point normal{1, 0, 0};
  double lasso_radius = 0.25;

  int param_dim() const { return catalog == Catalog::Circles ? 1 : 2; }
  PiecewiseSmoothCurve curve_at(double u0, double u1) const;
};

struct FamilyReport {
  Report report;
  double max_first_difference = 0;
  double max_second_difference = 0;
  // Deviation between difference quotients at grid h and h/2.
  double first_diff_stability = 0;
  double second_diff_stability = 0;
  // Circles family over an abelian potential: max |dH/dr - analytic|.
  double analytic_derivative_error = -1;
};

FamilyReport family_smoothness_check(const GaugePotential& A, const LoopFamily& family, int grid,
                                     int steps);

// Axis-aligned grid graph over the box with one midpoint step per link; the
// honest lattice approximation whose Wilson loops converge to the continuum
// transports at first order or better in the mesh.
GaugeField lattice_discretize(const GaugePotential& A, const Point& lo, const Point& hi,
                              int resolution, int steps_per_link = 1);

// Name of the lattice vertex at integer coordinates.
std::string lattice_vertex_name(int i, int j, int k, int dim);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Enclosed-flux line integral of an abelian potential around a closed curve
// by fine quadrature of the curl over the bounding region is test-side; the
// library provides the exact closed form for the catalog entries.
double u1_disc_flux(const GaugePotential& A, const Point& center, double radius);
double u1_rect_flux(const GaugePotential& A, const Point& corner, double w, double h);

}  // namespace hol
