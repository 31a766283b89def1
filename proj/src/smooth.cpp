#include "hol/smooth.hpp"

#include <algorithm>
#include <cmath>

#include "hol/rng.hpp"

namespace hol {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int monomial_count(int dim) { return dim == 2 ? 6 : 10; }

double eval_monomials(const std::vector<double>& c, const Point& x, int dim) {
  double v = 0;
  if (dim == 2) {
    const double basis[6] = {1, x[0], x[1], x[0] * x[0], x[0] * x[1], x[1] * x[1]};
    for (std::size_t i = 0; i < c.size() && i < 6; ++i) v += c[i] * basis[i];
  } else {
    const double basis[10] = {1,           x[0],        x[1],        x[2],        x[0] * x[0],
                              x[0] * x[1], x[1] * x[1], x[0] * x[2], x[1] * x[2], x[2] * x[2]};
    for (std::size_t i = 0; i < c.size() && i < 10; ++i) v += c[i] * basis[i];
  }
  return v;
}

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw ValidationError("gauge potential dimension must be 2 or 3");
}

Quat pure_exp(const std::array<double, 3>& w) {
  double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  if (n < 1e-300) return Quat{1, 0, 0, 0};
  double s = std::sin(n) / n;
  return Quat{std::cos(n), s * w[0], s * w[1], s * w[2]};
}

}  // namespace

GaugePotential GaugePotential::zero_u1(int dim, double tol) {
  return constant_u1(dim, std::vector<double>(static_cast<std::size_t>(dim), 0.0), tol);
}

GaugePotential GaugePotential::constant_u1(int dim, const std::vector<double>& per_axis,
                                           double tol) {
  check_dim(dim);
  if (per_axis.size() != static_cast<std::size_t>(dim))
    throw ValidationError("constant U1 potential needs one coefficient per axis");
  GaugePotential A;
  A.dim = dim;
  A.group = GroupDescriptor::u1(tol);
  A.catalog = Catalog::ConstantAbelian;
  for (double c : per_axis) A.coeffs.push_back({c});
  return A;
}

GaugePotential GaugePotential::polynomial_u1(int dim,
                                             const std::vector<std::vector<double>>& per_axis,
                                             double tol) {
  check_dim(dim);
  if (per_axis.size() != static_cast<std::size_t>(dim))
    throw ValidationError("polynomial U1 potential needs one coefficient list per axis");
  for (const auto& c : per_axis)
    if (c.size() > static_cast<std::size_t>(monomial_count(dim)))
      throw ValidationError("polynomial U1 potential limited to degree 2 monomials");
  GaugePotential A;
  A.dim = dim;
  A.group = GroupDescriptor::u1(tol);
  A.catalog = Catalog::PolynomialAbelian;
  A.coeffs = per_axis;
  return A;
}

GaugePotential GaugePotential::constant_su2(int dim,
                                            const std::vector<std::array<double, 3>>& per_axis,
                                            double tol) {
  check_dim(dim);
  if (per_axis.size() != static_cast<std::size_t>(dim))
    throw ValidationError("constant SU2 potential needs one su(2) value per axis");
  GaugePotential A;
  A.dim = dim;
  A.group = GroupDescriptor::su2(tol);
  A.catalog = Catalog::ConstantSU2;
  A.su2 = per_axis;
  return A;
}

double GaugePotential::u1_component(int axis, const Point& x) const {
  if (catalog == Catalog::ConstantSU2) throw PreconditionError("u1_component on an SU2 potential");
  return eval_monomials(coeffs[static_cast<std::size_t>(axis)], x, dim);
}

const std::array<double, 3>& GaugePotential::su2_component(int axis) const {
  if (catalog != Catalog::ConstantSU2) throw PreconditionError("su2_component on an abelian potential");
  return su2[static_cast<std::size_t>(axis)];
}

std::array<double, 3> GaugePotential::u1_curl_2d() const {
  if (dim != 2 || catalog == Catalog::ConstantSU2)
    throw PreconditionError("u1_curl_2d: 2-dimensional abelian catalog only");
  auto coef = [&](int axis, int mono) {
    const auto& c = coeffs[static_cast<std::size_t>(axis)];
    return mono < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(mono)] : 0.0;
  };
  // A_x over [1,x,y,x^2,xy,y^2] has dA_x/dy = c2 + c4 x + 2 c5 y, and
  // dA_y/dx = c1 + 2 c3 x + c4 y.
  double v0 = coef(1, 1) - coef(0, 2);
  double vx = 2 * coef(1, 3) - coef(0, 4);
  double vy = coef(1, 4) - 2 * coef(0, 5);
  return {v0, vx, vy};
}

Segment Segment::line(const Point& a, const Point& b) {
  Segment s;
  s.type = Type::Line;
  s.p0 = a;
  s.p1 = b;
  return s;
}

Segment Segment::arc(const Point& center, double radius, double ang0, double ang1) {
  Segment s;
  s.type = Type::Arc;
  s.center = center;
  s.radius = radius;
  s.ang0 = ang0;
  s.ang1 = ang1;
  return s;
}

Segment Segment::cubic(const Point& a, const Point& b, const Point& c, const Point& d) {
  Segment s;
  s.type = Type::Cubic;
  s.p0 = a;
  s.p1 = b;
  s.p2 = c;
  s.p3 = d;
  return s;
}

Point Segment::at(double t) const {
  switch (type) {
    case Type::Line:
      return {p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]), p0[2] + t * (p1[2] - p0[2])};
    case Type::Arc: {
      double a = ang0 + t * (ang1 - ang0);
      return {center[0] + radius * std::cos(a), center[1] + radius * std::sin(a), center[2]};
    }
    case Type::Cubic: {
      double u = 1 - t;
      double b0 = u * u * u, b1 = 3 * u * u * t, b2 = 3 * u * t * t, b3 = t * t * t;
      return {b0 * p0[0] + b1 * p1[0] + b2 * p2[0] + b3 * p3[0],
              b0 * p0[1] + b1 * p1[1] + b2 * p2[1] + b3 * p3[1],
              b0 * p0[2] + b1 * p1[2] + b2 * p2[2] + b3 * p3[2]};
    }
  }
  throw Error("unreachable");
}

PiecewiseSmoothCurve PiecewiseSmoothCurve::make(int dim, std::vector<Segment> segments) {
  check_dim(dim);
  PiecewiseSmoothCurve c;
  c.dim = dim;
  c.segments = std::move(segments);
  for (std::size_t i = 0; i + 1 < c.segments.size(); ++i) {
    Point a = c.segments[i].at(1.0);
    Point b = c.segments[i + 1].at(0.0);
    double d = std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
    if (d > 1e-9)
      throw ValidationError("piecewise curve discontinuous at joint " + std::to_string(i));
  }
  return c;
}

Point PiecewiseSmoothCurve::start() const {
  if (segments.empty()) throw PreconditionError("empty curve");
  return segments.front().at(0.0);
}

Point PiecewiseSmoothCurve::end() const {
  if (segments.empty()) throw PreconditionError("empty curve");
  return segments.back().at(1.0);
}

bool PiecewiseSmoothCurve::closed() const {
  Point a = start(), b = end();
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]) <= 1e-9;
}

PiecewiseSmoothCurve invert(const PiecewiseSmoothCurve& c) {
  std::vector<Segment> segs;
  for (auto it = c.segments.rbegin(); it != c.segments.rend(); ++it) {
    Segment s = *it;
    switch (s.type) {
      case Segment::Type::Line: std::swap(s.p0, s.p1); break;
      case Segment::Type::Arc: std::swap(s.ang0, s.ang1); break;
      case Segment::Type::Cubic:
        std::swap(s.p0, s.p3);
        std::swap(s.p1, s.p2);
        break;
    }
    segs.push_back(s);
  }
  return PiecewiseSmoothCurve::make(c.dim, std::move(segs));
}

PiecewiseSmoothCurve concat(const PiecewiseSmoothCurve& second, const PiecewiseSmoothCurve& first) {
  if (first.dim != second.dim) throw PreconditionError("concat: dimension mismatch");
  std::vector<Segment> segs = first.segments;
  segs.insert(segs.end(), second.segments.begin(), second.segments.end());
  return PiecewiseSmoothCurve::make(first.dim, std::move(segs));
}

GroupElement transport_ode(const GaugePotential& A, const PiecewiseSmoothCurve& curve, int steps) {
  if (steps < 1) throw PreconditionError("transport_ode: steps >= 1 per segment required");
  if (curve.dim != A.dim) throw PreconditionError("transport_ode: curve/potential dimension mismatch");
  if (A.catalog == GaugePotential::Catalog::ConstantSU2) {
    Quat result{1, 0, 0, 0};
    for (const auto& seg : curve.segments) {
      for (int i = 0; i < steps; ++i) {
        double t0 = static_cast<double>(i) / steps;
        double t1 = static_cast<double>(i + 1) / steps;
        Point a = seg.at(t0), b = seg.at(t1);
        std::array<double, 3> w{0, 0, 0};
        for (int axis = 0; axis < A.dim; ++axis) {
          const auto& v = A.su2_component(axis);
          double dx = b[static_cast<std::size_t>(axis)] - a[static_cast<std::size_t>(axis)];
          w[0] -= v[0] * dx;
          w[1] -= v[1] * dx;
          w[2] -= v[2] * dx;
        }
        if (!std::isfinite(w[0]) || !std::isfinite(w[1]) || !std::isfinite(w[2]))
          throw ValidationError("transport_ode: non-finite potential value");
        result = (pure_exp(w) * result).normalized();
      }
    }
    return GroupElement{A.group, result};
  }
  // Abelian: the ordered product collapses to a single accumulated phase.
  double phase = 0;
  for (const auto& seg : curve.segments) {
    for (int i = 0; i < steps; ++i) {
      double t0 = static_cast<double>(i) / steps;
      double t1 = static_cast<double>(i + 1) / steps;
      Point a = seg.at(t0), b = seg.at(t1);
      Point mid = seg.at(0.5 * (t0 + t1));
      for (int axis = 0; axis < A.dim; ++axis)
        phase -= A.u1_component(axis, mid) *
                 (b[static_cast<std::size_t>(axis)] - a[static_cast<std::size_t>(axis)]);
    }
  }
  if (!std::isfinite(phase)) throw ValidationError("transport_ode: non-finite potential value");
  double wrapped = std::fmod(phase, kTwoPi);
  if (wrapped < 0) wrapped += kTwoPi;
  if (wrapped >= kTwoPi) wrapped = 0;
  return GroupElement{A.group, wrapped};
}

Report axiom_check(const GaugePotential& A, const Point& basepoint, std::uint64_t seed,
                   std::uint64_t trials, int steps) {
  Report rep;
  rep.suite = "smooth-axioms";
  rep.seed = seed;

  auto random_point = [&](Rng& rng) {
    Point p = basepoint;
    for (int k = 0; k < A.dim; ++k)
      p[static_cast<std::size_t>(k)] += rng.real() * 2.0 - 1.0;
    return p;
  };
  auto random_polygon = [&](Rng& rng) {
    int corners = rng.range(2, 4);
    std::vector<Segment> segs;
    Point prev = basepoint;
    for (int i = 0; i < corners; ++i) {
      Point next = random_point(rng);
      segs.push_back(Segment::line(prev, next));
      prev = next;
    }
    segs.push_back(Segment::line(prev, basepoint));
    return PiecewiseSmoothCurve::make(A.dim, std::move(segs));
  };

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, t);
    PiecewiseSmoothCurve gamma = random_polygon(rng);
    PiecewiseSmoothCurve gamma2 = random_polygon(rng);

    GroupElement h = transport_ode(A, gamma, steps);
    GroupElement h2 = transport_ode(A, gamma2, steps);

    // Axiom (1) proxy: an exact out-and-back spur leaves the holonomy fixed.
    Point spur_tip = random_point(rng);
    std::vector<Segment> spurred;
    spurred.push_back(Segment::line(basepoint, spur_tip));
    spurred.push_back(Segment::line(spur_tip, basepoint));
    for (const auto& s : gamma.segments) spurred.push_back(s);
    GroupElement h_spur =
        transport_ode(A, PiecewiseSmoothCurve::make(A.dim, std::move(spurred)), steps);
    double r1 = distance(h_spur, h);
    rep.residual(r1);
    rep.checks++;
    if (r1 > 1e-6)
      rep.fail(t, "thin-invariance residual " + format_double(r1) + " at seed " +
                      std::to_string(seed));

    // Axiom (2): multiplicativity over composition (gamma2 first).
    GroupElement composite = transport_ode(A, concat(gamma, gamma2), steps);
    double r2 = distance(composite, multiply(h, h2));
    rep.residual(r2);
    rep.checks++;
    if (r2 > 1e-6)
      rep.fail(t, "multiplicativity residual " + format_double(r2) + " at seed " +
                      std::to_string(seed));
    rep.trials++;
  }
  return rep;
}

PiecewiseSmoothCurve LoopFamily::curve_at(double u0, double u1) const {
  switch (catalog) {
    case Catalog::Circles: {
      double r = u0;
      Point c{basepoint[0] + r * normal[0], basepoint[1] + r * normal[1],
              basepoint[2] + r * normal[2]};
      double a0 = std::atan2(basepoint[1] - c[1], basepoint[0] - c[0]);
      return PiecewiseSmoothCurve::make(2, {Segment::arc(c, r, a0, a0 + kTwoPi)});
    }
    case Catalog::Rectangles: {
      double w = u0, h = u1;
      Point p0 = basepoint;
      Point p1{p0[0] + w, p0[1], p0[2]};
      Point p2{p0[0] + w, p0[1] + h, p0[2]};
      Point p3{p0[0], p0[1] + h, p0[2]};
      return PiecewiseSmoothCurve::make(2, {Segment::line(p0, p1), Segment::line(p1, p2),
                                            Segment::line(p2, p3), Segment::line(p3, p0)});
    }
    case Catalog::Lasso: {
      Point tip{basepoint[0] + u0, basepoint[1] + u1, basepoint[2]};
      Point c{tip[0] + lasso_radius * normal[0], tip[1] + lasso_radius * normal[1], tip[2]};
      double a0 = std::atan2(tip[1] - c[1], tip[0] - c[0]);
      return PiecewiseSmoothCurve::make(
          2, {Segment::line(basepoint, tip), Segment::arc(c, lasso_radius, a0, a0 + kTwoPi),
              Segment::line(tip, basepoint)});
    }
  }
  throw Error("unreachable");
}

namespace {

// Holonomy samples over a parameter grid, refined once for stability checks.
struct GridSamples {
  std::vector<GroupElement> values;  // row-major (n1 x n2), n2 == 1 for 1-d families
  int n1 = 0, n2 = 0;
  double h1 = 0, h2 = 0;
};

GridSamples sample_family(const GaugePotential& A, const LoopFamily& fam, int n, int steps) {
  GridSamples s;
  bool two = fam.param_dim() == 2;
  s.n1 = n;
  s.n2 = two ? n : 1;
  s.h1 = (fam.hi0 - fam.lo0) / (n - 1);
  s.h2 = two ? (fam.hi1 - fam.lo1) / (n - 1) : 0;
  for (int i = 0; i < s.n1; ++i)
    for (int j = 0; j < s.n2; ++j) {
      double u0 = fam.lo0 + s.h1 * i;
      double u1 = two ? fam.lo1 + s.h2 * j : 0;
      s.values.push_back(transport_ode(A, fam.curve_at(u0, u1), steps));
    }
  return s;
}

// Components of a group element as a flat vector for differencing.
std::vector<double> embed(const GroupElement& g) {
  if (g.desc.kind == GroupKind::U1) {
    double a = std::get<double>(g.payload);
    return {std::cos(a), std::sin(a)};
  }
  const Quat& q = std::get<Quat>(g.payload);
  return {q.w, q.x, q.y, q.z};
}

}  // namespace

FamilyReport family_smoothness_check(const GaugePotential& A, const LoopFamily& fam, int grid,
                                     int steps) {
  FamilyReport out;
  out.report.suite = "smooth-family";
  if (grid < 5) throw PreconditionError("family_smoothness_check: grid >= 5 required");
  int fine_n = 2 * (grid - 1) + 1;
  GridSamples fine = sample_family(A, fam, fine_n, steps);
  bool two = fam.param_dim() == 2;

  auto value_at = [&](const GridSamples& s, int i, int j) -> const GroupElement& {
    return s.values[static_cast<std::size_t>(i * s.n2 + j)];
  };
  // Difference quotients along axis 0 at stride `st` on the fine grid.
  auto diffs = [&](int st, double& d1max, double& d2max, std::vector<double>& d1_flat) {
    d1max = 0;
    d2max = 0;
    double h = fine.h1 * st;
    for (int i = st; i + st < fine.n1; i += st)
      for (int j = 0; j < fine.n2; j += (two ? st : 1)) {
        auto lo = embed(value_at(fine, i - st, j));
        auto mid = embed(value_at(fine, i, j));
        auto hi = embed(value_at(fine, i + st, j));
        double n1 = 0, n2 = 0;
        for (std::size_t k = 0; k < mid.size(); ++k) {
          double first = (hi[k] - lo[k]) / (2 * h);
          double second = (hi[k] - 2 * mid[k] + lo[k]) / (h * h);
          n1 = std::max(n1, std::fabs(first));
          n2 = std::max(n2, std::fabs(second));
          d1_flat.push_back(first);
        }
        d1max = std::max(d1max, n1);
        d2max = std::max(d2max, n2);
      }
  };

  std::vector<double> d1_coarse, d1_fine;
  double c1, c2, f1, f2;
  diffs(2, c1, c2, d1_coarse);  // grid spacing h
  diffs(1, f1, f2, d1_fine);    // grid spacing h/2
  out.max_first_difference = f1;
  out.max_second_difference = f2;

  // Stability: quotients at h vs h/2 evaluated on the shared points.
  double dev1 = 0, dev2 = 0;
  {
    double h = fine.h1;
    for (int i = 2; i + 2 < fine.n1; i += 2)
      for (int j = 0; j < fine.n2; j += (two ? 2 : 1)) {
        auto em = [&](int ii, int jj) { return embed(value_at(fine, ii, jj)); };
        auto lo2 = em(i - 2, j), mid = em(i, j), hi2 = em(i + 2, j);
        auto lo1 = em(i - 1, j), hi1 = em(i + 1, j);
        for (std::size_t k = 0; k < mid.size(); ++k) {
          double first_h = (hi2[k] - lo2[k]) / (4 * h);
          double first_h2 = (hi1[k] - lo1[k]) / (2 * h);
          double second_h = (hi2[k] - 2 * mid[k] + lo2[k]) / (4 * h * h);
          double second_h2 = (hi1[k] - 2 * mid[k] + lo1[k]) / (h * h);
          dev1 = std::max(dev1, std::fabs(first_h - first_h2));
          dev2 = std::max(dev2, std::fabs(second_h - second_h2));
        }
      }
  }
  out.first_diff_stability = dev1;
  out.second_diff_stability = dev2;
  out.report.checks += 2;
  double scale1 = std::max(1.0, f1), scale2 = std::max(1.0, f2);
  if (dev1 > 0.05 * scale1)
    out.report.fail(0, "first difference quotients unstable under grid refinement: " +
                           format_double(dev1));
  if (dev2 > 0.10 * scale2)
    out.report.fail(1, "second difference quotients unstable under grid refinement: " +
                           format_double(dev2));

  // Circles over an abelian potential admit the closed-form flux derivative.
  if (fam.catalog == LoopFamily::Catalog::Circles && A.dim == 2 &&
      A.catalog != GaugePotential::Catalog::ConstantSU2) {
    double worst = 0;
    for (int i = 2; i + 2 < fine.n1; i += 2) {
      double r = fam.lo0 + fine.h1 * i;
      double h = fine.h1;
      auto lo = embed(value_at(fine, i - 1, 0));
      auto hi = embed(value_at(fine, i + 1, 0));
      // H(r) = exp(-i flux(r)): compare d/dr of both embedded components.
      Point c{fam.basepoint[0] + r * fam.normal[0], fam.basepoint[1] + r * fam.normal[1], 0};
      double flux = u1_disc_flux(A, c, r);
      auto curl = A.u1_curl_2d();
      double dflux =
          kTwoPi * r * (curl[0] + curl[1] * fam.basepoint[0] + curl[2] * fam.basepoint[1]) +
          1.5 * kTwoPi * r * r * (curl[1] * fam.normal[0] + curl[2] * fam.normal[1]);
      double dre = -std::sin(flux) * dflux;  // d/dr cos(flux)
      double dim_ = -std::cos(flux) * dflux; // d/dr -sin(flux)
      worst = std::max(worst, std::fabs((hi[0] - lo[0]) / (2 * h) - dre));
      worst = std::max(worst, std::fabs((hi[1] - lo[1]) / (2 * h) - dim_));
    }
    out.analytic_derivative_error = worst;
    out.report.checks++;
    if (worst > 1e-4)
      out.report.fail(2, "dH/dr deviates from the analytic flux derivative by " +
                             format_double(worst));
  }
  out.report.residual(std::max(dev1, dev2));
  out.report.notes.push_back("max_first_difference=" + format_double(out.max_first_difference));
  out.report.notes.push_back("max_second_difference=" + format_double(out.max_second_difference));
  return out;
}

std::string lattice_vertex_name(int i, int j, int k, int dim) {
  std::string s = "v" + std::to_string(i) + "_" + std::to_string(j);
  if (dim == 3) s += "_" + std::to_string(k);
  return s;
}

GaugeField lattice_discretize(const GaugePotential& A, const Point& lo, const Point& hi,
                              int resolution, int steps_per_link) {
  if (resolution < 2) throw PreconditionError("lattice_discretize: resolution >= 2 required");
  int n = resolution;
  auto coord = [&](int i, int axis) {
    return lo[static_cast<std::size_t>(axis)] +
           (hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]) * i / n;
  };
  std::vector<std::string> vertices;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  int kmax_v = A.dim == 3 ? n : 0;
  for (int k = 0; k <= kmax_v; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) vertices.push_back(lattice_vertex_name(i, j, k, A.dim));
  auto add_edge = [&](const char* tag, int i, int j, int k, int i2, int j2, int k2) {
    edges.emplace_back(std::string(tag) + std::to_string(i) + "_" + std::to_string(j) +
                           (A.dim == 3 ? "_" + std::to_string(k) : ""),
                       lattice_vertex_name(i, j, k, A.dim), lattice_vertex_name(i2, j2, k2, A.dim));
  };
  int kmax = A.dim == 3 ? n : 0;
  for (int k = 0; k <= kmax; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        if (i < n) add_edge("ex", i, j, k, i + 1, j, k);
        if (j < n) add_edge("ey", i, j, k, i, j + 1, k);
        if (A.dim == 3 && k < n) add_edge("ez", i, j, k, i, j, k + 1);
      }

  GraphPtr g = Graph::make(vertices, edges);
  std::vector<GroupElement> links;
  links.reserve(g->edges.size());
  auto parse_point = [&](const std::string& name) {
    // vi_j[_k]
    Point p{0, 0, 0};
    int vals[3] = {0, 0, 0};
    std::size_t pos = 1;
    for (int c = 0; c < A.dim; ++c) {
      std::size_t next = name.find('_', pos);
      vals[c] = std::stoi(name.substr(pos, next == std::string::npos ? next : next - pos));
      pos = next == std::string::npos ? name.size() : next + 1;
    }
    for (int c = 0; c < A.dim; ++c) p[static_cast<std::size_t>(c)] = coord(vals[c], c);
    return p;
  };
  for (const auto& e : g->edges) {
    Point a = parse_point(g->vertices[static_cast<std::size_t>(e.tail)]);
    Point b = parse_point(g->vertices[static_cast<std::size_t>(e.head)]);
    PiecewiseSmoothCurve seg = PiecewiseSmoothCurve::make(A.dim, {Segment::line(a, b)});
    links.push_back(transport_ode(A, seg, steps_per_link));
  }
  return GaugeField::make(g, A.group, std::move(links));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("loglog_slope: need paired samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]);
    double ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double u1_disc_flux(const GaugePotential& A, const Point& center, double radius) {
  // curl is affine; its disc integral is area times the value at the center.
  auto curl = A.u1_curl_2d();
  double area = (kTwoPi / 2.0) * radius * radius;
  return area * (curl[0] + curl[1] * center[0] + curl[2] * center[1]);
}

double u1_rect_flux(const GaugePotential& A, const Point& corner, double w, double h) {
  auto curl = A.u1_curl_2d();
  double cx = corner[0] + 0.5 * w, cy = corner[1] + 0.5 * h;
  return w * h * (curl[0] + curl[1] * cx + curl[2] * cy);
}

}  // namespace hol
