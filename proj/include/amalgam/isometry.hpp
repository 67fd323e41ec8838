#pragma once

// Isometries of the upper half-plane as real 2x2 matrices with |det| = 1.
// det = +1 acts by the Mobius map z -> (az+b)/(cz+d); det = -1 acts on the
// conjugate, z -> (a zbar + b)/(c zbar + d), which covers the
// orientation-reversing isometries needed at branch-locus crossings.
// Composition is plain matrix multiplication in both cases.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

namespace amalgam {

using Complex = std::complex<double>;

constexpr double kEpsHyp = 1e-9;      // parabolic/hyperbolic trace margin
constexpr double kDetDrift = 1e-12;   // renormalize when |det|-1 exceeds this

struct NonHyperbolicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Iso {
  double a = 1, b = 0, c = 0, d = 1;

  static Iso identity() { return {}; }

  double det() const { return a * d - b * c; }
  bool orientation_preserving() const { return det() > 0; }

  // trace is only meaningful for orientation-preserving elements
  double trace() const { return a + d; }

  void renormalize() {
    double dt = std::fabs(det());
    if (std::fabs(dt - 1.0) > kDetDrift) {
      double s = 1.0 / std::sqrt(dt);
      a *= s; b *= s; c *= s; d *= s;
    }
  }

  Iso inverse() const {
    double dt = det();
    if (dt > 0) return {d, -b, -c, a};
    // det -1: inverse of z -> M zbar is z -> M' zbar with M' = adj(M) entrywise
    return {-d, b, c, -a};
  }

  Complex act(Complex z) const {
    Complex w = det() > 0 ? z : std::conj(z);
    return (a * w + b) / (c * w + d);
  }
};

inline Iso operator*(const Iso& x, const Iso& y) {
  Iso r{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d};
  r.renormalize();
  return r;
}

inline double frobenius_dist(const Iso& x, const Iso& y) {
  double da = x.a - y.a, db = x.b - y.b, dc = x.c - y.c, dd = x.d - y.d;
  return std::sqrt(da * da + db * db + dc * dc + dd * dd);
}

// distance to +-identity in PSL(2,R)
inline double identity_residual(const Iso& x) {
  Iso id = Iso::identity();
  Iso neg{-1, 0, 0, -1};
  return std::min(frobenius_dist(x, id), frobenius_dist(x, neg));
}

inline Iso translation(double t) {
  double e = std::exp(t / 2);
  return {e, 0, 0, 1 / e};
}

inline Iso rotation(double theta) {  // ccw rotation about i
  double cs = std::cos(theta / 2), sn = std::sin(theta / 2);
  return {cs, sn, -sn, cs};
}

inline Iso mirror() { return {-1, 0, 0, 1}; }   // z -> -zbar, fixes imag axis
inline Iso half_turn() { return {0, 1, -1, 0}; } // rotation by pi about i

inline double dist(Complex z, Complex w) {
  double n = std::norm(z - w);
  return std::acosh(1.0 + n / (2.0 * z.imag() * w.imag()));
}

// Boundary points of H^2, projectively: (x : w) with w = 0 meaning infinity.
struct BPoint {
  double x = 0, w = 1;
  bool at_infinity(double tol = 1e-300) const { return std::fabs(w) <= tol; }
  double value() const { return x / w; }
  void normalize() {
    double n = std::hypot(x, w);
    if (n > 0) { x /= n; w /= n; }
    if (w < 0 || (w == 0 && x < 0)) { x = -x; w = -w; }
  }
};

inline BPoint act_boundary(const Iso& g, const BPoint& p) {
  // real boundary is fixed by conjugation, so det -1 acts the same way
  BPoint r{g.a * p.x + g.b * p.w, g.c * p.x + g.d * p.w};
  r.normalize();
  return r;
}

// Angle coordinate of a boundary point on the circle R u {inf}, in (-pi, pi].
// Monotone in x/w; infinity maps to pi.
inline double boundary_angle(BPoint p) {
  p.normalize();
  return 2.0 * std::atan2(p.x, p.w);
}

// Unoriented geodesic as a real quadratic form A z zbar + B (z + zbar) + C = 0
// with B^2 - A C > 0; endpoints are the real roots.
struct Geodesic {
  double A = 0, B = 0, C = 0;

  static Geodesic through_boundary(const BPoint& p, const BPoint& q) {
    Geodesic g;
    g.A = p.w * q.w;
    g.B = -(p.x * q.w + q.x * p.w) / 2;
    g.C = p.x * q.x;
    g.scale();
    return g;
  }

  void scale() {
    double n = std::sqrt(std::max(1e-300, B * B - A * C));
    A /= n; B /= n; C /= n;
  }

  double disc() const { return B * B - A * C; }

  double eval(Complex z) const {
    return A * std::norm(z) + 2 * B * z.real() + C;
  }

  // sinh of the signed distance from z to the geodesic
  double signed_sinh_dist(Complex z) const {
    return eval(z) / (2.0 * z.imag() * std::sqrt(disc()));
  }

  std::pair<BPoint, BPoint> endpoints() const {
    if (std::fabs(A) < 1e-14) {
      BPoint inf{1, 0};
      BPoint fin{-C / (2 * B), 1};
      fin.normalize();
      return {fin, inf};
    }
    double s = std::sqrt(disc());
    BPoint p{(-B - s) / A, 1}, q{(-B + s) / A, 1};
    p.normalize(); q.normalize();
    return {p, q};
  }
};

// Geodesic through two interior points.
inline Geodesic geodesic_through(Complex p, Complex q) {
  // solve [|p|^2, 2 Re p, 1; |q|^2, 2 Re q, 1] . (A,B,C)^T = 0
  double p2 = std::norm(p), q2 = std::norm(q);
  double pr = p.real(), qr = q.real();
  Geodesic g;
  g.A = 2 * (pr - qr);
  g.B = q2 - p2;
  g.C = 2 * (p2 * qr - q2 * pr);
  if (std::fabs(g.A) < 1e-13 * (1 + std::fabs(g.B))) {
    // vertical line x = pr
    g.A = 0; g.B = 0.5; g.C = -pr;
  }
  g.scale();
  return g;
}

// inversive product; |.| < 1 crossing, = 1 tangent, > 1 disjoint
inline double inversive_product(const Geodesic& g, const Geodesic& h) {
  return (2 * g.B * h.B - g.A * h.C - h.A * g.C) /
         (2 * std::sqrt(g.disc() * h.disc()));
}

inline std::optional<Complex> intersect(const Geodesic& g, const Geodesic& h) {
  double det = g.A * h.B - h.A * g.B;
  if (std::fabs(det) < 1e-14) return std::nullopt;
  // A q + 2 B x + C = 0 with q = |z|^2
  double q = (h.C * g.B - g.C * h.B) / det;
  double x = (g.C * h.A - h.C * g.A) / (2 * det);
  double y2 = q - x * x;
  if (y2 <= 0) return std::nullopt;
  return Complex(x, std::sqrt(y2));
}

inline Geodesic act_geodesic(const Iso& g, const Geodesic& gd) {
  auto [p, q] = gd.endpoints();
  return Geodesic::through_boundary(act_boundary(g, p), act_boundary(g, q));
}

// Frame with F(i) = p and the upward imaginary axis mapped toward q.
inline Iso frame_to(Complex p, Complex q) {
  Geodesic g = geodesic_through(p, q);
  auto [u, v] = g.endpoints();
  // order endpoints so v is ahead of p in the direction of q
  auto along = [&](Complex z) {
    // coordinate increasing toward v
    if (v.at_infinity()) return std::log(z.imag());
    if (u.at_infinity()) return -std::log(z.imag());
    Complex zu = z - Complex(u.value(), 0), zv = z - Complex(v.value(), 0);
    return std::log(std::abs(zu / zv));
  };
  if (along(q) < along(p)) std::swap(u, v);
  // M0: 0 -> u, inf -> v with positive determinant
  Iso m0{v.x, u.x, v.w, u.w};
  if (m0.det() < 0) { m0.a = -m0.a; m0.c = -m0.c; }
  {
    double s = 1.0 / std::sqrt(m0.det());
    m0.a *= s; m0.b *= s; m0.c *= s; m0.d *= s;
  }
  Complex pre = m0.inverse().act(p);
  double y = pre.imag();
  Iso f = m0 * translation(std::log(y));
  return f;
}

// Arc-length coordinate along the frame's axis: for z on (or near) the axis,
// the coordinate of F^-1(z) on the imaginary axis, zero at F(i).
inline double frame_coordinate(const Iso& frame, Complex z) {
  Complex w = frame.inverse().act(z);
  return std::log(std::max(w.imag(), 1e-300));
}

// Hyperbolic classification and translation length, det +1 only.
inline bool is_hyperbolic(const Iso& g, double eps = kEpsHyp) {
  return g.orientation_preserving() && std::fabs(g.trace()) > 2.0 + eps;
}

inline double translation_length(const Iso& g, double eps = kEpsHyp) {
  if (!g.orientation_preserving())
    throw NonHyperbolicError("orientation-reversing element");
  double t = std::fabs(g.trace());
  if (t <= 2.0 + eps) throw NonHyperbolicError("trace within parabolic margin");
  return 2.0 * std::acosh(t / 2.0);
}

// Axis of a hyperbolic element, oriented from repelling to attracting fixed
// point, returned as the pair (repelling, attracting).
inline std::pair<BPoint, BPoint> axis_endpoints(const Iso& g,
                                                double eps = kEpsHyp) {
  if (!is_hyperbolic(g, eps)) throw NonHyperbolicError("no axis");
  double tr = g.trace();
  double s = std::sqrt(tr * tr - 4.0);
  // fixed points of c x^2 + (d-a) x - b = 0
  BPoint p1, p2;
  if (std::fabs(g.c) < 1e-14) {
    p1 = BPoint{1, 0};  // infinity fixed
    p2 = BPoint{g.b / (g.d - g.a), 1};
    if (std::fabs(g.d - g.a) < 1e-14) p2 = BPoint{0, 1};  // identity-ish
  } else {
    double r1 = (g.a - g.d + s) / (2 * g.c);
    double r2 = (g.a - g.d - s) / (2 * g.c);
    p1 = BPoint{r1, 1};
    p2 = BPoint{r2, 1};
  }
  p1.normalize(); p2.normalize();
  // attracting fixed point: |derivative| < 1; derivative = 1/(c x + d)^2
  auto deriv = [&](const BPoint& p) {
    if (p.at_infinity()) return 1.0 / (g.a * g.a);  // chart w = 1/z
    double q = g.c * p.value() + g.d;
    return 1.0 / (q * q);
  };
  if (deriv(p1) < 1.0) return {p2, p1};
  return {p1, p2};
}

}  // namespace amalgam
