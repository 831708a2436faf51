#include "belief/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "belief/errors.hpp"

namespace blc {

namespace {

// Base rates this close to the 0/1 corners take the limit-parameter paths.
constexpr double kEpsLimit = 1e-12;

// The symmetric operators evaluate their algebraically symmetric formulas in
// one canonical argument order, which makes commutativity bitwise exact.
void canonicalize(const Opinion*& x, const Opinion*& y) {
  const auto key = [](const Opinion& w) {
    return std::array<double, 4>{w.b, w.d, w.u, w.a};
  };
  if (key(*y) < key(*x)) std::swap(x, y);
}

double checked_limit(const std::optional<double>& value, double lo, double hi,
                     const char* name) {
  if (*value < lo || *value > hi || !std::isfinite(*value)) {
    fail(ErrorKind::OutOfRange, std::string(name) + " limit out of range");
  }
  return *value;
}

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += "; ";
    out += part;
  }
  return out;
}

// Codivision preconditions, mirrored from divisibility_check.
Divisibility codivisibility_check(const Opinion& x, const Opinion& y) {
  Divisibility result;
  const auto deny = [&](std::string msg) {
    result.ok = false;
    result.failures.push_back(std::move(msg));
  };
  if (y.b >= 1.0 - kEpsDogmatic) {
    deny("b_y < 1 violated (codivision by truth)");
    return result;
  }
  if (x.a + kEpsPre < y.a) deny("a_x >= a_y violated");
  if (x.b + kEpsPre < y.b) deny("b_x >= b_y violated");
  if (std::fabs(x.a - y.a) <= kEpsLimit) {
    if (y.a >= 1.0 - kEpsLimit) {
      deny("a_y < 1 violated");
      return result;
    }
    const double ratio = (1.0 - x.b) / (1.0 - y.b);
    if (std::fabs(x.d - ratio * y.d) > kEpsPre) {
      deny("d_x = (1-b_x)d_y/(1-b_y) violated (equal base rates)");
    }
    if (std::fabs(x.u - ratio * y.u) > kEpsPre) {
      deny("u_x = (1-b_x)u_y/(1-b_y) violated (equal base rates)");
    }
    return result;
  }
  // Cross-multiplied so the checks stay total.
  if (x.d * x.a * (1.0 - y.a) * (1.0 - y.b) + kEpsPre <
      (1.0 - x.a) * y.a * (1.0 - x.b) * y.d) {
    deny("d_x >= (1-a_x)a_y(1-b_x)d_y/(a_x(1-a_y)(1-b_y)) violated");
  }
  if (x.u * x.a * (1.0 - y.b) + kEpsPre < y.a * (1.0 - x.b) * y.u) {
    deny("u_x >= a_y(1-b_x)u_y/(a_x(1-b_y)) violated");
  }
  return result;
}

// ---- triangle geometry -----------------------------------------------------
//
// The opinion triangle is handled in the affine chart (b, u); the disbelief
// vertex sits at the origin. All constructions below use only incidence,
// parallels and ratios along lines, which the chart preserves.

struct P2 {
  double b;
  double u;
};

// Meets the line through p with direction dir and the line of constant
// disbelief b + u = s.
P2 meet_disbelief_line(P2 p, P2 dir, double s) {
  const double t = (s - p.b - p.u) / (dir.b + dir.u);
  return P2{p.b + t * dir.b, p.u + t * dir.u};
}

double cross(P2 lhs, P2 rhs) { return lhs.b * rhs.u - lhs.u * rhs.b; }

// Closed-triangle membership with barycentric tolerance.
bool in_triangle(P2 q, P2 v0, P2 v1, P2 v2, double tol) {
  const P2 e0{v0.b - v2.b, v0.u - v2.u};
  const P2 e1{v1.b - v2.b, v1.u - v2.u};
  const P2 w{q.b - v2.b, q.u - v2.u};
  const double den = cross(e0, e1);
  if (std::fabs(den) < 1e-15) {
    // Degenerate triangle: fall back to membership on the segment hull.
    const auto on_segment = [&](P2 a, P2 b) {
      const P2 ab{b.b - a.b, b.u - a.u};
      const P2 aq{q.b - a.b, q.u - a.u};
      if (std::fabs(cross(ab, aq)) > tol) return false;
      const double len2 = ab.b * ab.b + ab.u * ab.u;
      if (len2 < 1e-30) {
        return std::fabs(aq.b) <= tol && std::fabs(aq.u) <= tol;
      }
      const double t = (aq.b * ab.b + aq.u * ab.u) / len2;
      return t >= -tol && t <= 1.0 + tol;
    };
    return on_segment(v0, v1) || on_segment(v0, v2) || on_segment(v1, v2);
  }
  const double l0 = cross(w, e1) / den;
  const double l1 = cross(e0, w) / den;
  const double l2 = 1.0 - l0 - l1;
  return l0 >= -tol && l1 >= -tol && l2 >= -tol;
}

}  // namespace

Opinion add(const Opinion& wx, const Opinion& wy) {
  const Opinion* px = &wx;
  const Opinion* py = &wy;
  canonicalize(px, py);
  const Opinion& x = *px;
  const Opinion& y = *py;
  const double asum = x.a + y.a;
  if (asum > 1.0 + kEpsAdd) {
    fail(ErrorKind::BaseRateOverflow,
         "a_x + a_y = " + std::to_string(asum) + " exceeds 1");
  }
  if (asum <= 0.0) {
    fail(ErrorKind::DegenerateBaseRates, "a_x + a_y = 0");
  }
  if (x.b + y.b > 1.0 + kEpsAdd) {
    fail(ErrorKind::PreconditionViolated, "b_x + b_y exceeds 1");
  }
  const double e = expectation(x) + expectation(y);
  if (e > 1.0 + kEpsAdd) {
    fail(ErrorKind::PreconditionViolated,
         "E(x) + E(y) exceeds 1; the operands cannot model disjoint events");
  }
  const double b = x.b + y.b;
  const double d = (x.a * (x.d - y.b) + y.a * (y.d - x.b)) / asum;
  const double u = (x.a * x.u + y.a * y.u) / asum;
  // Out-of-range components are clipped onto the triangle along the
  // constant-expectation line, not rejected: valid conditionals routinely
  // add up to a disbelief overshoot well beyond rounding dust.
  if (b >= 0.0 && b <= 1.0 && d >= 0.0 && d <= 1.0 && u >= 0.0 && u <= 1.0) {
    return make_opinion(b, d, u, std::min(asum, 1.0));
  }
  return clip(e, std::min(asum, 1.0), u);
}

Opinion subtract(const Opinion& x, const Opinion& y) {
  if (std::fabs(x.a - y.a) <= kEpsLimit) {
    fail(ErrorKind::EqualBaseRates,
         "subtraction needs a_y < a_x; equal base rates force x = y");
  }
  if (y.a > x.a) {
    fail(ErrorKind::PreconditionViolated, "a_y < a_x violated");
  }
  if (y.b > x.b + kEpsPre) {
    fail(ErrorKind::PreconditionViolated, "b_y <= b_x violated");
  }
  if (x.d > y.d + kEpsPre) {
    fail(ErrorKind::PreconditionViolated, "d_x <= d_y violated");
  }
  if (y.a * y.u > x.a * x.u + kEpsPre) {
    fail(ErrorKind::PreconditionViolated, "a_y*u_y <= a_x*u_x violated");
  }
  if (x.a * (x.d + y.b) + kEpsPre < y.a * (1.0 + y.b - x.b - y.u)) {
    fail(ErrorKind::PreconditionViolated,
         "a_x(d_x + b_y) >= a_y(1 + b_y - b_x - u_y) violated");
  }
  const double adiff = x.a - y.a;
  const double b = x.b - y.b;
  const double d =
      (x.a * (x.d + y.b) - y.a * (1.0 + y.b - x.b - y.u)) / adiff;
  const double u = (x.a * x.u - y.a * y.u) / adiff;
  const double e = expectation(x) - expectation(y);
  return finalize_opinion(b, d, u, adiff, e);
}

Opinion multiply(const Opinion& wx, const Opinion& wy, const LimitParams& lp) {
  const double e = expectation(wx) * expectation(wy);
  if (wx.a >= 1.0 - kEpsLimit && wy.a >= 1.0 - kEpsLimit) {
    // Limit path; eta keeps the original argument roles.
    if (!lp.eta) {
      fail(ErrorKind::MissingLimitParam,
           "a_x = a_y = 1: eta (limit of (1-a_x)/(1-a_y)) required");
    }
    const double eta =
        checked_limit(lp.eta, 0.0, std::numeric_limits<double>::max(), "eta");
    const double b = wx.b * wy.b + (eta * wx.b * wy.u + wx.u * wy.b) / (eta + 1.0);
    const double d = wx.d + wy.d - wx.d * wy.d;
    const double u = wx.u * wy.u + (wx.b * wy.u + eta * wx.u * wy.b) / (eta + 1.0);
    return finalize_opinion(b, d, u, 1.0, e);
  }
  const Opinion* px = &wx;
  const Opinion* py = &wy;
  canonicalize(px, py);
  const Opinion& x = *px;
  const Opinion& y = *py;
  const double a = x.a * y.a;
  const double denom = 1.0 - a;
  const double b =
      x.b * y.b +
      ((1.0 - x.a) * y.a * x.b * y.u + x.a * (1.0 - y.a) * x.u * y.b) / denom;
  const double d = x.d + y.d - x.d * y.d;
  const double u =
      x.u * y.u + ((1.0 - y.a) * x.b * y.u + (1.0 - x.a) * x.u * y.b) / denom;
  return finalize_opinion(b, d, u, a, e);
}

Opinion comultiply(const Opinion& wx, const Opinion& wy,
                   const LimitParams& lp) {
  const double ex = expectation(wx);
  const double ey = expectation(wy);
  const double e = ex + ey - ex * ey;
  if (wx.a <= kEpsLimit && wy.a <= kEpsLimit) {
    if (!lp.zeta) {
      fail(ErrorKind::MissingLimitParam,
           "a_x = a_y = 0: zeta (limit of a_x/a_y) required");
    }
    const double zeta = checked_limit(
        lp.zeta, 0.0, std::numeric_limits<double>::max(), "zeta");
    const double b = wx.b + wy.b - wx.b * wy.b;
    const double d =
        wx.d * wy.d + (zeta * wx.d * wy.u + wx.u * wy.d) / (zeta + 1.0);
    const double u =
        wx.u * wy.u + (wx.d * wy.u + zeta * wx.u * wy.d) / (zeta + 1.0);
    return finalize_opinion(b, d, u, 0.0, e);
  }
  const Opinion* px = &wx;
  const Opinion* py = &wy;
  canonicalize(px, py);
  const Opinion& x = *px;
  const Opinion& y = *py;
  const double a = x.a + y.a - x.a * y.a;
  const double b = x.b + y.b - x.b * y.b;
  const double d =
      x.d * y.d +
      (x.a * (1.0 - y.a) * x.d * y.u + (1.0 - x.a) * y.a * x.u * y.d) / a;
  const double u = x.u * y.u + (y.a * x.d * y.u + x.a * x.u * y.d) / a;
  return finalize_opinion(b, d, u, a, e);
}

Divisibility divisibility_check(const Opinion& x, const Opinion& y) {
  Divisibility result;
  const auto deny = [&](std::string msg) {
    result.ok = false;
    result.failures.push_back(std::move(msg));
  };
  if (y.d >= 1.0 - kEpsDogmatic) {
    deny("d_y < 1 violated (division by falsehood)");
    return result;
  }
  if (!(y.a > kEpsLimit)) {
    deny("a_y > 0 violated");
    return result;
  }
  if (x.a > y.a + kEpsPre) deny("a_x <= a_y violated");
  if (x.d + kEpsPre < y.d) deny("d_x >= d_y violated");
  if (std::fabs(x.a - y.a) <= kEpsLimit) {
    const double ratio = (1.0 - x.d) / (1.0 - y.d);
    if (std::fabs(x.b - ratio * y.b) > kEpsPre) {
      deny("b_x = (1-d_x)b_y/(1-d_y) violated (equal base rates)");
    }
    if (std::fabs(x.u - ratio * y.u) > kEpsPre) {
      deny("u_x = (1-d_x)u_y/(1-d_y) violated (equal base rates)");
    }
    return result;
  }
  // Cross-multiplied so the checks stay total.
  if (x.b * (1.0 - x.a) * y.a * (1.0 - y.d) + kEpsPre <
      x.a * (1.0 - y.a) * (1.0 - x.d) * y.b) {
    deny("b_x >= a_x(1-a_y)(1-d_x)b_y/((1-a_x)a_y(1-d_y)) violated");
  }
  if (x.u * (1.0 - x.a) * (1.0 - y.d) + kEpsPre <
      (1.0 - y.a) * (1.0 - x.d) * y.u) {
    deny("u_x >= (1-a_y)(1-d_x)u_y/((1-a_x)(1-d_y)) violated");
  }
  return result;
}

Opinion divide(const Opinion& x, const Opinion& y, const LimitParams& lp) {
  if (y.d >= 1.0 - kEpsDogmatic) {
    fail(ErrorKind::DivisionByFalse, "d_y = 1");
  }
  const Divisibility check = divisibility_check(x, y);
  if (!check.ok) {
    fail(ErrorKind::NotDivisible, joined(check.failures));
  }
  const double ex = expectation(x);
  const double ey = expectation(y);
  const double e = ex / ey;
  if (std::fabs(x.a - y.a) <= kEpsLimit) {
    const double ratio = (1.0 - x.d) / (1.0 - y.d);
    const double gamma = lp.gamma ? checked_limit(lp.gamma, 0.0, 1.0, "gamma")
                                  : y.b / (y.b + y.a * y.u);
    const double d = (x.d - y.d) / (1.0 - y.d);
    return finalize_opinion(gamma * ratio, d, (1.0 - gamma) * ratio, 1.0, e);
  }
  const double adiff = y.a - x.a;
  const double b = y.a * ex / (adiff * ey) -
                   x.a * (1.0 - x.d) / (adiff * (1.0 - y.d));
  const double d = (x.d - y.d) / (1.0 - y.d);
  const double u = y.a * (1.0 - x.d) / (adiff * (1.0 - y.d)) -
                   y.a * ex / (adiff * ey);
  return finalize_opinion(b, d, u, x.a / y.a, e);
}

Opinion codivide(const Opinion& x, const Opinion& y, const LimitParams& lp) {
  if (y.b >= 1.0 - kEpsDogmatic) {
    fail(ErrorKind::CodivisionByTrue, "b_y = 1");
  }
  const Divisibility check = codivisibility_check(x, y);
  if (!check.ok) {
    fail(ErrorKind::NotCodivisible, joined(check.failures));
  }
  const double ex = expectation(x);
  const double ey = expectation(y);
  const double e = (ex - ey) / (1.0 - ey);
  if (std::fabs(x.a - y.a) <= kEpsLimit) {
    const double ratio = (1.0 - x.b) / (1.0 - y.b);
    const double delta = lp.delta ? checked_limit(lp.delta, 0.0, 1.0, "delta")
                                  : y.d / (y.d + (1.0 - y.a) * y.u);
    const double b = (x.b - y.b) / (1.0 - y.b);
    return finalize_opinion(b, delta * ratio, (1.0 - delta) * ratio, 0.0, e);
  }
  const double adiff = x.a - y.a;
  const double fx = x.d + (1.0 - x.a) * x.u;  // 1 - E(x)
  const double fy = y.d + (1.0 - y.a) * y.u;  // 1 - E(y)
  const double b = (x.b - y.b) / (1.0 - y.b);
  const double d = (1.0 - y.a) * fx / (adiff * fy) -
                   (1.0 - x.a) * (1.0 - x.b) / (adiff * (1.0 - y.b));
  const double u = (1.0 - y.a) * (1.0 - x.b) / (adiff * (1.0 - y.b)) -
                   (1.0 - y.a) * fx / (adiff * fy);
  return finalize_opinion(b, d, u, adiff / (1.0 - y.a), e);
}

namespace product_frame {

const Frame& frame() {
  static const Frame instance(
      std::vector<std::string>{"xy", "xny", "nxy", "nxny"});
  return instance;
}

Subset xy() { return Subset{0b0001}; }
Subset x_not_y() { return Subset{0b0010}; }
Subset not_x_y() { return Subset{0b0100}; }
Subset not_x_not_y() { return Subset{0b1000}; }
Subset x_row() { return Subset{0b0011}; }
Subset not_x_row() { return Subset{0b1100}; }
Subset y_col() { return Subset{0b0101}; }
Subset not_y_col() { return Subset{0b1010}; }
Subset all() { return Subset{0b1111}; }
Subset conjunction() { return xy(); }
Subset disjunction() { return Subset{0b0111}; }

}  // namespace product_frame

Bba cartesian_product_bba(const Opinion& wx, const Opinion& wy) {
  namespace pf = product_frame;
  std::map<Subset, double> masses;
  masses[pf::xy()] = wx.b * wy.b;
  masses[pf::x_not_y()] = wx.b * wy.d;
  masses[pf::x_row()] = wx.b * wy.u;
  masses[pf::not_x_y()] = wx.d * wy.b;
  masses[pf::not_x_not_y()] = wx.d * wy.d;
  masses[pf::not_x_row()] = wx.d * wy.u;
  masses[pf::y_col()] = wx.u * wy.b;
  masses[pf::not_y_col()] = wx.u * wy.d;
  masses[pf::all()] = wx.u * wy.u;
  return Bba(pf::frame(), std::move(masses));
}

bool product_range_contains(const Opinion& wx, double a_y,
                            const Opinion& candidate) {
  if (!(a_y >= 0.0 && a_y <= 1.0)) {
    fail(ErrorKind::OutOfRange, "a_y outside [0,1]");
  }
  if (wx.b == 0.0 && wx.u == 0.0) {
    // dogmatic falsehood: every product is the disbelief vertex
    return candidate.b <= 1e-9 && candidate.u <= 1e-9;
  }
  const double e = expectation(wx);
  const double s = 1.0 - wx.d;  // constant-disbelief line through wx
  const P2 a_pt{e, 0.0};
  const P2 c_pt{a_y * e, 0.0};
  // Direction of the line BC, where B is the projector's meeting point with
  // the zero-belief line. A base rate of zero sends B to infinity straight
  // down the chart, so the direction degenerates to vertical.
  P2 dir{0.0, -1.0};
  if (wx.a > kEpsLimit) {
    const P2 b_pt{0.0, wx.u + wx.b / wx.a};
    dir = P2{c_pt.b - b_pt.b, c_pt.u - b_pt.u};
  }
  const P2 corner_d = meet_disbelief_line(c_pt, dir, s);
  const P2 corner_e = meet_disbelief_line(a_pt, dir, s);
  return in_triangle(P2{candidate.b, candidate.u}, corner_d, corner_e,
                     P2{0.0, 0.0}, 1e-9);
}

bool division_range_contains(const Opinion& wy, double a_x,
                             const Opinion& wx) {
  if (!(a_x >= 0.0 && a_x <= 1.0)) {
    fail(ErrorKind::OutOfRange, "a_x outside [0,1]");
  }
  if (!(wy.a > kEpsLimit)) return false;
  if (wy.d >= 1.0 - kEpsDogmatic) return false;  // division by falsehood
  const double ey = expectation(wy);
  const double s = 1.0 - wy.d;  // constant-disbelief line through wy
  const P2 a_pt{ey, 0.0};
  const P2 b_pt{0.0, wy.u + wy.b / wy.a};
  const P2 dir{a_x, -1.0};  // projector direction for atomicity a_x
  const P2 corner_d = meet_disbelief_line(a_pt, dir, s);
  const P2 corner_e = meet_disbelief_line(b_pt, dir, s);
  return in_triangle(P2{wx.b, wx.u}, corner_d, corner_e, P2{0.0, 0.0}, 1e-9);
}

}  // namespace blc
