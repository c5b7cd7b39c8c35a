#pragma once

#include <array>
#include <span>

#include "oddsec/linalg.hpp"
#include "oddsec/poly.hpp"

namespace oddsec {

struct ConicFit {
  HomPoly form;           // nonzero, vanishes on the five points
  std::size_t rank = 0;   // rank of the symmetric matrix (q odd), 3 iff nondegenerate
  bool degenerate() const noexcept { return rank < 3; }
};

/// Rank of the symmetric matrix of a quadratic form; needs q odd.
inline std::size_t conic_rank(const HomPoly& c) {
  const Field& f = c.field();
  if (!f.odd()) throw Error(Errc::InvalidParams, "conic rank needs odd q");
  const Elem half = f.inv(f.from_int(2));
  auto at = [&](int i, int j) {
    Mono m{0, 0, 0};
    ++m[i];
    ++m[j];
    const Elem v = c.coeff(m);
    return i == j ? v : f.mul(v, half);
  };
  Matrix a(3, std::vector<Elem>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = at(i, j);
  return rank(f, a);
}

/// The conic through five points, no four collinear.
inline ConicFit fit_conic(const Plane& plane, std::span<const Point> pts) {
  const Field& f = plane.field();
  if (pts.size() != 5) throw Error(Errc::InvalidParams, "fit_conic takes five points");
  bool all_collinear = true;
  for (std::size_t i = 2; i < pts.size(); ++i)
    all_collinear = all_collinear && det3(f, pts[0].c, pts[1].c, pts[i].c).v == 0;
  if (all_collinear) throw Error(Errc::AllCollinear, "the five points are collinear");
  static constexpr std::array<Mono, 6> monos{{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};
  Matrix a;
  for (const auto& p : pts) {
    std::vector<Elem> row;
    for (const auto& m : monos) row.push_back(HomPoly::monomial(plane.field_ptr(), m).evaluate(p.c));
    a.push_back(std::move(row));
  }
  const auto ns = nullspace(f, a, 6);
  if (ns.size() != 1) throw Error(Errc::UnderDetermined, "conic through the points is not unique");
  HomPoly form(plane.field_ptr(), 2);
  for (std::size_t i = 0; i < 6; ++i) form.set(monos[i], ns[0][i]);
  form = form.monic();
  return ConicFit{form, f.odd() ? conic_rank(form) : 0};
}

/// Tangent line of the curve V(c) at a simple point u: the gradient.
inline std::optional<Line> tangent_at(const HomPoly& c, const Vec3& u) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Mono m{0, 0, 0};
    m[i] = 1;
    g[i] = c.hasse(m).evaluate(u);
  }
  if (is_zero(g)) return std::nullopt;
  return Line{normalized(c.field(), g)};
}

/// X2^2 - X1 X3, whose points are (1, t, t^2) and (0, 0, 1).
inline HomPoly standard_conic(const FieldPtr& field) {
  HomPoly c(field, 2);
  c.set({0, 2, 0}, Field::one());
  c.set({1, 0, 1}, field->neg(Field::one()));
  return c;
}

}  // namespace oddsec
