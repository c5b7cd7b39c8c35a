#pragma once

// The scaled tangent system (Segre's tangent relation) on a set S' of weight-4/3 points.
//
// For x in S', f_x is the linear form of the tangent at x and g_x the form
// of the 3-secant at x. Fixing e in S', every f_x and g_x (x != e) is
// rescaled so that f_x(e) = f_e(x) and g_x(e) = g_e(x), all evaluations
// taken at the fixed vectors of the points. The b-forms, the sextic curves
// psi and the checks below all live on top of that scaling.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oddsec/conic.hpp"
#include "oddsec/poly.hpp"
#include "oddsec/secant.hpp"

namespace oddsec {

/// Coefficient triple of a linear form; scaling is meaningful, so it is never normalized.
struct LinearForm {
  Vec3 a{};

  Elem operator()(const Field& f, const Vec3& v) const { return dot(f, a, v); }
  Elem operator()(const Field& f, const FixedVector& v) const { return dot(f, a, v.c); }
  LinearForm scaled(const Field& f, Elem s) const { return {oddsec::scaled(f, a, s)}; }
  HomPoly poly(const FieldPtr& field) const { return HomPoly::linear(field, a); }
  Line kernel(const Field& f) const { return Line{normalized(f, a)}; }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Outcome of an identity check, with the offending points when it fails.
struct CheckResult {
  bool passed = true;
  std::vector<std::uint32_t> counterexample;
  std::string detail;

  explicit operator bool() const noexcept { return passed; }

  void fail(std::vector<std::uint32_t> pts, std::string why) {
    if (passed) {
      counterexample = std::move(pts);
      detail = std::move(why);
    }
    passed = false;
  }
  void merge(const CheckResult& o) {
    if (!o.passed) fail(o.counterexample, o.detail);
  }
};

class ScaledTangentSystem {
  template <class M>
  static auto& at(M& m, std::uint32_t x) {
    auto it = m.find(x);
    if (it == m.end()) throw Error(Errc::InvalidParams, "point " + std::to_string(x) + " is not in S'");
    return it->second;
  }

 public:
  const PointSet& set() const noexcept { return *set_; }
  const Plane& plane() const noexcept { return set_->plane(); }
  const Field& field() const noexcept { return set_->field(); }
  const FieldPtr& field_ptr() const noexcept { return set_->plane().field_ptr(); }
  /// The working points: S' without the scaling anchor e.
  const std::vector<std::uint32_t>& s_prime() const noexcept { return s_prime_; }
  std::uint32_t e() const noexcept { return e_; }

  const FixedVector& vec(std::uint32_t x) const { return at(vec_, x); }
  const LinearForm& f(std::uint32_t x) const { return at(f_, x); }
  const LinearForm& g(std::uint32_t x) const { return at(g_, x); }

  /// Test hook: replace one form, e.g. to break a scaling on purpose.
  void override_f(std::uint32_t x, const LinearForm& form) { at(f_, x) = form; }
  void override_g(std::uint32_t x, const LinearForm& form) { at(g_, x) = form; }

 private:

  friend ScaledTangentSystem build_system(const PointSet&, const SecantProfile&, std::vector<std::uint32_t>,
                                          std::uint32_t, bool);

  const PointSet* set_ = nullptr;
  std::vector<std::uint32_t> s_prime_;
  std::uint32_t e_ = 0;
  std::map<std::uint32_t, FixedVector> vec_;
  std::map<std::uint32_t, LinearForm> f_;
  std::map<std::uint32_t, LinearForm> g_;
};

/// Builds the scaled system. e is the scaling anchor: the scaled identities
/// hold on S' \ {e} only (at e the anchor condition forces the opposite sign),
/// so s_prime() excludes it. With scale = false the forms are left as the
/// normalized line coordinates.
inline ScaledTangentSystem build_system(const PointSet& s, const SecantProfile& prof, std::vector<std::uint32_t> s_prime,
                                        std::uint32_t e, bool scale = true) {
  const Plane& plane = s.plane();
  const Field& fld = plane.field();
  if (!fld.odd()) throw Error(Errc::InvalidParams, "the tangent system needs odd q");
  if (std::find(s_prime.begin(), s_prime.end(), e) == s_prime.end())
    throw Error(Errc::InvalidParams, "e must belong to S'");
  ScaledTangentSystem sys;
  sys.set_ = &s;
  sys.e_ = e;
  for (auto x : s_prime)
    if (x != e) sys.s_prime_.push_back(x);
  for (auto x : s_prime) {
    if (!s.contains(x)) throw Error(Errc::InvalidParams, "S' point outside S");
    std::optional<std::uint32_t> tangent, three;
    std::uint32_t bisecants = 0, tangents = 0, threes = 0;
    for (auto l : plane.lines_through(x)) {
      const auto c = prof.count[l];
      if (c == 1) {
        tangent = l;
        ++tangents;
      } else if (c == 2) {
        ++bisecants;
      } else if (c == 3) {
        three = l;
        ++threes;
      }
    }
    if (tangents != 1 || threes != 1 || bisecants != plane.q() - 1)
      throw Error(Errc::NotS43, "point " + std::to_string(x) + " is not on exactly one tangent and one 3-secant");
    sys.vec_[x] = s.fixed_vector(x);
    sys.f_[x] = LinearForm{plane.line(*tangent).c};
    sys.g_[x] = LinearForm{plane.line(*three).c};
  }
  if (!scale) return sys;
  const FixedVector& ve = sys.vec_[e];
  for (auto x : s_prime) {
    if (x == e) continue;
    const FixedVector& vx = sys.vec_[x];
    for (auto* forms : {&sys.f_, &sys.g_}) {
      const Elem at_e = (*forms)[x](fld, ve);
      const Elem from_e = (*forms)[e](fld, vx);
      if (at_e.v == 0 || from_e.v == 0)
        throw Error(Errc::ScalingDegenerate,
                    "e=" + std::to_string(e) + " lies on a kernel at x=" + std::to_string(x) + " or vice versa");
      (*forms)[x] = (*forms)[x].scaled(fld, fld.div(from_e, at_e));
    }
  }
  return sys;
}

/// Tries every e in S' in order and returns the first non-degenerate system.
inline ScaledTangentSystem build_system_any_e(const PointSet& s, const SecantProfile& prof,
                                              const std::vector<std::uint32_t>& s_prime) {
  for (auto e : s_prime) {
    try {
      return build_system(s, prof, s_prime, e);
    } catch (const Error& err) {
      if (err.code() != Errc::ScalingDegenerate) throw;
    }
  }
  throw Error(Errc::ScalingDegenerate, "no choice of e gives a well-defined scaling");
}

/// The invariants of a scaled system: kernels through x, and the e-symmetry.
inline CheckResult check_scaling(const ScaledTangentSystem& sys) {
  const Field& fld = sys.field();
  CheckResult r;
  const auto& ve = sys.vec(sys.e());
  for (auto x : sys.s_prime()) {
    const auto& vx = sys.vec(x);
    if (sys.f(x)(fld, vx).v != 0 || sys.g(x)(fld, vx).v != 0) r.fail({x}, "form does not vanish at its own point");
    if (sys.f(x)(fld, ve) != sys.f(sys.e())(fld, vx)) r.fail({x, sys.e()}, "f_x(e) != f_e(x)");
    if (sys.g(x)(fld, ve) != sys.g(sys.e())(fld, vx)) r.fail({x, sys.e()}, "g_x(e) != g_e(x)");
  }
  return r;
}

/// f_x(y) g_y(x) = -f_y(x) g_x(y) for every ordered pair of S'.
inline CheckResult check_segre(const ScaledTangentSystem& sys) {
  const Field& fld = sys.field();
  CheckResult r;
  for (auto x : sys.s_prime())
    for (auto y : sys.s_prime()) {
      const auto& vx = sys.vec(x);
      const auto& vy = sys.vec(y);
      const Elem lhs = fld.mul(sys.f(x)(fld, vy), sys.g(y)(fld, vx));
      const Elem rhs = fld.neg(fld.mul(sys.f(y)(fld, vx), sys.g(x)(fld, vy)));
      if (lhs != rhs) r.fail({x, y}, "f_x(y)g_y(x) != -f_y(x)g_x(y)");
    }
  return r;
}

struct BForm {
  HomPoly poly;
  std::uint32_t x = 0, y = 0;
};

/// b_xy = f_x g_y - g_x f_y, in plane coordinates.
inline BForm bform(const ScaledTangentSystem& sys, std::uint32_t x, std::uint32_t y) {
  const auto& field = sys.field_ptr();
  HomPoly p = sys.f(x).poly(field) * sys.g(y).poly(field) - sys.g(x).poly(field) * sys.f(y).poly(field);
  return {std::move(p), x, y};
}

/// Both identities as polynomial identities (every coefficient zero):
///   g_x b_yz + g_y b_zx + g_z b_xy = 0 and b_xs b_yz + b_ys b_zx + b_zs b_xy = 0.
inline CheckResult check_identities(const ScaledTangentSystem& sys, std::uint32_t x, std::uint32_t y, std::uint32_t z,
                                    std::uint32_t s) {
  const auto& field = sys.field_ptr();
  auto b = [&](std::uint32_t u, std::uint32_t v) { return bform(sys, u, v).poly; };
  auto g = [&](std::uint32_t u) { return sys.g(u).poly(field); };
  CheckResult r;
  const HomPoly id1 = g(x) * b(y, z) + g(y) * b(z, x) + g(z) * b(x, y);
  if (!id1.is_zero()) r.fail({x, y, z}, "g_x b_yz + g_y b_zx + g_z b_xy is not identically zero");
  const HomPoly id2 = b(x, s) * b(y, z) + b(y, s) * b(z, x) + b(z, s) * b(x, y);
  if (!id2.is_zero()) r.fail({x, y, z, s}, "b_xs b_yz + b_ys b_zx + b_zs b_xy is not identically zero");
  return r;
}

/// det(w,x,z) g_w(y) g_z(w) b_yx(w) = det(w,x,y) g_w(z) g_y(w) b_zx(w).
inline CheckResult check_gfunc(const ScaledTangentSystem& sys, std::uint32_t w, std::uint32_t x, std::uint32_t y,
                               std::uint32_t z) {
  const Field& fld = sys.field();
  const auto &vw = sys.vec(w), &vx = sys.vec(x), &vy = sys.vec(y), &vz = sys.vec(z);
  const Elem lhs = fld.mul(fld.mul(det3(fld, vw, vx, vz), sys.g(w)(fld, vy)),
                           fld.mul(sys.g(z)(fld, vw), bform(sys, y, x).poly.evaluate(vw)));
  const Elem rhs = fld.mul(fld.mul(det3(fld, vw, vx, vy), sys.g(w)(fld, vz)),
                           fld.mul(sys.g(y)(fld, vw), bform(sys, z, x).poly.evaluate(vw)));
  CheckResult r;
  if (lhs != rhs) r.fail({w, x, y, z}, "g-function identity fails");
  return r;
}

/// b_xy(z) != 0 for distinct x, y, z.
inline CheckResult check_box(const ScaledTangentSystem& sys, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  CheckResult r;
  if (bform(sys, x, y).poly.evaluate(sys.vec(z)).v == 0) r.fail({x, y, z}, "b_xy(z) = 0");
  return r;
}

/// The sextic psi_xyzs, held in the coordinates of the frame {x, y, z}.
struct PsiCurve {
  HomPoly poly;
  ProjFrame frame;
  std::array<std::uint32_t, 4> xyzs{};
  Vec3 s_coords{};
};

/// A plane form expressed in frame coordinates: Y -> L(M Y).
inline HomPoly in_frame(const Field& f, const FieldPtr& field, const LinearForm& l, const ProjFrame& frame) {
  return HomPoly::linear(field, {l(f, frame.x()), l(f, frame.y()), l(f, frame.z())});
}

inline PsiCurve build_psi(const ScaledTangentSystem& sys, std::uint32_t x, std::uint32_t y, std::uint32_t z,
                          std::uint32_t s) {
  const Field& fld = sys.field();
  const FieldPtr& field = sys.field_ptr();
  if (!fld.odd()) throw Error(Errc::InvalidParams, "psi needs odd q");
  const std::array<std::uint32_t, 4> pts{x, y, z, s};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pts[i] == pts[j]) throw Error(Errc::InvalidParams, "psi needs four distinct points");
  const ProjFrame frame(fld, sys.vec(x), sys.vec(y), sys.vec(z));
  auto b = [&](std::uint32_t u, std::uint32_t v) {
    return in_frame(fld, field, sys.f(u), frame) * in_frame(fld, field, sys.g(v), frame) -
           in_frame(fld, field, sys.g(u), frame) * in_frame(fld, field, sys.f(v), frame);
  };
  const Vec3 sc = frame.to_frame(fld, sys.vec(s).c);
  const HomPoly y1 = variable(field, 0), y2 = variable(field, 1), y3 = variable(field, 2);
  HomPoly psi = (b(x, s) * b(y, z) * y2 * y3).scaled(sc[0]);
  psi += (b(y, s) * b(z, x) * y1 * y3).scaled(sc[1]);
  psi += (b(z, s) * b(x, y) * y1 * y2).scaled(sc[2]);
  if (psi.is_zero()) throw Error(Errc::InvalidParams, "psi vanishes identically");
  return PsiCurve{std::move(psi), frame, pts, sc};
}

/// psi in plane coordinates: X -> psi(M^-1 X).
inline HomPoly psi_in_plane(const PsiCurve& c) { return c.poly.substitute(c.frame.to_frame_matrix()); }

/// V(psi) as plane point ids.
inline std::vector<std::uint32_t> psi_vanishing_set(const Plane& plane, const PsiCurve& c) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t id = 0; id < plane.size(); ++id)
    if (c.poly.evaluate(c.frame.to_frame(plane.field(), plane.point(id).c)).v == 0) out.push_back(id);
  return out;
}

/// psi vanishes at the frame coordinates of every point of S'.
inline CheckResult check_psi_vanishing(const ScaledTangentSystem& sys, const PsiCurve& c) {
  CheckResult r;
  for (auto w : sys.s_prime())
    if (c.poly.evaluate(c.frame.to_frame(sys.field(), sys.vec(w).c)).v != 0)
      r.fail({c.xyzs[0], c.xyzs[1], c.xyzs[2], c.xyzs[3], w}, "psi does not vanish at a point of S'");
  return r;
}

/// V(psi) is the same point set for all 24 orderings of {x, y, z, s}.
/// Also records whether the polynomials (in plane coordinates) were all proportional.
struct PermutationReport {
  CheckResult result;
  bool all_proportional = true;
};

inline PermutationReport check_permutation_invariance(const ScaledTangentSystem& sys, std::array<std::uint32_t, 4> q4,
                                                      bool compare_polynomials = false) {
  PermutationReport rep;
  std::sort(q4.begin(), q4.end());
  const PsiCurve base = build_psi(sys, q4[0], q4[1], q4[2], q4[3]);
  const auto v0 = psi_vanishing_set(sys.plane(), base);
  const HomPoly p0 = compare_polynomials ? psi_in_plane(base) : HomPoly{};
  auto perm = q4;
  do {
    const PsiCurve c = build_psi(sys, perm[0], perm[1], perm[2], perm[3]);
    if (psi_vanishing_set(sys.plane(), c) != v0)
      rep.result.fail({perm[0], perm[1], perm[2], perm[3]}, "V(psi) changes under permutation");
    if (compare_polynomials && !proportional(psi_in_plane(c), p0)) rep.all_proportional = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return rep;
}

struct DoublePointReport {
  std::uint32_t point = 0;
  int multiplicity = 0;
  bool cone_matches = false;      // tangent cone = c * f_u g_u with c != 0
  std::optional<Elem> cone_scalar;
  bool ok() const noexcept { return multiplicity == 2 && cone_matches; }
};

/// Multiplicity of a homogeneous form at v via Hasse derivatives (-1 for the zero form).
inline int multiplicity_at(const HomPoly& p, const Vec3& v) {
  if (p.is_zero()) return -1;
  for (int k = 0; k <= p.degree(); ++k)
    for (std::uint16_t i = 0; i <= k; ++i)
      for (std::uint16_t j = 0; i + j <= k; ++j)
        if (p.hasse({i, j, static_cast<std::uint16_t>(k - i - j)}).evaluate(v).v != 0) return k;
  return p.degree();
}

/// The degree-k Taylor term of p at v: sum over |a| = k of H^a(p)(v) Y^a.
inline HomPoly taylor_term(const HomPoly& p, const Vec3& v, int k) {
  HomPoly t(p.field_ptr(), k);
  for (std::uint16_t i = 0; i <= k; ++i)
    for (std::uint16_t j = 0; i + j <= k; ++j) {
      const Mono a{i, j, static_cast<std::uint16_t>(k - i - j)};
      t.set(a, p.hasse(a).evaluate(v));
    }
  return t;
}

/// Multiplicity of psi at u in {x, y, z, s} and its tangent cone against f_u g_u.
inline DoublePointReport double_point_check(const ScaledTangentSystem& sys, const PsiCurve& c, std::uint32_t u) {
  const Field& fld = sys.field();
  DoublePointReport rep;
  rep.point = u;
  const Vec3 uc = c.frame.to_frame(fld, sys.vec(u).c);
  rep.multiplicity = multiplicity_at(c.poly, uc);
  if (rep.multiplicity != 2) return rep;
  const HomPoly cone = taylor_term(c.poly, uc, 2);
  const HomPoly fg = in_frame(fld, sys.field_ptr(), sys.f(u), c.frame) * in_frame(fld, sys.field_ptr(), sys.g(u), c.frame);
  if (proportional(cone, fg)) {
    rep.cone_matches = true;
    rep.cone_scalar = fld.div(cone.leading_coeff(), fg.leading_coeff());
  }
  return rep;
}

/// Throws unless u is a double point with tangent cone f_u g_u.
inline DoublePointReport require_double_point(const ScaledTangentSystem& sys, const PsiCurve& c, std::uint32_t u) {
  auto rep = double_point_check(sys, c, u);
  if (rep.multiplicity != 2)
    throw Error(Errc::MultiplicityMismatch, "multiplicity " + std::to_string(rep.multiplicity) + " at point " + std::to_string(u));
  if (!rep.cone_matches) throw Error(Errc::TangentConeMismatch, "tangent cone at point " + std::to_string(u) + " is not f_u g_u");
  return rep;
}

/// Terms of psi of degree >= 4 in X_{i+1}, for the frame point at index i.
inline HomPoly high_degree_block(const HomPoly& p, int i) {
  HomPoly r(p.field_ptr(), p.degree());
  for (const auto& [m, c] : p.terms())
    if (m[i] >= 4) r.set(m, c);
  return r;
}

/// The expected X_i^4 block: 2 s_j s_k b_{..}(u) f_u g_u (g_s(u)/g_u(s)) X_i^4, with
/// (u, b-pair) = (x, zy), (y, xz), (z, yx).
inline HomPoly expected_quartic_block(const ScaledTangentSystem& sys, const PsiCurve& c, int i) {
  const Field& fld = sys.field();
  const FieldPtr& field = sys.field_ptr();
  const auto [x, y, z, s] = c.xyzs;
  const std::array<std::uint32_t, 3> frame_pts{x, y, z};
  const std::array<std::pair<std::uint32_t, std::uint32_t>, 3> bpair{{{z, y}, {x, z}, {y, x}}};
  const std::uint32_t u = frame_pts[i];
  const Elem sj = c.s_coords[(i + 1) % 3], sk = c.s_coords[(i + 2) % 3];
  const Elem bval = bform(sys, bpair[i].first, bpair[i].second).poly.evaluate(sys.vec(u));
  const Elem ratio = fld.div(sys.g(s)(fld, sys.vec(u)), sys.g(u)(fld, sys.vec(s)));
  const Elem k = fld.mul(fld.mul(fld.from_int(2), fld.mul(sj, sk)), fld.mul(bval, ratio));
  Mono m{0, 0, 0};
  m[i] = 4;
  return (in_frame(fld, field, sys.f(u), c.frame) * in_frame(fld, field, sys.g(u), c.frame) * HomPoly::monomial(field, m))
      .scaled(k);
}

/// Every term of degree >= 4 in one variable matches the closed form.
inline CheckResult check_quartic_terms(const ScaledTangentSystem& sys, const PsiCurve& c) {
  CheckResult r;
  for (int i = 0; i < 3; ++i)
    if (!(high_degree_block(c.poly, i) == expected_quartic_block(sys, c, i)))
      r.fail({c.xyzs[0], c.xyzs[1], c.xyzs[2], c.xyzs[3]}, "X" + std::to_string(i + 1) + "^4 block differs");
  return r;
}

struct GsConcurReport {
  std::array<std::uint32_t, 3> order{};     // x, y, z after reordering
  bool special_case = false;                // line xy is the common 3-secant of x and y
  std::optional<Point> concurrency;          // meet of the three g-lines (general case)
  std::optional<Point> formula_point;        // (g_y(z)g_x(y), g_x(z)g_y(x), -g_x(y)g_y(x)) in frame {x,y,z}
  bool formula_on_kernels = false;
  std::optional<std::uint32_t> third_point;  // special case: the other point of S on ker g_x
  bool passed = false;
};

/// Concurrency of the three 3-secants at x, y, z in S_43 lying on a conic
/// whose tangents are the tangents of S.
inline GsConcurReport gsconcur_check(const PointSet& s, const SecantProfile& prof, const HomPoly& conic,
                                     std::array<std::uint32_t, 3> xyz) {
  const Plane& plane = s.plane();
  const Field& fld = plane.field();
  std::map<std::uint32_t, std::uint32_t> tangent, three;
  for (auto u : xyz) {
    if (!s.contains(u)) throw Error(Errc::HypothesisFailed, "point outside S");
    if (conic.evaluate(s.fixed_vector(u)).v != 0) throw Error(Errc::HypothesisFailed, "point off the conic");
    std::uint32_t nt = 0, n3 = 0;
    for (auto l : plane.lines_through(u)) {
      if (prof.count[l] == 1) tangent[u] = l, ++nt;
      if (prof.count[l] == 3) three[u] = l, ++n3;
    }
    if (nt != 1 || n3 != 1) throw Error(Errc::HypothesisFailed, "point not on one tangent and one 3-secant");
    const auto ct = tangent_at(conic, s.fixed_vector(u).c);
    if (!ct || plane.id(*ct) != tangent[u]) throw Error(Errc::HypothesisFailed, "conic tangent differs from the tangent of S");
  }
  GsConcurReport rep;
  // Move a pair sharing its 3-secant, if any, to the front.
  for (int r = 0; r < 3; ++r) {
    if (three[xyz[0]] == three[xyz[1]]) {
      rep.special_case = true;
      break;
    }
    std::rotate(xyz.begin(), xyz.begin() + 1, xyz.end());
  }
  rep.order = xyz;
  const auto [x, y, z] = xyz;
  auto g = [&](std::uint32_t u) { return LinearForm{plane.line(three[u]).c}; };
  if (rep.special_case) {
    for (auto w : plane.points_on(three[x]))
      if (s.contains(w) && w != x && w != y) rep.third_point = w;
    rep.passed = rep.third_point && g(z)(fld, plane.point(*rep.third_point).c).v == 0;
    return rep;
  }
  const Line lx = plane.line(three[x]), ly = plane.line(three[y]), lz = plane.line(three[z]);
  if (lx != ly) {
    const Point m = meet(fld, lx, ly);
    if (incident(fld, m, lz)) rep.concurrency = m;
  }
  const ProjFrame frame(fld, s.fixed_vector(x), s.fixed_vector(y), s.fixed_vector(z));
  const auto &vx = frame.x(), &vy = frame.y(), &vz = frame.z();
  const Vec3 coords{fld.mul(g(y)(fld, vz), g(x)(fld, vy)), fld.mul(g(x)(fld, vz), g(y)(fld, vx)),
                    fld.neg(fld.mul(g(x)(fld, vy), g(y)(fld, vx)))};
  if (!is_zero(coords)) {
    const Vec3 pv = frame.from_frame(fld, coords);
    rep.formula_point = to_point(fld, pv);
    rep.formula_on_kernels = g(x)(fld, pv).v == 0 && g(y)(fld, pv).v == 0 && g(z)(fld, pv).v == 0;
  }
  rep.passed = rep.concurrency.has_value() && rep.formula_on_kernels && rep.formula_point == rep.concurrency;
  return rep;
}

/// The system for |S| = q + t + 1: f_x is the tangent form and g_x the product
/// of the i-secant forms through x (i >= 3), each raised to the power i - 2.
struct GeneralSystem {
  unsigned t = 1;
  std::vector<std::uint32_t> s_prime;
  std::uint32_t e = 0;
  std::map<std::uint32_t, FixedVector> vec;
  std::map<std::uint32_t, HomPoly> f, g;
};

inline GeneralSystem build_general_system(const PointSet& s, const SecantProfile& prof, unsigned t,
                                          const std::vector<std::uint32_t>& s_prime, std::uint32_t e) {
  const Plane& plane = s.plane();
  const Field& fld = plane.field();
  const FieldPtr& field = plane.field_ptr();
  if (!fld.odd()) throw Error(Errc::InvalidParams, "the tangent system needs odd q");
  if (s.size() != plane.q() + t + 1) throw Error(Errc::SizeMismatch, "need |S| = q + t + 1");
  if (std::find(s_prime.begin(), s_prime.end(), e) == s_prime.end()) throw Error(Errc::InvalidParams, "e must belong to S'");
  GeneralSystem sys;
  sys.t = t;
  sys.e = e;
  for (auto x : s_prime)
    if (x != e) sys.s_prime.push_back(x);
  for (auto x : s_prime) {
    std::optional<std::uint32_t> tangent;
    std::uint32_t tangents = 0;
    HomPoly g = HomPoly::constant(field, Field::one());
    for (auto l : plane.lines_through(x)) {
      const auto c = prof.count[l];
      if (c == 1) tangent = l, ++tangents;
      if (c >= 3) g = g * HomPoly::linear(field, plane.line(l).c).pow(c - 2);
    }
    if (tangents != 1) throw Error(Errc::NotS43, "point " + std::to_string(x) + " is not on exactly one tangent");
    if (g.degree() != static_cast<int>(t)) throw Error(Errc::InvalidParams, "g_x has the wrong degree");
    sys.vec[x] = s.fixed_vector(x);
    sys.f[x] = HomPoly::linear(field, plane.line(*tangent).c);
    sys.g[x] = std::move(g);
  }
  for (std::size_t i = 0; i < s_prime.size(); ++i)
    for (std::size_t j = i + 1; j < s_prime.size(); ++j)
      if (prof.count[plane.join(s_prime[i], s_prime[j])] != 2)
        throw Error(Errc::InvalidParams, "S' points must be joined by bisecants");
  const auto& ve = sys.vec[e];
  for (auto x : s_prime) {
    if (x == e) continue;
    for (auto* forms : {&sys.f, &sys.g}) {
      const Elem at_e = (*forms)[x].evaluate(ve);
      const Elem from_e = (*forms)[e].evaluate(sys.vec[x]);
      if (at_e.v == 0 || from_e.v == 0) throw Error(Errc::ScalingDegenerate, "e lies on a kernel");
      (*forms)[x] = (*forms)[x].scaled(fld.div(from_e, at_e));
    }
  }
  return sys;
}

/// f_x(y) g_y(x) = (-1)^t f_y(x) g_x(y) for every ordered pair of S'.
inline CheckResult check_segre_general(const GeneralSystem& sys, const Field& fld) {
  CheckResult r;
  const Elem sign = sys.t % 2 ? fld.neg(Field::one()) : Field::one();
  for (auto x : sys.s_prime)
    for (auto y : sys.s_prime) {
      const auto &vx = sys.vec.at(x), &vy = sys.vec.at(y);
      const Elem lhs = fld.mul(sys.f.at(x).evaluate(vy), sys.g.at(y).evaluate(vx));
      const Elem rhs = fld.mul(sign, fld.mul(sys.f.at(y).evaluate(vx), sys.g.at(x).evaluate(vy)));
      if (lhs != rhs) r.fail({x, y}, "f_x(y)g_y(x) != (-1)^t f_y(x)g_x(y)");
    }
  return r;
}

inline CheckResult check_segre_general(const PointSet& s, const SecantProfile& prof, unsigned t,
                                       const std::vector<std::uint32_t>& s_prime, std::uint32_t e) {
  return check_segre_general(build_general_system(s, prof, t, s_prime, e), s.field());
}

}  // namespace oddsec
