#pragma once

// Points, lines and frames of PG(2,q).
//
// Point and Line are normalized (first nonzero coordinate 1). FixedVector is
// a specific representative vector and is never renormalized: the scaled
// tangent forms depend on the representative, so the two are kept apart.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "oddsec/field.hpp"

namespace oddsec {

using Vec3 = std::array<Elem, 3>;

struct FixedVector {
  Vec3 c{};
  friend bool operator==(const FixedVector&, const FixedVector&) = default;
};

struct Point {
  Vec3 c{};
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct Line {
  Vec3 c{};
  friend auto operator<=>(const Line&, const Line&) = default;
};

inline bool is_zero(const Vec3& v) { return v[0].v == 0 && v[1].v == 0 && v[2].v == 0; }

/// Scales v so that its first nonzero coordinate is 1.
inline Vec3 normalized(const Field& f, Vec3 v) {
  for (int i = 0; i < 3; ++i) {
    if (v[i].v != 0) {
      const Elem s = f.inv(v[i]);
      for (int j = i; j < 3; ++j) v[j] = f.mul(v[j], s);
      return v;
    }
  }
  throw Error(Errc::InvalidParams, "zero vector has no projective point");
}

inline Elem dot(const Field& f, const Vec3& a, const Vec3& b) {
  return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

inline Vec3 cross(const Field& f, const Vec3& a, const Vec3& b) {
  return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
          f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
          f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

inline Vec3 scaled(const Field& f, const Vec3& v, Elem s) {
  return {f.mul(v[0], s), f.mul(v[1], s), f.mul(v[2], s)};
}

inline Elem det3(const Field& f, const Vec3& a, const Vec3& b, const Vec3& c) { return dot(f, a, cross(f, b, c)); }

inline Elem det3(const Field& f, const FixedVector& a, const FixedVector& b, const FixedVector& c) {
  return det3(f, a.c, b.c, c.c);
}

inline Point to_point(const Field& f, const Vec3& v) { return Point{normalized(f, v)}; }
inline Point to_point(const Field& f, const FixedVector& v) { return Point{normalized(f, v.c)}; }
inline FixedVector representative(const Point& p) { return FixedVector{p.c}; }

inline bool incident(const Field& f, const Point& p, const Line& l) { return dot(f, p.c, l.c).v == 0; }

inline Line line_through(const Field& f, const Point& a, const Point& b) {
  if (a == b) throw Error(Errc::EqualPoints, "a line needs two distinct points");
  return Line{normalized(f, cross(f, a.c, b.c))};
}

inline Point meet(const Field& f, const Line& a, const Line& b) {
  if (a == b) throw Error(Errc::EqualPoints, "equal lines have no unique meet");
  return Point{normalized(f, cross(f, a.c, b.c))};
}

/// 3x3 matrix over GF(q), row-major.
struct Mat3 {
  std::array<std::array<Elem, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.m[i][i] = Field::one();
    return r;
  }

  /// Matrix whose columns are a, b, c.
  static Mat3 from_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
      r.m[i][0] = a[i];
      r.m[i][1] = b[i];
      r.m[i][2] = c[i];
    }
    return r;
  }

  friend bool operator==(const Mat3&, const Mat3&) = default;
};

inline Vec3 apply(const Field& f, const Mat3& a, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = dot(f, a.m[i], v);
  return r;
}

inline Mat3 multiply(const Field& f, const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Elem s = Field::zero();
      for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(a.m[i][k], b.m[k][j]));
      r.m[i][j] = s;
    }
  return r;
}

inline Elem det(const Field& f, const Mat3& a) { return det3(f, a.m[0], a.m[1], a.m[2]); }

inline Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

/// Adjugate divided by the determinant.
inline Mat3 inverse(const Field& f, const Mat3& a) {
  const Elem d = det(f, a);
  if (d.v == 0) throw Error(Errc::DegenerateFrame, "singular matrix");
  const Elem dinv = f.inv(d);
  // Rows of the inverse are cross products of columns of a.
  const Mat3 t = transpose(a);
  Mat3 r;
  const Vec3 c0 = cross(f, t.m[1], t.m[2]);
  const Vec3 c1 = cross(f, t.m[2], t.m[0]);
  const Vec3 c2 = cross(f, t.m[0], t.m[1]);
  r.m[0] = scaled(f, c0, dinv);
  r.m[1] = scaled(f, c1, dinv);
  r.m[2] = scaled(f, c2, dinv);
  return r;
}

/// A basis {x, y, z} of the underlying vector space, given by fixed vectors.
class ProjFrame {
 public:
  ProjFrame(const Field& f, const FixedVector& x, const FixedVector& y, const FixedVector& z)
      : basis_{x, y, z}, to_plane_(Mat3::from_columns(x.c, y.c, z.c)) {
    if (det(f, to_plane_).v == 0) throw Error(Errc::DegenerateFrame, "frame vectors are dependent");
    to_frame_ = inverse(f, to_plane_);
  }

  const FixedVector& x() const noexcept { return basis_[0]; }
  const FixedVector& y() const noexcept { return basis_[1]; }
  const FixedVector& z() const noexcept { return basis_[2]; }
  const FixedVector& basis(int i) const noexcept { return basis_[i]; }
  /// Columns are the basis vectors: plane = M * frame.
  const Mat3& to_plane_matrix() const noexcept { return to_plane_; }
  const Mat3& to_frame_matrix() const noexcept { return to_frame_; }

  Vec3 to_frame(const Field& f, const Vec3& v) const { return apply(f, to_frame_, v); }
  Vec3 from_frame(const Field& f, const Vec3& c) const { return apply(f, to_plane_, c); }

 private:
  std::array<FixedVector, 3> basis_;
  Mat3 to_plane_;
  Mat3 to_frame_;
};

/// Exact vector coordinates of v in the frame basis.
inline FixedVector to_frame(const Field& f, const FixedVector& v, const ProjFrame& frame) {
  return FixedVector{frame.to_frame(f, v.c)};
}

inline FixedVector from_frame(const Field& f, const FixedVector& c, const ProjFrame& frame) {
  return FixedVector{frame.from_frame(f, c.c)};
}

/// An element of PGL(3,q) given by a normalized invertible matrix.
class Collineation {
 public:
  Collineation(const Field& f, Mat3 m) {
    if (det(f, m).v == 0) throw Error(Errc::InvalidParams, "collineation matrix is singular");
    for (int i = 0; i < 9; ++i) {
      const Elem x = m.m[i / 3][i % 3];
      if (x.v != 0) {
        const Elem s = f.inv(x);
        for (auto& row : m.m)
          for (auto& c : row) c = f.mul(c, s);
        break;
      }
    }
    m_ = m;
  }

  const Mat3& matrix() const noexcept { return m_; }
  Point operator()(const Field& f, const Point& p) const { return to_point(f, apply(f, m_, p.c)); }

  Collineation then(const Field& f, const Collineation& next) const { return {f, multiply(f, next.m_, m_)}; }

  template <class Rng>
  static Collineation random(const Field& f, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
    while (true) {
      Mat3 m;
      for (auto& row : m.m)
        for (auto& c : row) c = Elem{pick(rng)};
      if (det(f, m).v != 0) return {f, m};
    }
  }

  friend bool operator==(const Collineation&, const Collineation&) = default;

 private:
  Mat3 m_;
};

/// PG(2,q) with dense ids and incidence tables.
///
/// Ids follow enumeration order: (1,a,b) -> a*q+b, (0,1,b) -> q^2+b,
/// (0,0,1) -> q^2+q, with a, b the element indices. Lines use the same ids
/// on their coefficient triples.
class Plane {
 public:
  explicit Plane(FieldPtr field) : field_(std::move(field)) {
    const std::uint32_t q = field_->q();
    n_ = q * q + q + 1;
    points_on_.assign(static_cast<std::size_t>(n_) * (q + 1), 0);
    lines_through_.assign(static_cast<std::size_t>(n_) * (q + 1), 0);
    std::vector<std::uint32_t> fill(n_, 0);
    for (std::uint32_t l = 0; l < n_; ++l) {
      const Vec3 lc = triple(l);
      for (std::uint32_t pt = 0; pt < n_; ++pt) {
        if (dot(*field_, lc, triple(pt)).v == 0) {
          points_on_[static_cast<std::size_t>(l) * (q + 1) + fill[l]++] = pt;
        }
      }
    }
    std::fill(fill.begin(), fill.end(), 0);
    for (std::uint32_t l = 0; l < n_; ++l)
      for (auto pt : points_on(l)) lines_through_[static_cast<std::size_t>(pt) * (q + 1) + fill[pt]++] = l;
  }

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const Field& field() const noexcept { return *field_; }
  std::uint32_t q() const noexcept { return field_->q(); }
  std::uint32_t size() const noexcept { return n_; }

  Point point(std::uint32_t id) const { return Point{triple(id)}; }
  Line line(std::uint32_t id) const { return Line{triple(id)}; }
  std::uint32_t id(const Point& p) const { return index(p.c); }
  std::uint32_t id(const Line& l) const { return index(l.c); }
  std::uint32_t point_id(const Vec3& v) const { return index(normalized(*field_, v)); }

  std::span<const std::uint32_t> points_on(std::uint32_t line_id) const {
    return {points_on_.data() + static_cast<std::size_t>(line_id) * (q() + 1), q() + 1};
  }
  std::span<const std::uint32_t> lines_through(std::uint32_t point_id) const {
    return {lines_through_.data() + static_cast<std::size_t>(point_id) * (q() + 1), q() + 1};
  }

  bool incident(std::uint32_t point_id, std::uint32_t line_id) const {
    return dot(*field_, triple(point_id), triple(line_id)).v == 0;
  }

  std::uint32_t join(std::uint32_t a, std::uint32_t b) const {
    return id(line_through(*field_, point(a), point(b)));
  }

  bool collinear(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    return det3(*field_, triple(a), triple(b), triple(c)).v == 0;
  }

  std::vector<Point> enumerate_points() const {
    std::vector<Point> r;
    r.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) r.push_back(point(i));
    return r;
  }

  std::vector<Line> enumerate_lines() const {
    std::vector<Line> r;
    r.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) r.push_back(line(i));
    return r;
  }

  /// |PGL(3,q)| = q^3 (q^3-1)(q^2-1).
  std::uint64_t group_order() const noexcept {
    const std::uint64_t q = this->q();
    return q * q * q * (q * q * q - 1) * (q * q - 1);
  }

 private:
  Vec3 triple(std::uint32_t id) const {
    const std::uint32_t q = field_->q();
    if (id < q * q) return {Field::one(), Elem{id / q}, Elem{id % q}};
    if (id < q * q + q) return {Field::zero(), Field::one(), Elem{id - q * q}};
    return {Field::zero(), Field::zero(), Field::one()};
  }

  std::uint32_t index(const Vec3& v) const {
    const std::uint32_t q = field_->q();
    if (v[0] == Field::one()) return v[1].v * q + v[2].v;
    if (v[0].v == 0 && v[1] == Field::one()) return q * q + v[2].v;
    if (v[0].v == 0 && v[1].v == 0 && v[2] == Field::one()) return q * q + q;
    throw Error(Errc::InvalidParams, "triple is not normalized");
  }

  FieldPtr field_;
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> points_on_;
  std::vector<std::uint32_t> lines_through_;
};

}  // namespace oddsec
