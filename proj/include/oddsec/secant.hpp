#pragma once

// Secant statistics of point sets: intersection counts, odd secants, the
// weight function and the S_0 / S_{4/3} / S_t classification.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <boost/rational.hpp>

#include "oddsec/plane.hpp"

namespace oddsec {

using Rational = boost::rational<std::int64_t>;

/// A set of points of one plane, sorted by id, with optional representative overrides.
class PointSet {
 public:
  PointSet(const Plane& plane, std::vector<std::uint32_t> ids) : plane_(&plane), ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
      throw Error(Errc::InvalidParams, "duplicate point in set");
    for (auto id : ids_)
      if (id >= plane.size()) throw Error(Errc::InvalidParams, "point id out of range");
  }

  static PointSet from_points(const Plane& plane, const std::vector<Point>& pts) {
    std::vector<std::uint32_t> ids;
    for (const auto& p : pts) ids.push_back(plane.id(Point{normalized(plane.field(), p.c)}));
    return {plane, std::move(ids)};
  }

  const Plane& plane() const noexcept { return *plane_; }
  const Field& field() const noexcept { return plane_->field(); }
  const std::vector<std::uint32_t>& ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool contains(std::uint32_t id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

  /// The representative used for point id: an override, else the normalized triple.
  FixedVector fixed_vector(std::uint32_t id) const {
    if (auto it = fixed_.find(id); it != fixed_.end()) return it->second;
    return representative(plane_->point(id));
  }

  void set_fixed_vector(std::uint32_t id, const FixedVector& v) {
    if (!contains(id)) throw Error(Errc::InvalidParams, "override for a point outside the set");
    if (is_zero(v.c) || plane_->point_id(v.c) != id) throw Error(Errc::InvalidParams, "vector does not represent the point");
    fixed_[id] = v;
  }

 private:
  const Plane* plane_;
  std::vector<std::uint32_t> ids_;
  std::map<std::uint32_t, FixedVector> fixed_;
};

struct SecantProfile {
  std::vector<std::uint32_t> count;              // |l ∩ S| per line id
  std::uint32_t odd_count = 0;                    // o(S)
  std::map<std::uint32_t, std::uint32_t> spectrum;  // intersection size -> number of lines
};

inline SecantProfile secant_profile(const PointSet& s) {
  const Plane& plane = s.plane();
  SecantProfile prof;
  prof.count.assign(plane.size(), 0);
  for (auto p : s.ids())
    for (auto l : plane.lines_through(p)) ++prof.count[l];
  for (auto c : prof.count) {
    ++prof.spectrum[c];
    if (c & 1) ++prof.odd_count;
  }
  return prof;
}

/// Count of lines through point id meeting S in exactly k points.
inline std::uint32_t lines_with_count(const Plane& plane, const SecantProfile& prof, std::uint32_t id, std::uint32_t k) {
  std::uint32_t n = 0;
  for (auto l : plane.lines_through(id)) n += prof.count[l] == k;
  return n;
}

struct WeightTable {
  std::vector<std::uint32_t> ids;
  std::vector<Rational> weight;  // parallel to ids

  Rational total() const {
    Rational t(0);
    for (const auto& w : weight) t += w;
    return t;
  }
  Rational of(std::uint32_t id) const {
    const auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) throw Error(Errc::InvalidParams, "point not in weight table");
    return weight[it - ids.begin()];
  }
};

/// w(x) = sum of 1/|l ∩ S| over the odd secants l through x.
inline WeightTable weights(const PointSet& s, const SecantProfile& prof) {
  WeightTable t;
  t.ids = s.ids();
  for (auto x : s.ids()) {
    Rational w(0);
    for (auto l : s.plane().lines_through(x))
      if (prof.count[l] & 1) w += Rational(1, prof.count[l]);
    t.weight.push_back(w);
  }
  return t;
}

struct Classification {
  std::vector<std::uint32_t> s0;   // only bisecants through x
  std::vector<std::uint32_t> s43;  // one tangent, one 3-secant, q-1 bisecants
  std::vector<std::uint32_t> st;   // at most one tangent
  std::vector<std::vector<std::uint32_t>> parts;  // S_43 grouped by shared 3-secant
  std::vector<std::uint32_t> s_prime;
};

namespace detail {

/// Greedy subset (in the given order) whose pairs are joined by bisecants of S.
inline std::vector<std::uint32_t> bisecant_transversal(const Plane& plane, const SecantProfile& prof,
                                                       const std::vector<std::uint32_t>& candidates) {
  std::vector<std::uint32_t> kept;
  for (auto x : candidates) {
    bool ok = true;
    for (auto y : kept)
      if (prof.count[plane.join(x, y)] != 2) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(x);
  }
  return kept;
}

}  // namespace detail

/// Classification of S. For t = 1, S' takes the lowest id of each 3-secant
/// part of S_43; for t > 1 it is drawn from the points of S_t on exactly one
/// tangent. Either way, points are then dropped greedily (lowest id kept
/// first) until every pair is joined by a bisecant.
inline Classification classify(const PointSet& s, const SecantProfile& prof, unsigned t = 1) {
  const Plane& plane = s.plane();
  const std::uint32_t q = plane.q();
  Classification c;
  std::map<std::uint32_t, std::vector<std::uint32_t>> by_secant;
  std::vector<std::uint32_t> one_tangent;
  for (auto x : s.ids()) {
    std::uint32_t tangents = 0, bisecants = 0, three = 0, three_line = 0;
    for (auto l : plane.lines_through(x)) {
      switch (prof.count[l]) {
        case 1: ++tangents; break;
        case 2: ++bisecants; break;
        case 3:
          ++three;
          three_line = l;
          break;
        default: break;
      }
    }
    if (bisecants == q + 1) c.s0.push_back(x);
    if (tangents == 1 && three == 1 && bisecants == q - 1) {
      c.s43.push_back(x);
      by_secant[three_line].push_back(x);
    }
    if (tangents <= 1) c.st.push_back(x);
    if (tangents == 1) one_tangent.push_back(x);
  }
  for (auto& [line, pts] : by_secant) c.parts.push_back(pts);
  std::sort(c.parts.begin(), c.parts.end());
  std::vector<std::uint32_t> candidates;
  if (t <= 1) {
    for (const auto& part : c.parts) candidates.push_back(part.front());
    std::sort(candidates.begin(), candidates.end());
  } else {
    candidates = one_tangent;
  }
  c.s_prime = detail::bisecant_transversal(plane, prof, candidates);
  return c;
}

inline Classification classify(const PointSet& s, unsigned t = 1) { return classify(s, secant_profile(s), t); }

struct SzeroReport {
  std::size_t s0_size = 0;
  bool bound_holds = false;      // |S_0| <= 2
  bool product_identity = true;  // prod -s2/s3 = -1 on every checked frame
  std::size_t frames_checked = 0;
  std::optional<std::array<std::uint32_t, 3>> failing_frame;
};

/// For x in S_0 and y != z in S \ {x}, the lines xs for s in S \ {x,y,z}
/// are exactly the lines through x other than xy and xz, so in the basis
/// {x,y,z} the product of -s2/s3 over those s is -1.
inline bool szero_product_identity(const PointSet& s, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  const Field& f = s.field();
  const ProjFrame frame(f, s.fixed_vector(x), s.fixed_vector(y), s.fixed_vector(z));
  Elem prod = Field::one();
  for (auto w : s.ids()) {
    if (w == x || w == y || w == z) continue;
    const Vec3 c = frame.to_frame(f, s.fixed_vector(w).c);
    if (c[2].v == 0) return false;
    prod = f.mul(prod, f.div(f.neg(c[1]), c[2]));
  }
  return prod == f.neg(Field::one());
}

/// Checks |S_0| <= 2 for a (q+2)-set, plus the product identity on frames
/// through each S_0 point (all frames, or only the first when all_frames is false).
inline SzeroReport verify_szero(const PointSet& s, bool all_frames = true) {
  const Plane& plane = s.plane();
  if (s.size() != plane.q() + 2) throw Error(Errc::SizeMismatch, "verify_szero needs |S| = q + 2");
  const auto prof = secant_profile(s);
  SzeroReport r;
  std::vector<std::uint32_t> s0;
  for (auto x : s.ids())
    if (lines_with_count(plane, prof, x, 2) == plane.q() + 1) s0.push_back(x);
  r.s0_size = s0.size();
  r.bound_holds = s0.size() <= 2;
  if (!plane.field().odd()) return r;
  for (auto x : s0) {
    bool done = false;
    for (auto y : s.ids()) {
      if (y == x || done) continue;
      for (auto z : s.ids()) {
        if (z == x || z <= y) continue;
        ++r.frames_checked;
        if (!szero_product_identity(s, x, y, z)) {
          r.product_identity = false;
          if (!r.failing_frame) r.failing_frame = std::array{x, y, z};
        }
        if (!all_frames) {
          done = true;
          break;
        }
      }
    }
  }
  return r;
}

}  // namespace oddsec
