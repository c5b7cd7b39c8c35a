#pragma once

// Canonical forms of point sets under PGL(3,q).
//
// PGL(3,q) is sharply transitive on ordered frames (four points, no three
// collinear). When S contains a frame, every g with g(S) minimal maps some
// ordered frame of S onto the standard frame, so minimizing over the
// |S|^4 ordered frames of S is enough. Frameless sets (a line plus at most
// one point) fall back to enumerating the whole group.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "oddsec/plane.hpp"

namespace oddsec {

struct CanonicalKey {
  enum class Mode { full, hash };
  Mode mode = Mode::full;
  std::vector<std::uint64_t> data;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct MinImage {
  std::vector<std::uint32_t> image;  // sorted ids of the minimal image
  std::vector<Mat3> maps;            // every M with M(image) = S, one per minimizing frame
};

namespace detail {

/// Matrix sending e1, e2, e3, (1,1,1) to the given four points.
inline std::optional<Mat3> frame_matrix(const Field& f, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Mat3 base = Mat3::from_columns(a, b, c);
  if (det(f, base).v == 0) return std::nullopt;
  const Vec3 lambda = apply(f, inverse(f, base), d);
  if (lambda[0].v == 0 || lambda[1].v == 0 || lambda[2].v == 0) return std::nullopt;
  return Mat3::from_columns(scaled(f, a, lambda[0]), scaled(f, b, lambda[1]), scaled(f, c, lambda[2]));
}

inline std::vector<std::uint32_t> image_of(const Plane& plane, const Mat3& g, std::span<const std::uint32_t> ids) {
  std::vector<std::uint32_t> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(plane.point_id(apply(plane.field(), g, plane.point(id).c)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Some ordered frame inside S, if there is one.
inline std::optional<std::array<std::uint32_t, 4>> find_frame(const Plane& plane, std::span<const std::uint32_t> ids) {
  const std::size_t n = ids.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        if (plane.collinear(ids[a], ids[b], ids[c])) continue;
        for (std::size_t d = c + 1; d < n; ++d) {
          if (plane.collinear(ids[a], ids[b], ids[d]) || plane.collinear(ids[a], ids[c], ids[d]) ||
              plane.collinear(ids[b], ids[c], ids[d]))
            continue;
          return std::array{ids[a], ids[b], ids[c], ids[d]};
        }
      }
  return std::nullopt;
}

/// Minimal image over the ordered frames of S. S must contain a frame.
inline MinImage framed_min_image(const Plane& plane, std::span<const std::uint32_t> ids) {
  const Field& f = plane.field();
  const std::size_t n = ids.size();
  std::vector<Vec3> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = plane.point(ids[i]).c;
  std::vector<char> col(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        col[(i * n + j) * n + k] = (i == j || j == k || i == k || det3(f, v[i], v[j], v[k]).v == 0) ? 1 : 0;
  auto collinear = [&](std::size_t i, std::size_t j, std::size_t k) { return col[(i * n + j) * n + k] != 0; };

  MinImage best;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (collinear(a, b, c)) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (collinear(a, b, d) || collinear(a, c, d) || collinear(b, c, d)) continue;
          const auto m = detail::frame_matrix(f, v[a], v[b], v[c], v[d]);
          const Mat3 g = inverse(f, *m);
          auto img = detail::image_of(plane, g, ids);
          if (best.image.empty() || img < best.image) {
            best.image = std::move(img);
            best.maps.assign(1, *m);
          } else if (img == best.image) {
            best.maps.push_back(*m);
          }
        }
      }
    }
  if (best.image.empty()) throw Error(Errc::InvalidParams, "set contains no frame");
  return best;
}

/// Minimal image over all of PGL(3,q), enumerated as the images of the standard frame.
inline std::vector<std::uint32_t> group_min_image(const Plane& plane, std::span<const std::uint32_t> ids) {
  const Field& f = plane.field();
  const std::uint32_t n = plane.size();
  std::vector<std::uint32_t> best;
  if (ids.empty()) return best;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      if (b == a) continue;
      for (std::uint32_t c = 0; c < n; ++c) {
        if (c == a || c == b || plane.collinear(a, b, c)) continue;
        for (std::uint32_t d = 0; d < n; ++d) {
          const auto m = detail::frame_matrix(f, plane.point(a).c, plane.point(b).c, plane.point(c).c, plane.point(d).c);
          if (!m) continue;
          auto img = detail::image_of(plane, *m, ids);
          if (best.empty() || img < best) best = std::move(img);
        }
      }
    }
  return best;
}

/// Projective invariant: the intersection spectrum plus each point's sorted
/// multiset of line intersection sizes. Equal for equivalent sets, but not
/// a complete invariant.
inline CanonicalKey invariant_key(const Plane& plane, std::span<const std::uint32_t> ids) {
  std::vector<std::uint32_t> count(plane.size(), 0);
  for (auto p : ids)
    for (auto l : plane.lines_through(p)) ++count[l];
  std::map<std::uint32_t, std::uint64_t> spectrum;
  for (auto c : count) ++spectrum[c];
  std::vector<std::vector<std::uint32_t>> per_point;
  for (auto p : ids) {
    std::vector<std::uint32_t> sub;
    for (auto l : plane.lines_through(p)) sub.push_back(count[l]);
    std::sort(sub.begin(), sub.end());
    per_point.push_back(std::move(sub));
  }
  std::sort(per_point.begin(), per_point.end());
  CanonicalKey key{CanonicalKey::Mode::hash, {}};
  key.data.push_back(ids.size());
  for (auto [k, c] : spectrum) {
    key.data.push_back(k);
    key.data.push_back(c);
  }
  for (const auto& sub : per_point) key.data.insert(key.data.end(), sub.begin(), sub.end());
  return key;
}

/// Full canonical key: equal iff the sets are projectively equivalent.
/// Throws BudgetExceeded when the number of candidate maps exceeds budget;
/// callers then fall back to invariant_key().
inline CanonicalKey canonicalize_set(const Plane& plane, std::span<const std::uint32_t> ids,
                                     std::uint64_t budget = 50'000'000) {
  std::vector<std::uint32_t> image;
  if (find_frame(plane, ids)) {
    const std::uint64_t n = ids.size();
    if (n * (n - 1) * (n - 2) * (n - 3) > budget)
      throw Error(Errc::BudgetExceeded, "too many ordered frames in a set of size " + std::to_string(n));
    image = framed_min_image(plane, ids).image;
  } else {
    if (plane.group_order() > budget)
      throw Error(Errc::BudgetExceeded, "|PGL(3," + std::to_string(plane.q()) + ")| exceeds budget");
    image = group_min_image(plane, ids);
  }
  return CanonicalKey{CanonicalKey::Mode::full, {image.begin(), image.end()}};
}

/// Canonical key when affordable, invariant key otherwise.
inline CanonicalKey canonical_or_invariant_key(const Plane& plane, std::span<const std::uint32_t> ids,
                                               std::uint64_t budget = 50'000'000) {
  try {
    return canonicalize_set(plane, ids, budget);
  } catch (const Error& e) {
    if (e.code() != Errc::BudgetExceeded) throw;
    return invariant_key(plane, ids);
  }
}

}  // namespace oddsec
