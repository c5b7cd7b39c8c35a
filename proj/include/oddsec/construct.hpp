#pragma once

// Canonical point sets: conic plus external points, arcs and hyperovals.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "oddsec/conic.hpp"
#include "oddsec/secant.hpp"

namespace oddsec {

enum class ConstructionKind { conic_plus_external, conic_plus_two_external, arc, hyperoval };

struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::conic_plus_external;
  std::uint32_t size = 0;  // arc only
};

/// Points of the conic X2^2 = X1 X3, by id.
inline std::vector<std::uint32_t> conic_points(const Plane& plane) {
  return vanishing_set(plane, standard_conic(plane.field_ptr()));
}

/// Tangent lines of a point set: lines meeting it exactly once.
inline std::vector<std::uint32_t> tangent_lines(const Plane& plane, const std::vector<std::uint32_t>& ids) {
  const auto prof = secant_profile(PointSet(plane, ids));
  std::vector<std::uint32_t> out;
  for (std::uint32_t l = 0; l < plane.size(); ++l)
    if (prof.count[l] == 1) out.push_back(l);
  return out;
}

/// Points off the conic lying on exactly two of its tangents, by id.
inline std::vector<std::uint32_t> external_points(const Plane& plane) {
  const auto conic = conic_points(plane);
  std::vector<std::uint32_t> on_tangents(plane.size(), 0);
  for (auto l : tangent_lines(plane, conic))
    for (auto p : plane.points_on(l)) ++on_tangents[p];
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 0; p < plane.size(); ++p)
    if (on_tangents[p] == 2 && !std::binary_search(conic.begin(), conic.end(), p)) out.push_back(p);
  return out;
}

/// The point on every tangent of the conic (q even).
inline std::uint32_t nucleus(const Plane& plane) {
  const auto conic = conic_points(plane);
  const auto tangents = tangent_lines(plane, conic);
  for (std::uint32_t p = 0; p < plane.size(); ++p) {
    bool all = true;
    for (auto l : tangents) all = all && plane.incident(p, l);
    if (all) return p;
  }
  throw Error(Errc::InvalidParams, "conic has no nucleus");
}

inline PointSet construct(const Plane& plane, const ConstructionSpec& spec) {
  const std::uint32_t q = plane.q();
  auto conic = conic_points(plane);
  switch (spec.kind) {
    case ConstructionKind::conic_plus_external: {
      if (q % 2 == 0) throw Error(Errc::InvalidParams, "conic plus external point needs odd q");
      conic.push_back(external_points(plane).front());
      return {plane, conic};
    }
    case ConstructionKind::conic_plus_two_external: {
      if (q % 2 == 0) throw Error(Errc::InvalidParams, "conic plus external points needs odd q");
      const auto ext = external_points(plane);
      const auto tangents = tangent_lines(plane, conic);
      const std::uint32_t p1 = ext.front();
      for (auto p2 : ext) {
        if (p2 == p1) continue;
        if (std::binary_search(tangents.begin(), tangents.end(), plane.join(p1, p2))) continue;
        conic.push_back(p1);
        conic.push_back(p2);
        return {plane, conic};
      }
      throw Error(Errc::InvalidParams, "no second external point off the tangents of the first");
    }
    case ConstructionKind::arc: {
      const std::uint32_t max = q % 2 ? q + 1 : q + 2;
      if (spec.size < 1 || spec.size > max) throw Error(Errc::InvalidParams, "arc size out of range");
      if (q % 2 == 0) conic.push_back(nucleus(plane));
      std::sort(conic.begin(), conic.end());
      conic.resize(spec.size);
      return {plane, conic};
    }
    case ConstructionKind::hyperoval: {
      if (q % 2) throw Error(Errc::InvalidParams, "hyperovals need even q");
      conic.push_back(nucleus(plane));
      return {plane, conic};
    }
  }
  throw Error(Errc::InvalidParams, "unknown construction");
}

}  // namespace oddsec
