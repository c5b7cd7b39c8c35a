#pragma once

// Gamma: the gcd of the span of all psi_xyzs over 4-subsets of S'.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "oddsec/conic.hpp"
#include "oddsec/gcd.hpp"
#include "oddsec/tangent.hpp"

namespace oddsec {

/// Minimum |S'| (anchor included) for the psi pipeline: four working points
/// build a curve, and the anchor fixes the scaling.
inline constexpr std::size_t kMinPsiPoints = 5;

struct GammaReport {
  HomPoly gamma;
  std::vector<std::array<std::uint32_t, 4>> quadruples;
  std::vector<HomPoly> psi;        // plane coordinates, parallel to quadruples
  std::vector<HomPoly> quotients;  // psi = gamma * phi
  bool degree_too_high = false;
  bool pair_witness = false;
  int gcd_iterations = 0;
  std::vector<std::uint32_t> line_components;  // line ids whose form divides gamma
  std::optional<HomPoly> conic;                // candidate conic (given or fitted)
  bool conic_divides_gamma = false;
  bool conic_divides_all_psi = false;
  std::size_t s_prime_on_gamma = 0;
};

/// Every psi for 4-subsets of S' (sorted order), in plane coordinates.
inline std::vector<std::pair<std::array<std::uint32_t, 4>, HomPoly>> all_psi(const ScaledTangentSystem& sys) {
  const auto& sp = sys.s_prime();
  std::vector<std::pair<std::array<std::uint32_t, 4>, HomPoly>> out;
  for (std::size_t a = 0; a < sp.size(); ++a)
    for (std::size_t b = a + 1; b < sp.size(); ++b)
      for (std::size_t c = b + 1; c < sp.size(); ++c)
        for (std::size_t d = c + 1; d < sp.size(); ++d) {
          const auto curve = build_psi(sys, sp[a], sp[b], sp[c], sp[d]);
          out.emplace_back(curve.xyzs, psi_in_plane(curve));
        }
  return out;
}

/// Computes Gamma and looks for line and conic components. When no conic is
/// supplied, one is fitted through the first five points of S' on V(Gamma).
inline GammaReport compute_gamma(const ScaledTangentSystem& sys, int trials, std::uint64_t seed,
                                 std::optional<HomPoly> candidate_conic = std::nullopt) {
  if (sys.s_prime().size() + 1 < kMinPsiPoints)
    throw Error(Errc::InvalidParams, "the psi pipeline needs |S'| >= 5");
  const Plane& plane = sys.plane();
  GammaReport rep;
  for (auto& [q4, p] : all_psi(sys)) {
    rep.quadruples.push_back(q4);
    rep.psi.push_back(std::move(p));
  }
  const auto span = gcd_of_span(rep.psi, trials, seed);
  rep.gamma = span.gcd;
  rep.degree_too_high = span.degree_too_high;
  rep.pair_witness = span.pair_witness;
  rep.gcd_iterations = span.iterations;
  for (const auto& p : rep.psi) {
    auto quo = p.divide(rep.gamma);
    if (!quo) throw Error(Errc::InvalidParams, "gamma does not divide a psi");
    rep.quotients.push_back(std::move(*quo));
  }
  if (rep.gamma.degree() >= 1)
    for (std::uint32_t l = 0; l < plane.size(); ++l)
      if (HomPoly::linear(plane.field_ptr(), plane.line(l).c).divides(rep.gamma)) rep.line_components.push_back(l);

  std::vector<Point> on_gamma;
  for (auto x : sys.s_prime())
    if (rep.gamma.evaluate(sys.vec(x)).v == 0) on_gamma.push_back(plane.point(x));
  rep.s_prime_on_gamma = on_gamma.size();

  if (candidate_conic) {
    rep.conic = std::move(candidate_conic);
  } else if (rep.gamma.degree() >= 2 && on_gamma.size() >= 5) {
    try {
      rep.conic = fit_conic(plane, std::span<const Point>(on_gamma.data(), 5)).form;
    } catch (const Error&) {
      rep.conic.reset();
    }
  }
  if (rep.conic) {
    rep.conic_divides_gamma = rep.conic->divides(rep.gamma);
    rep.conic_divides_all_psi = true;
    for (const auto& p : rep.psi) rep.conic_divides_all_psi = rep.conic_divides_all_psi && rep.conic->divides(p);
  }
  return rep;
}

}  // namespace oddsec
