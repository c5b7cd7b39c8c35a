#pragma once

// Named verification suites over the canonical constructions.

#include <algorithm>
#include <array>
#include <chrono>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "oddsec/construct.hpp"
#include "oddsec/gamma.hpp"
#include "oddsec/io.hpp"
#include "oddsec/tangent.hpp"

namespace oddsec {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"szero", "segre", "identities", "gfunc", "box",
                                              "psi",   "perm",  "double",     "gsconcur", "segret"};
  return names;
}

struct SuiteResult {
  std::string name;
  CheckResult result;
  std::size_t cases = 0;
  bool skipped = false;
  Json extra = Json::object();
  double seconds = 0;
};

/// Conic plus one external point (t = 1) or two (t = 2) at a fixed odd q,
/// with its profile, classification and scaled system built once.
class VerifyContext {
 public:
  VerifyContext(std::shared_ptr<const Plane> plane, unsigned t = 1) : plane_(std::move(plane)), t_(t) {
    if (!plane_->field().odd()) throw Error(Errc::InvalidParams, "verification suites need odd q");
    if (t_ < 1 || t_ > 2) throw Error(Errc::InvalidParams, "t must be 1 or 2");
    one_ = std::make_unique<PointSet>(construct(*plane_, {ConstructionKind::conic_plus_external, 0}));
    prof_ = secant_profile(*one_);
    cls_ = classify(*one_, prof_, 1);
    if (cls_.s_prime.size() >= 1) sys_ = std::make_unique<ScaledTangentSystem>(build_system_any_e(*one_, prof_, cls_.s_prime));
  }

  const Plane& plane() const { return *plane_; }
  const PointSet& set() const { return *one_; }
  const SecantProfile& profile() const { return prof_; }
  const Classification& classification() const { return cls_; }
  const ScaledTangentSystem& system() const { return *sys_; }
  unsigned t() const { return t_; }

  /// The external point added to the conic.
  std::uint32_t external() const {
    const auto conic = conic_points(*plane_);
    for (auto id : one_->ids())
      if (!std::binary_search(conic.begin(), conic.end(), id)) return id;
    throw Error(Errc::InvalidParams, "construction has no external point");
  }

  SuiteResult run(const std::string& name, int trials, std::uint64_t seed) const {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = dispatch(name, trials, seed);
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

 private:
  using Quad = std::array<std::uint32_t, 4>;

  std::vector<Quad> quadruples() const {
    const auto& sp = sys_->s_prime();
    std::vector<Quad> out;
    for (std::size_t a = 0; a < sp.size(); ++a)
      for (std::size_t b = a + 1; b < sp.size(); ++b)
        for (std::size_t c = b + 1; c < sp.size(); ++c)
          for (std::size_t d = c + 1; d < sp.size(); ++d) out.push_back({sp[a], sp[b], sp[c], sp[d]});
    return out;
  }

  SuiteResult dispatch(const std::string& name, int trials, std::uint64_t seed) const {
    SuiteResult r;
    if (name == "szero") return szero(trials, seed);
    if (name == "gsconcur") return gsconcur();
    if (name == "segret") return segret();
    if (!sys_) return skipped();
    const auto& sp = sys_->s_prime();
    const bool psi_ok = sp.size() + 1 >= kMinPsiPoints;
    if (name == "segre") {
      r.result.merge(check_scaling(*sys_));
      r.result.merge(check_segre(*sys_));
      r.cases = sp.size() * sp.size();
    } else if (name == "identities") {
      if (sp.size() < 4) return skipped();
      for (const auto& q4 : quadruples())
        for (int i = 0; i < 4; ++i) {
          r.result.merge(check_identities(*sys_, q4[(i + 1) % 4], q4[(i + 2) % 4], q4[(i + 3) % 4], q4[i]));
          ++r.cases;
        }
    } else if (name == "gfunc") {
      if (sp.size() < 4) return skipped();
      for (auto w : sp)
        for (auto x : sp)
          for (auto y : sp)
            for (auto z : sp) {
              if (w == x || w == y || w == z || x == y || x == z || y == z) continue;
              r.result.merge(check_gfunc(*sys_, w, x, y, z));
              ++r.cases;
            }
    } else if (name == "box") {
      for (auto x : sp)
        for (auto y : sp)
          for (auto z : sp) {
            if (x == y || x == z || y == z) continue;
            r.result.merge(check_box(*sys_, x, y, z));
            ++r.cases;
          }
    } else if (name == "psi") {
      if (!psi_ok) return skipped();
      for (const auto& q4 : quadruples()) {
        r.result.merge(check_psi_vanishing(*sys_, build_psi(*sys_, q4[0], q4[1], q4[2], q4[3])));
        ++r.cases;
      }
    } else if (name == "perm") {
      if (!psi_ok) return skipped();
      bool proportional_all = true;
      for (const auto& q4 : quadruples()) {
        const auto rep = check_permutation_invariance(*sys_, q4, true);
        r.result.merge(rep.result);
        proportional_all = proportional_all && rep.all_proportional;
        r.cases += 24;
      }
      r.extra["all_permutations_proportional"] = proportional_all;
    } else if (name == "double") {
      if (!psi_ok) return skipped();
      for (const auto& q4 : quadruples()) {
        const auto c = build_psi(*sys_, q4[0], q4[1], q4[2], q4[3]);
        for (auto u : q4) {
          const auto d = double_point_check(*sys_, c, u);
          if (!d.ok())
            r.result.fail({q4[0], q4[1], q4[2], q4[3], u},
                          "point " + std::to_string(u) + ": multiplicity " + std::to_string(d.multiplicity) +
                              (d.cone_matches ? "" : ", tangent cone differs"));
          ++r.cases;
        }
        r.result.merge(check_quartic_terms(*sys_, c));
        ++r.cases;
      }
    } else {
      throw Error(Errc::InvalidParams, "unknown suite '" + name + "'");
    }
    return r;
  }

  static SuiteResult skipped() {
    SuiteResult r;
    r.skipped = true;
    r.extra["reason"] = "|S'| below the psi threshold";
    return r;
  }

  SuiteResult szero(int trials, std::uint64_t seed) const {
    SuiteResult r;
    std::size_t max_s0 = 0;
    auto check = [&](const PointSet& s) {
      const auto rep = verify_szero(s);
      max_s0 = std::max(max_s0, rep.s0_size);
      if (!rep.bound_holds) r.result.fail(s.ids(), "|S_0| = " + std::to_string(rep.s0_size));
      if (!rep.product_identity) {
        const auto& f = *rep.failing_frame;
        r.result.fail({f[0], f[1], f[2]}, "product identity fails");
      }
      ++r.cases;
    };
    check(*one_);
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> all(plane_->size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    for (int i = 0; i < trials; ++i) {
      std::vector<std::uint32_t> pick;
      std::sample(all.begin(), all.end(), std::back_inserter(pick), plane_->q() + 2, rng);
      check(PointSet(*plane_, pick));
    }
    r.extra["max_s0"] = max_s0;
    return r;
  }

  SuiteResult gsconcur() const {
    SuiteResult r;
    const auto conic_ids = conic_points(*plane_);
    std::vector<std::uint32_t> on;
    for (auto x : cls_.s43)
      if (std::binary_search(conic_ids.begin(), conic_ids.end(), x)) on.push_back(x);
    if (on.size() < 3) return skipped();
    const auto conic = standard_conic(plane_->field_ptr());
    const Point ext = plane_->point(external());
    std::size_t special = 0;
    for (std::size_t a = 0; a < on.size(); ++a)
      for (std::size_t b = a + 1; b < on.size(); ++b)
        for (std::size_t c = b + 1; c < on.size(); ++c) {
          const auto rep = gsconcur_check(*one_, prof_, conic, {on[a], on[b], on[c]});
          ++r.cases;
          if (rep.special_case) {
            ++special;
            if (!rep.passed || rep.third_point != plane_->id(ext))
              r.result.fail({on[a], on[b], on[c]}, "special case: third point is not on ker g_z");
          } else if (!rep.passed || *rep.concurrency != ext) {
            r.result.fail({on[a], on[b], on[c]}, "g-lines not concurrent at the external point");
          }
        }
    r.extra["special_cases"] = special;
    return r;
  }

  SuiteResult segret() const {
    SuiteResult r;
    const PointSet s = t_ == 1 ? *one_ : construct(*plane_, {ConstructionKind::conic_plus_two_external, 0});
    const auto prof = secant_profile(s);
    const auto cls = classify(s, prof, t_);
    if (cls.s_prime.size() < 2) return skipped();
    for (auto e : cls.s_prime) {
      try {
        r.result = check_segre_general(s, prof, t_, cls.s_prime, e);
        r.cases = (cls.s_prime.size() - 1) * (cls.s_prime.size() - 1);
        r.extra["t"] = t_;
        r.extra["e"] = e;
        r.extra["s_prime"] = cls.s_prime.size();
        return r;
      } catch (const Error& err) {
        if (err.code() != Errc::ScalingDegenerate) throw;
      }
    }
    throw Error(Errc::ScalingDegenerate, "no choice of e gives a well-defined scaling");
  }

  std::shared_ptr<const Plane> plane_;
  unsigned t_;
  std::unique_ptr<PointSet> one_;
  SecantProfile prof_;
  Classification cls_;
  std::unique_ptr<ScaledTangentSystem> sys_;
};

inline Json suite_json(const SuiteResult& r, bool timings) {
  Json j;
  j["suite"] = r.name;
  j["passed"] = r.result.passed;
  j["skipped"] = r.skipped;
  j["cases"] = r.cases;
  if (!r.result.passed) j["counterexample"] = {{"points", r.result.counterexample}, {"detail", r.result.detail}};
  if (!r.extra.empty()) j["extra"] = r.extra;
  if (timings) j["seconds"] = r.seconds;
  return j;
}

}  // namespace oddsec
