#include <gtest/gtest.h>

#include <random>

#include "oddsec/construct.hpp"
#include "oddsec/search.hpp"
#include "oracle.hpp"

using namespace oddsec;

namespace {

std::vector<oracle::Triple> triples(const Plane& plane, std::span<const std::uint32_t> ids) {
  std::vector<oracle::Triple> out;
  for (auto id : ids) {
    const auto c = plane.point(id).c;
    out.push_back({static_cast<int>(c[0].v), static_cast<int>(c[1].v), static_cast<int>(c[2].v)});
  }
  return out;
}

/// Minimum o(S) over all k-subsets by the oracle (prime q, tiny planes only).
int oracle_min(int p, int k) {
  const auto pts = oracle::projective_points(p);
  int best = 1 << 30;
  oracle::for_each_subset(static_cast<int>(pts.size()), k, [&](const std::vector<int>& idx) {
    std::vector<oracle::Triple> s;
    for (int i : idx) s.push_back(pts[i]);
    best = std::min(best, oracle::odd_secants(s, p));
  });
  return best;
}

}  // namespace

TEST(Construct, ConicPlusExternal) {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
    const Plane plane(Field::of_order(q));
    const auto s = construct(plane, {ConstructionKind::conic_plus_external, 0});
    ASSERT_EQ(s.size(), q + 2);
    EXPECT_EQ(secant_profile(s).odd_count, 2 * q - 2) << "q=" << q;
    if (plane.field().e() == 1) {
      EXPECT_EQ(oracle::odd_secants(triples(plane, s.ids()), static_cast<int>(q)), static_cast<int>(2 * q - 2));
    }
  }
}

TEST(Construct, Arcs) {
  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
    const Plane plane(Field::of_order(q));
    for (std::uint32_t k = 3; k <= q + 1; ++k) {
      const auto s = construct(plane, {ConstructionKind::arc, k});
      ASSERT_EQ(s.size(), k);
      EXPECT_EQ(odd_secants(plane, s.ids()), k * (q + 2 - k)) << "q=" << q << " k=" << k;
      if (plane.field().e() == 1) {
        EXPECT_TRUE(oracle::is_arc(triples(plane, s.ids()), static_cast<int>(q)));
      }
    }
  }
  const Plane p7(Field::of_order(7));
  EXPECT_EQ(odd_secants(p7, construct(p7, {ConstructionKind::arc, 5}).ids()), 20u);
}

TEST(Construct, HyperovalsAndErrors) {
  for (std::uint32_t q : {2u, 4u, 8u, 16u}) {
    const Plane plane(Field::of_order(q));
    const auto s = construct(plane, {ConstructionKind::hyperoval, 0});
    EXPECT_EQ(s.size(), q + 2);
    EXPECT_EQ(odd_secants(plane, s.ids()), 0u);
    EXPECT_EQ(construct(plane, {ConstructionKind::arc, q + 2}).size(), q + 2);
  }
  const Plane p4(Field::of_order(4)), p5(Field::of_order(5));
  auto code = [](const auto& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return std::optional<Errc>(e.code());
    }
    return std::optional<Errc>();
  };
  EXPECT_EQ(code([&] { (void)construct(p5, {ConstructionKind::hyperoval, 0}); }), Errc::InvalidParams);
  EXPECT_EQ(code([&] { (void)construct(p4, {ConstructionKind::conic_plus_external, 0}); }), Errc::InvalidParams);
  EXPECT_EQ(code([&] { (void)construct(p5, {ConstructionKind::arc, 7}); }), Errc::InvalidParams);
  EXPECT_EQ(code([&] { (void)construct(p5, {ConstructionKind::arc, 0}); }), Errc::InvalidParams);
}

TEST(Search, IncidenceCounterMatchesOracle) {
  const Plane plane(Field::of_order(7));
  std::mt19937_64 rng(3);
  IncidenceCounter c(plane);
  std::vector<std::uint32_t> members;
  std::uniform_int_distribution<std::uint32_t> pick(0, plane.size() - 1);
  for (int step = 0; step < 400; ++step) {
    const auto p = pick(rng);
    const auto it = std::find(members.begin(), members.end(), p);
    if (it == members.end()) {
      c.add(p);
      members.push_back(p);
    } else {
      c.remove(p);
      members.erase(it);
    }
    ASSERT_EQ(c.odd(), oracle::odd_secants(triples(plane, members), 7));
  }
}

TEST(Search, SubsetEnumeration) {
  const Plane plane(Field::of_order(3));
  std::uint64_t n = 0;
  EXPECT_TRUE(for_each_subset(plane, 5, [&](std::span<const std::uint32_t> ids, const IncidenceCounter& c) {
    ++n;
    EXPECT_EQ(static_cast<std::uint32_t>(c.odd()), odd_secants(plane, ids));
    return true;
  }));
  EXPECT_EQ(n, 1287u);
  n = 0;
  EXPECT_FALSE(for_each_subset(plane, 5, [&](std::span<const std::uint32_t>, const IncidenceCounter&) { return ++n < 10; }));
  EXPECT_EQ(n, 10u);
}

TEST(Search, ExhaustiveQ3AgreesWithOracleBothModes) {
  const Plane plane(Field::of_order(3));
  for (std::uint32_t k = 1; k <= 9; ++k) {
    const int ref = oracle_min(3, static_cast<int>(k));
    const auto off = exhaustive_min(plane, k, false);
    const auto on = exhaustive_min(plane, k, true);
    EXPECT_TRUE(off.exhaustive);
    EXPECT_TRUE(on.exhaustive);
    EXPECT_EQ(static_cast<int>(off.min_odd), ref) << "k=" << k;
    EXPECT_EQ(static_cast<int>(on.min_odd), ref) << "k=" << k;
    EXPECT_EQ(odd_secants(plane, on.witness), on.min_odd);
    EXPECT_EQ(odd_secants(plane, off.witness), off.min_odd);
    EXPECT_EQ(on.witness.size(), k);
  }
  // |S| <= q + 1: the minimum |S|(q + 2 - |S|) is met by arcs.
  EXPECT_EQ(exhaustive_min(plane, 4, false).min_odd, 4u);
  EXPECT_EQ(exhaustive_min(plane, 5, false).min_odd, 4u);
  EXPECT_EQ(exhaustive_min(plane, 5, false).sets_evaluated, 1287u);
  EXPECT_EQ(exhaustive_min(plane, 5, true).classes_visited, 2u);
}

TEST(Search, ExhaustiveQ5SymmetryRegression) {
  // Frozen values from full runs of both modes.
  const Plane plane(Field::of_order(5));
  const auto seven = exhaustive_min(plane, 7, true);
  EXPECT_TRUE(seven.exhaustive);
  EXPECT_EQ(seven.min_odd, 8u);
  EXPECT_EQ(seven.classes_visited, 21u);
  EXPECT_EQ(odd_secants(plane, seven.witness), 8u);
  const auto six = exhaustive_min(plane, 6, true);
  EXPECT_EQ(six.min_odd, 6u);
  EXPECT_TRUE(oracle::is_arc(triples(plane, six.witness), 5));
}

TEST(Search, BudgetExceededLeavesFlagUnset) {
  const Plane plane(Field::of_order(5));
  const auto r = exhaustive_min(plane, 7, false, 0.0);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_GT(r.sets_evaluated, 0u);
  EXPECT_LT(r.sets_evaluated, 2629575u);
  EXPECT_EQ(odd_secants(plane, r.witness), r.min_odd);
}

TEST(Search, LocalDeterministic) {
  const Plane plane(Field::of_order(11));
  LocalConfig cfg;
  cfg.restarts = 4;
  cfg.moves = 3000;
  cfg.seed = 77;
  const auto a = local_min(plane, 13, cfg), b = local_min(plane, 13, cfg);
  EXPECT_EQ(a.min_odd, b.min_odd);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(odd_secants(plane, a.witness), a.min_odd);
  EXPECT_EQ(a.witness.size(), 13u);
  EXPECT_FALSE(a.exhaustive);
}

TEST(Search, LocalZeroMovesReturnsStart) {
  const Plane plane(Field::of_order(7));
  LocalConfig cfg;
  cfg.restarts = 1;
  cfg.moves = 0;
  cfg.seed = 5;
  const auto r = local_min(plane, 9, cfg);
  EXPECT_EQ(r.witness.size(), 9u);
  EXPECT_EQ(static_cast<int>(r.min_odd), oracle::odd_secants(triples(plane, r.witness), 7));
  cfg.seed_with_construction = true;
  const auto seeded = local_min(plane, 9, cfg);
  EXPECT_EQ(seeded.min_odd, 12u);  // the construction itself
}

TEST(Search, LocalRecountEveryMove) {
  const Plane plane(Field::of_order(9));
  LocalConfig cfg;
  cfg.restarts = 2;
  cfg.moves = 2000;
  cfg.recount_every = 1;
  EXPECT_NO_THROW((void)local_min(plane, 11, cfg));
}

TEST(Search, LocalQ13ReachesConstructionValue) {
  const Plane plane(Field::of_order(13));
  LocalConfig cfg;
  cfg.restarts = 20;
  cfg.seed = 7;
  cfg.seed_with_construction = true;
  const auto r = local_min(plane, 15, cfg);
  EXPECT_LE(r.min_odd, 24u);
  EXPECT_EQ(odd_secants(plane, r.witness), r.min_odd);
}
