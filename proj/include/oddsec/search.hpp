#pragma once

// Minimum number of odd secants over sets of a given size.
//
// Inserting a point flips the parity of q+1 lines, so o(S) is not monotone
// along any insertion order and partial sets give no useful lower bound.
// The exhaustive engine therefore prunes only by isomorphism.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "oddsec/canonical.hpp"
#include "oddsec/construct.hpp"
#include "oddsec/secant.hpp"

namespace oddsec {

enum class SearchMode { exhaustive, local };

struct SearchOutcome {
  std::uint32_t q = 0;
  std::uint32_t size = 0;
  SearchMode mode = SearchMode::exhaustive;
  bool symmetry = false;
  std::uint32_t min_odd = 0;
  std::vector<std::uint32_t> witness;
  std::uint64_t classes_visited = 0;   // framed isomorphism classes (symmetry mode)
  std::uint64_t sets_evaluated = 0;    // sets whose o(S) was computed
  bool exhaustive = false;
  std::uint64_t seed = 0;
  double seconds = 0;
};

/// Line counts and o(S) maintained under single-point insertions and removals.
class IncidenceCounter {
 public:
  explicit IncidenceCounter(const Plane& plane) : plane_(&plane), count_(plane.size(), 0) {}

  void add(std::uint32_t p) {
    for (auto l : plane_->lines_through(p)) odd_ += (++count_[l] & 1) ? 1 : -1;
  }
  void remove(std::uint32_t p) {
    for (auto l : plane_->lines_through(p)) odd_ += (--count_[l] & 1) ? 1 : -1;
  }
  std::int64_t odd() const noexcept { return odd_; }
  std::span<const std::uint32_t> counts() const noexcept { return count_; }

 private:
  const Plane* plane_;
  std::vector<std::uint32_t> count_;
  std::int64_t odd_ = 0;
};

inline std::uint32_t odd_secants(const Plane& plane, std::span<const std::uint32_t> ids) {
  IncidenceCounter c(plane);
  for (auto p : ids) c.add(p);
  return static_cast<std::uint32_t>(c.odd());
}

/// Calls visit(ids, counter) for every k-subset of the plane in lexicographic order.
/// visit returns false to stop early; the return value reports completion.
inline bool for_each_subset(const Plane& plane, std::uint32_t k,
                            const std::function<bool(std::span<const std::uint32_t>, const IncidenceCounter&)>& visit) {
  const std::uint32_t n = plane.size();
  if (k > n) return true;
  IncidenceCounter counter(plane);
  std::vector<std::uint32_t> ids;
  ids.reserve(k);
  bool stop = false;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
    if (stop) return;
    if (ids.size() == k) {
      if (!visit(ids, counter)) stop = true;
      return;
    }
    const std::uint32_t need = k - static_cast<std::uint32_t>(ids.size());
    for (std::uint32_t p = from; p + need <= n && !stop; ++p) {
      ids.push_back(p);
      counter.add(p);
      rec(p + 1);
      counter.remove(p);
      ids.pop_back();
    }
  };
  rec(0);
  return !stop;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline void consider(SearchOutcome& out, std::uint32_t odd, std::span<const std::uint32_t> ids) {
  std::vector<std::uint32_t> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  if (out.sets_evaluated == 0 || odd < out.min_odd || (odd == out.min_odd && sorted < out.witness)) {
    out.min_odd = odd;
    out.witness = std::move(sorted);
  }
  ++out.sets_evaluated;
}

/// Largest id of a canonical image whose removal leaves a frame.
inline std::uint32_t designated_point(const Plane& plane, const std::vector<std::uint32_t>& image) {
  for (std::size_t i = image.size(); i-- > 0;) {
    std::vector<std::uint32_t> rest;
    for (std::size_t j = 0; j < image.size(); ++j)
      if (j != i) rest.push_back(image[j]);
    if (find_frame(plane, rest)) return image[i];
  }
  throw Error(Errc::InvalidParams, "no deletable point keeps a frame");
}

/// Sets inside a line plus at most one point: all frameless sets up to equivalence.
inline void frameless_sets(const Plane& plane, std::uint32_t size, SearchOutcome& out) {
  const std::uint32_t line = plane.id(Line{{Field::zero(), Field::zero(), Field::one()}});
  const std::uint32_t off = plane.id(Point{{Field::zero(), Field::zero(), Field::one()}});
  const auto on = plane.points_on(line);
  const std::vector<std::uint32_t> pts(on.begin(), on.end());
  auto choose = [&](std::uint32_t k, bool with_off) {
    if (k > pts.size()) return;
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<std::uint32_t> s;
      for (auto i : idx) s.push_back(pts[i]);
      if (with_off) s.push_back(off);
      consider(out, odd_secants(plane, s), s);
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && idx[i] == pts.size() - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (std::uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  };
  if (size == 0) return;
  choose(size, false);
  choose(size - 1, true);
}

}  // namespace detail

/// Exact minimum of o(S) over all sets of the given size.
///
/// Without symmetry every subset is visited. With symmetry, sets containing a
/// frame are generated one per isomorphism class by canonical augmentation
/// from the standard frame, and the frameless remainder (a line plus at most
/// one point) is enumerated directly. The exhaustive flag is set only when the
/// run finishes within budget_seconds.
inline SearchOutcome exhaustive_min(const Plane& plane, std::uint32_t size, bool symmetry, double budget_seconds = 600) {
  const auto t0 = detail::Clock::now();
  SearchOutcome out;
  out.q = plane.q();
  out.size = size;
  out.mode = SearchMode::exhaustive;
  out.symmetry = symmetry;
  bool finished = true;
  std::uint64_t tick = 0;
  auto over_budget = [&] { return (++tick & 0x3ff) == 0 && detail::seconds_since(t0) > budget_seconds; };

  if (!symmetry) {
    finished = for_each_subset(plane, size, [&](std::span<const std::uint32_t> ids, const IncidenceCounter& c) {
      detail::consider(out, static_cast<std::uint32_t>(c.odd()), ids);
      return !over_budget();
    });
  } else {
    detail::frameless_sets(plane, size, out);
    if (size >= 4) {
      const Field& f = plane.field();
      const std::vector<std::uint32_t> root = [&] {
        std::vector<std::uint32_t> r{plane.id(Point{{Field::one(), Field::zero(), Field::zero()}}),
                                     plane.id(Point{{Field::zero(), Field::one(), Field::zero()}}),
                                     plane.id(Point{{Field::zero(), Field::zero(), Field::one()}}),
                                     plane.id(Point{{Field::one(), Field::one(), Field::one()}})};
        std::sort(r.begin(), r.end());
        return r;
      }();
      std::function<void(const std::vector<std::uint32_t>&)> extend = [&](const std::vector<std::uint32_t>& s) {
        if (!finished) return;
        if (s.size() == size) {
          ++out.classes_visited;
          detail::consider(out, odd_secants(plane, s), s);
          if (over_budget()) finished = false;
          return;
        }
        std::set<std::vector<std::uint32_t>> seen;
        for (std::uint32_t v = 0; v < plane.size() && finished; ++v) {
          if (std::binary_search(s.begin(), s.end(), v)) continue;
          std::vector<std::uint32_t> child = s;
          child.insert(std::upper_bound(child.begin(), child.end(), v), v);
          const MinImage canon = framed_min_image(plane, child);
          const std::uint32_t d = detail::designated_point(plane, canon.image);
          bool accepted = false;
          for (const auto& m : canon.maps)
            if (plane.point_id(apply(f, m, plane.point(d).c)) == v) {
              accepted = true;
              break;
            }
          if (!accepted || !seen.insert(canon.image).second) continue;
          if (over_budget()) {
            finished = false;
            return;
          }
          extend(child);
        }
      };
      extend(root);
    }
  }
  out.exhaustive = finished;
  out.seconds = detail::seconds_since(t0);
  return out;
}

struct LocalConfig {
  std::uint32_t restarts = 20;
  std::uint64_t moves = 20000;
  double cooling = 0.995;
  double initial_temperature = 0;  // 0: calibrate so 80% of sampled uphill moves accept
  std::uint64_t seed = 1;
  bool seed_with_construction = false;  // restart 0 starts from the conic construction
  std::uint32_t recount_every = 100;
};

namespace detail {

struct RestartResult {
  std::uint32_t best = 0;
  std::vector<std::uint32_t> witness;
  std::uint64_t recount_checks = 0;
};

inline RestartResult anneal(const Plane& plane, std::uint32_t size, const LocalConfig& cfg, std::uint32_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), restart};
  std::mt19937_64 rng(seq);
  const std::uint32_t n = plane.size();
  std::uniform_int_distribution<std::uint32_t> any_point(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::uint32_t> members;
  if (restart == 0 && cfg.seed_with_construction && plane.q() % 2 == 1 && size == plane.q() + 2) {
    members = construct(plane, {ConstructionKind::conic_plus_external}).ids();
  } else if (restart == 0 && cfg.seed_with_construction && size <= plane.q() + 1) {
    members = construct(plane, {ConstructionKind::arc, size}).ids();
  } else {
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    members.assign(all.begin(), all.begin() + size);
  }
  std::vector<char> in(n, 0);
  IncidenceCounter counter(plane);
  for (auto p : members) {
    in[p] = 1;
    counter.add(p);
  }
  RestartResult res;
  res.best = static_cast<std::uint32_t>(counter.odd());
  res.witness = members;
  if (size == 0 || size == n) return res;

  std::uniform_int_distribution<std::uint32_t> member(0, size - 1);
  auto propose = [&] {
    std::uint32_t b;
    do b = any_point(rng);
    while (in[b]);
    return std::pair{member(rng), b};
  };

  double temp = cfg.initial_temperature;
  if (temp <= 0) {
    double sum = 0;
    int uphill = 0;
    for (int i = 0; i < 200; ++i) {
      const auto [ia, b] = propose();
      const std::int64_t before = counter.odd();
      counter.remove(members[ia]);
      counter.add(b);
      const std::int64_t delta = counter.odd() - before;
      counter.remove(b);
      counter.add(members[ia]);
      if (delta > 0) {
        sum += static_cast<double>(delta);
        ++uphill;
      }
    }
    temp = uphill ? -(sum / uphill) / std::log(0.8) : 1.0;
  }

  for (std::uint64_t move = 0; move < cfg.moves; ++move) {
    const auto [ia, b] = propose();
    const std::uint32_t a = members[ia];
    const std::int64_t before = counter.odd();
    counter.remove(a);
    counter.add(b);
    const std::int64_t delta = counter.odd() - before;
    if (delta <= 0 || unit(rng) < std::exp(-static_cast<double>(delta) / temp)) {
      in[a] = 0;
      in[b] = 1;
      members[ia] = b;
      if (static_cast<std::uint32_t>(counter.odd()) < res.best) {
        res.best = static_cast<std::uint32_t>(counter.odd());
        res.witness = members;
      }
    } else {
      counter.remove(b);
      counter.add(a);
    }
    temp *= cfg.cooling;
    if (temp < 1e-9) temp = 1e-9;
    if (cfg.recount_every && (move + 1) % cfg.recount_every == 0) {
      ++res.recount_checks;
      if (odd_secants(plane, members) != counter.odd())
        throw std::logic_error("incremental odd-secant count drifted from recount");
    }
  }
  std::sort(res.witness.begin(), res.witness.end());
  return res;
}

}  // namespace detail

/// Simulated annealing over single-point swaps. Deterministic for a given
/// seed: restart r draws from its own stream seeded by (seed, r), and the
/// result is the minimum by (o(S), sorted ids).
inline SearchOutcome local_min(const Plane& plane, std::uint32_t size, const LocalConfig& cfg) {
  if (size > plane.size()) throw Error(Errc::InvalidParams, "set larger than the plane");
  const auto t0 = detail::Clock::now();
  SearchOutcome out;
  out.q = plane.q();
  out.size = size;
  out.mode = SearchMode::local;
  out.seed = cfg.seed;
  const std::uint32_t restarts = std::max<std::uint32_t>(cfg.restarts, 1);
  std::vector<detail::RestartResult> results(restarts);
  if (std::thread::hardware_concurrency() > 1 && restarts > 1) {
    std::vector<std::future<detail::RestartResult>> jobs;
    for (std::uint32_t r = 0; r < restarts; ++r)
      jobs.push_back(std::async(std::launch::async, detail::anneal, std::cref(plane), size, std::cref(cfg), r));
    for (std::uint32_t r = 0; r < restarts; ++r) results[r] = jobs[r].get();
  } else {
    for (std::uint32_t r = 0; r < restarts; ++r) results[r] = detail::anneal(plane, size, cfg, r);
  }
  for (const auto& r : results) detail::consider(out, r.best, r.witness);
  out.seconds = detail::seconds_since(t0);
  return out;
}

}  // namespace oddsec
