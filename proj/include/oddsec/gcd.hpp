#pragma once

// Gcd of homogeneous trivariate polynomials over GF(q).
//
// gcd_hom splits off the common power of X3, dehomogenizes at X3 = 1, runs a
// primitive remainder sequence in GF(q)[X2][X1] whose contents are handled
// by univariate Euclid in X2, then rehomogenizes.

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "oddsec/poly.hpp"

namespace oddsec {

/// Dense univariate polynomial over GF(q), low-to-high, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Elem> c) : c_(std::move(c)) { trim(); }
  static UniPoly constant(Elem c) { return UniPoly({c}); }

  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Elem lead() const { return c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Field::zero(); }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }

  static UniPoly add(const Field& f, const UniPoly& a, const UniPoly& b) {
    std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(a[i], b[i]);
    return UniPoly(std::move(r));
  }
  static UniPoly sub(const Field& f, const UniPoly& a, const UniPoly& b) {
    std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return UniPoly(std::move(r));
  }
  static UniPoly mul(const Field& f, const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.c_[i], b.c_[j]));
    return UniPoly(std::move(r));
  }

  /// Quotient and remainder; b nonzero.
  static std::pair<UniPoly, UniPoly> divmod(const Field& f, UniPoly a, const UniPoly& b) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "univariate division by zero");
    if (a.degree() < b.degree()) return {UniPoly{}, std::move(a)};
    std::vector<Elem> q(a.c_.size() - b.c_.size() + 1);
    const Elem inv = f.inv(b.lead());
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const std::size_t shift = a.degree() - b.degree();
      const Elem k = f.mul(a.lead(), inv);
      q[shift] = k;
      for (std::size_t i = 0; i < b.c_.size(); ++i) a.c_[shift + i] = f.sub(a.c_[shift + i], f.mul(k, b.c_[i]));
      a.trim();
    }
    return {UniPoly(std::move(q)), std::move(a)};
  }

  UniPoly monic(const Field& f) const {
    if (is_zero()) return *this;
    const Elem inv = f.inv(lead());
    std::vector<Elem> r(c_);
    for (auto& x : r) x = f.mul(x, inv);
    return UniPoly(std::move(r));
  }

  /// Monic gcd; gcd(0, 0) = 0.
  static UniPoly gcd(const Field& f, UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      auto r = divmod(f, std::move(a), b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic(f);
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
  }
  std::vector<Elem> c_;
};

/// Polynomial in X1 whose coefficients are univariate polynomials in X2.
using BiPoly = std::vector<UniPoly>;

namespace detail {

inline void trim(BiPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline BiPoly dehomogenize(const HomPoly& p) {
  BiPoly r;
  for (const auto& [m, c] : p.terms()) {
    if (r.size() <= m[0]) r.resize(m[0] + 1);
    std::vector<Elem> v = r[m[0]].coeffs();
    if (v.size() <= m[1]) v.resize(m[1] + 1);
    v[m[1]] = c;
    r[m[0]] = UniPoly(std::move(v));
  }
  trim(r);
  return r;
}

inline HomPoly homogenize(const FieldPtr& field, const BiPoly& a) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) d = std::max(d, static_cast<int>(i) + a[i].degree());
  HomPoly r(field, d);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].coeffs().size(); ++j)
      r.add_term({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(d - i - j)},
                 a[i].coeffs()[j]);
  return r;
}

inline UniPoly content(const Field& f, const BiPoly& a) {
  UniPoly g;
  for (const auto& c : a) g = UniPoly::gcd(f, g, c);
  return g;
}

inline BiPoly divide_by(const Field& f, const BiPoly& a, const UniPoly& c) {
  BiPoly r;
  for (const auto& x : a) {
    auto [q, rem] = UniPoly::divmod(f, x, c);
    if (!rem.is_zero()) throw Error(Errc::InvalidParams, "content does not divide coefficient");
    r.push_back(std::move(q));
  }
  trim(r);
  return r;
}

inline BiPoly primitive_part(const Field& f, const BiPoly& a) {
  if (a.empty()) return a;
  return divide_by(f, a, content(f, a));
}

/// Pseudo-remainder of a by b in X1.
inline BiPoly pseudo_rem(const Field& f, BiPoly a, const BiPoly& b) {
  const std::size_t db = b.size() - 1;
  const UniPoly& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const UniPoly la = a.back();
    for (auto& x : a) x = UniPoly::mul(f, x, lb);
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = UniPoly::sub(f, a[shift + i], UniPoly::mul(f, la, b[i]));
    trim(a);
  }
  return a;
}

inline BiPoly bivariate_gcd(const Field& f, BiPoly a, BiPoly b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const UniPoly c = UniPoly::gcd(f, content(f, a), content(f, b));
  a = primitive_part(f, a);
  b = primitive_part(f, b);
  if (a.size() < b.size()) std::swap(a, b);
  while (true) {
    if (b.size() == 1) {
      // b primitive and free of X1: a unit.
      b = {UniPoly::constant(Field::one())};
      break;
    }
    BiPoly r = pseudo_rem(f, a, b);
    if (r.empty()) break;
    a = std::move(b);
    b = primitive_part(f, r);
  }
  for (auto& x : b) x = UniPoly::mul(f, x, c);
  return b;
}

}  // namespace detail

/// Monic (graded-lex) gcd of two homogeneous polynomials.
inline HomPoly gcd_hom(const HomPoly& f, const HomPoly& g) {
  if (f.is_zero() && g.is_zero()) throw Error(Errc::BothZero, "gcd of two zero polynomials");
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  const FieldPtr& field = f.field_ptr();
  auto x3_power = [](const HomPoly& p) {
    int k = p.degree();
    for (const auto& [m, c] : p.terms()) k = std::min<int>(k, m[2]);
    return k;
  };
  auto strip = [&](const HomPoly& p, int k) {
    HomPoly r(field, p.degree() - k);
    for (const auto& [m, c] : p.terms())
      r.add_term({m[0], m[1], static_cast<std::uint16_t>(m[2] - k)}, c);
    return r;
  };
  const int kf = x3_power(f), kg = x3_power(g);
  const int k = std::min(kf, kg);
  const BiPoly a = detail::dehomogenize(strip(f, kf));
  const BiPoly b = detail::dehomogenize(strip(g, kg));
  HomPoly h = detail::homogenize(field, detail::bivariate_gcd(*field, a, b));
  if (k > 0) h = h * HomPoly::monomial(field, {0, 0, static_cast<std::uint16_t>(k)});
  return h.monic();
}

/// Iterated pairwise gcd of a list (zero entries are skipped).
inline HomPoly gcd_all(std::span<const HomPoly> polys) {
  HomPoly g;
  bool have = false;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = have ? gcd_hom(g, p) : p.monic();
    have = true;
    if (g.degree() == 0) break;
  }
  if (!have) throw Error(Errc::BothZero, "gcd of zero polynomials");
  return g;
}

struct SpanGcd {
  HomPoly gcd;
  bool degree_too_high = false;    // max degree exceeds q: the two-element witness is not guaranteed
  bool pair_witness = false;       // some single random pair of combinations already had this gcd
  int iterations = 0;              // random pairs drawn
  bool fallback_used = false;      // the stabilized value needed correction by basis pairs
};

/// Gcd of the GF(q)-span of polys.
///
/// Draws random pairs of linear combinations (seeded), folds their gcds until
/// the degree has not dropped for 5 consecutive draws, then trial-divides the
/// result into every basis element. Any failure is repaired from basis pairs
/// (all C(n,2) pairs when n <= 20, the failing elements otherwise). The
/// result always equals the iterated pairwise gcd of the basis.
inline SpanGcd gcd_of_span(std::span<const HomPoly> polys, int trials, std::uint64_t seed) {
  if (polys.empty()) throw Error(Errc::InvalidParams, "empty span");
  const FieldPtr field = polys.front().field_ptr();
  const Field& f = *field;
  int d = 0;
  for (const auto& p : polys) {
    if (!p.is_zero() && d != 0 && p.degree() != d) throw Error(Errc::InvalidParams, "span members differ in degree");
    if (!p.is_zero()) d = p.degree();
  }
  SpanGcd out;
  out.degree_too_high = static_cast<std::uint32_t>(d) > f.q();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
  auto combination = [&] {
    HomPoly c(field, d);
    for (const auto& p : polys) c += p.scaled(Elem{pick(rng)});
    return c;
  };

  HomPoly cur;
  bool have = false;
  int stable = 0;
  for (int t = 0; t < std::max(trials, 1) && stable < 5; ++t) {
    const HomPoly u = combination(), v = combination();
    ++out.iterations;
    if (u.is_zero() && v.is_zero()) continue;
    const HomPoly h = gcd_hom(u, v);
    if (!have) {
      cur = h;
      have = true;
      continue;
    }
    const HomPoly next = gcd_hom(cur, h);
    stable = next.degree() < cur.degree() ? 0 : stable + 1;
    cur = next;
  }

  const std::vector<HomPoly> basis(polys.begin(), polys.end());
  auto fails = [&](const HomPoly& g) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!basis[i].is_zero() && !g.divides(basis[i])) bad.push_back(i);
    return bad;
  };
  if (!have) {
    cur = gcd_all(basis);
    out.fallback_used = true;
  }
  auto bad = fails(cur);
  if (!bad.empty()) {
    out.fallback_used = true;
    if (basis.size() <= 20) {
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
          if (!basis[i].is_zero() || !basis[j].is_zero()) cur = gcd_hom(cur, gcd_hom(basis[i], basis[j]));
    } else {
      for (auto i : bad) cur = gcd_hom(cur, basis[i]);
    }
  }
  const HomPoly reference = gcd_all(basis);
  if (!(cur == reference)) throw Error(Errc::InvalidParams, "span gcd disagrees with iterated pairwise gcd");

  // Replay the draws to see whether a single pair was already a witness.
  rng.seed(seed);
  for (int t = 0; t < out.iterations; ++t) {
    const HomPoly u = combination(), v = combination();
    if (u.is_zero() && v.is_zero()) continue;
    if (gcd_hom(u, v) == reference) {
      out.pair_witness = true;
      break;
    }
  }
  out.gcd = reference;
  return out;
}

}  // namespace oddsec
