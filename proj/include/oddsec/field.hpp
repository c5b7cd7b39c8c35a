#pragma once

// Exact arithmetic in GF(q), q = p^e <= 2^16.
//
// Elements are encoded as integers 0..q-1: the element c0 + c1 x + ... +
// c_{e-1} x^{e-1} of GF(p)[x]/(m(x)) has index c0 + c1 p + ... + c_{e-1} p^{e-1}.
// Index 0 is zero and index 1 is one in every field.

#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oddsec/error.hpp"

namespace oddsec {

struct Elem {
  std::uint32_t v = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over GF(p), low-to-high, used only for modulus handling.
using PolyP = std::vector<std::uint32_t>;

inline void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t k = p - 2; k; k >>= 1) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo nonzero b over GF(p).
inline PolyP poly_rem(PolyP a, PolyP b, std::uint32_t p) {
  trim(a);
  trim(b);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const PolyP& m, std::uint32_t p) {
  const std::size_t deg = m.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      PolyP f(d + 1);
      std::uint64_t t = n;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      f[d] = 1;
      if (poly_rem(m, f, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// GF(p^e) with an explicit monic irreducible modulus for e > 1.
///
/// Fields are immutable once built and are shared through FieldPtr. Two
/// FieldPtr values describe the same field iff p, e and the modulus agree.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;
  static constexpr std::uint32_t kTableLimit = 1u << 12;

  /// Builds GF(p^e). An empty modulus asks for the smallest irreducible one
  /// (ordering by the index encoding of the non-leading coefficients).
  static FieldPtr make(std::uint32_t p, std::uint32_t e = 1, std::vector<std::uint32_t> modulus = {}) {
    return std::shared_ptr<const Field>(new Field(p, e, std::move(modulus)));
  }

  /// Builds the field of order q with the default modulus.
  static FieldPtr of_order(std::uint32_t q) {
    if (q < 2) throw Error(Errc::InvalidField, "order " + std::to_string(q) + " is not a prime power");
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t e = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw Error(Errc::InvalidField, "order " + std::to_string(q) + " is not a prime power");
    return make(p, e);
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }
  bool odd() const noexcept { return p_ != 2; }
  /// Monic modulus, low-to-high, length e+1; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  bool same_as(const Field& o) const noexcept {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
  }

  static constexpr Elem zero() noexcept { return Elem{0}; }
  static constexpr Elem one() noexcept { return Elem{1}; }

  Elem element(std::uint32_t index) const {
    if (index >= q_) throw Error(Errc::InvalidParams, "element index out of range");
    return Elem{index};
  }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t n) const noexcept {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Elem{static_cast<std::uint32_t>(r)};
  }

  std::vector<std::uint32_t> coeffs(Elem a) const {
    std::vector<std::uint32_t> c(e_);
    std::uint32_t v = a.v;
    for (std::uint32_t i = 0; i < e_; ++i) {
      c[i] = v % p_;
      v /= p_;
    }
    return c;
  }

  Elem from_coeffs(std::span<const std::uint32_t> c) const {
    if (c.size() > e_) throw Error(Errc::InvalidParams, "too many coefficients");
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p_) throw Error(Errc::InvalidParams, "coefficient out of range");
      v = v * p_ + c[i];
    }
    return Elem{v};
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (e_ == 1) {
      const std::uint32_t s = a.v + b.v;
      return Elem{s >= p_ ? s - p_ : s};
    }
    std::uint32_t r = 0;
    std::uint32_t x = a.v, y = b.v;
    for (std::uint32_t i = 0; i < e_; ++i) {
      std::uint32_t d = x % p_ + y % p_;
      if (d >= p_) d -= p_;
      r += d * pow_p_[i];
      x /= p_;
      y /= p_;
    }
    return Elem{r};
  }

  Elem neg(Elem a) const noexcept {
    if (e_ == 1) return Elem{a.v == 0 ? 0 : p_ - a.v};
    std::uint32_t r = 0;
    std::uint32_t x = a.v;
    for (std::uint32_t i = 0; i < e_; ++i) {
      const std::uint32_t d = x % p_;
      r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
      x /= p_;
    }
    return Elem{r};
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a.v == 0 || b.v == 0) return zero();
    if (!log_.empty()) return Elem{exp_[log_[a.v] + log_[b.v]]};
    if (e_ == 1) return Elem{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % p_)};
    return mul_slow(a, b);
  }

  Elem inv(Elem a) const {
    if (a.v == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    if (!log_.empty()) return Elem{exp_[(q_ - 1) - log_[a.v]]};
    if (e_ == 1) return Elem{detail::inv_mod(a.v, p_)};
    return pow(a, q_ - 2);
  }

  Elem div(Elem a, Elem b) const {
    if (b.v == 0) throw Error(Errc::DivisionByZero, "division by zero");
    return mul(a, inv(b));
  }

  Elem pow(Elem a, std::uint64_t k) const noexcept {
    Elem r = one();
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  /// Zero is a square; in even characteristic every element is.
  bool is_square(Elem a) const noexcept {
    if (a.v == 0 || p_ == 2) return true;
    return pow(a, (q_ - 1) / 2) == one();
  }

  /// Decimal for prime fields, colon-separated coefficients otherwise.
  std::string format(Elem a) const {
    if (e_ == 1) return std::to_string(a.v);
    std::string s;
    const auto c = coeffs(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ':';
      s += std::to_string(c[i]);
    }
    return s;
  }

  /// Inverse of format(). A bare integer in an extension field is a constant.
  Elem parse(std::string_view text) const {
    std::vector<std::uint32_t> c;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = text.find(':', start);
      const std::string_view part = text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start);
      std::uint32_t value = 0;
      const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
      if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || value >= p_)
        throw Error(Errc::ParseError, "bad field element '" + std::string(text) + "'");
      c.push_back(value);
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (c.size() > e_) throw Error(Errc::ParseError, "too many coefficients in '" + std::string(text) + "'");
    return from_coeffs(c);
  }

  std::string format_modulus() const {
    std::string s;
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
      if (i) s += ':';
      s += std::to_string(modulus_[i]);
    }
    return s;
  }

 private:
  Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus) : p_(p), e_(e) {
    if (!detail::is_prime(p)) throw Error(Errc::InvalidField, std::to_string(p) + " is not prime");
    if (e == 0) throw Error(Errc::InvalidField, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      pow_p_.push_back(static_cast<std::uint32_t>(q));
      q *= p;
      if (q > kMaxOrder) throw Error(Errc::InvalidField, "q exceeds 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);

    if (e == 1) {
      if (!modulus.empty() && !(modulus.size() == 2 && modulus[1] == 1))
        throw Error(Errc::InvalidField, "prime field takes no modulus");
    } else if (modulus.empty()) {
      modulus_ = find_modulus();
    } else {
      if (modulus.size() != e + 1 || modulus.back() != 1)
        throw Error(Errc::InvalidField, "modulus must be monic of degree " + std::to_string(e));
      for (auto c : modulus)
        if (c >= p) throw Error(Errc::InvalidField, "modulus coefficient out of range");
      if (!detail::is_irreducible(modulus, p)) throw Error(Errc::InvalidField, "modulus is reducible");
      modulus_ = std::move(modulus);
    }

    if (q_ <= kTableLimit) build_tables();
  }

  std::vector<std::uint32_t> find_modulus() const {
    std::vector<std::uint32_t> m(e_ + 1);
    m[e_] = 1;
    for (std::uint32_t n = 0; n < q_; ++n) {
      std::uint32_t t = n;
      for (std::uint32_t i = 0; i < e_; ++i) {
        m[i] = t % p_;
        t /= p_;
      }
      if (m[0] != 0 && detail::is_irreducible(m, p_)) return m;
    }
    throw Error(Errc::InvalidField, "no irreducible modulus found");
  }

  Elem mul_slow(Elem a, Elem b) const {
    const auto x = coeffs(a);
    const auto y = coeffs(b);
    detail::PolyP prod(2 * e_ - 1, 0);
    for (std::uint32_t i = 0; i < e_; ++i)
      for (std::uint32_t j = 0; j < e_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p_);
    auto r = detail::poly_rem(std::move(prod), modulus_, p_);
    r.resize(e_, 0);
    return from_coeffs(r);
  }

  void build_tables() {
    // Smallest primitive element by index.
    const std::uint32_t n = q_ - 1;
    std::vector<std::uint32_t> exp(n);
    for (std::uint32_t g = 1; g < q_; ++g) {
      Elem x = one();
      std::uint32_t k = 0;
      bool primitive = true;
      for (; k < n; ++k) {
        exp[k] = x.v;
        x = e_ == 1 ? Elem{static_cast<std::uint32_t>(static_cast<std::uint64_t>(x.v) * g % p_)} : mul_slow(x, Elem{g});
        if (x == one() && k + 1 < n) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
    exp_.resize(2 * n);
    log_.assign(q_, 0);
    for (std::uint32_t k = 0; k < n; ++k) {
      exp_[k] = exp_[k + n] = exp[k];
      log_[exp[k]] = k;
    }
  }

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

/// An element bundled with its field, for callers that want checked operators.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {}

  const FieldPtr& field() const noexcept { return field_; }
  Elem value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_.v == 0; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_->same_as(*b.field_) && a.value_ == b.value_;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const Field& f = common(a, b);
    return {a.field_, f.add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const Field& f = common(a, b);
    return {a.field_, f.sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const Field& f = common(a, b);
    return {a.field_, f.mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    const Field& f = common(a, b);
    return {a.field_, f.div(a.value_, b.value_)};
  }

  std::string to_string() const { return field_->format(value_); }

 private:
  static const Field& common(const FieldElement& a, const FieldElement& b) {
    if (a.field_ != b.field_ && !a.field_->same_as(*b.field_))
      throw Error(Errc::MixedFields, "operands belong to different fields");
    return *a.field_;
  }

  FieldPtr field_;
  Elem value_;
};

enum class ArithOp { add, sub, mul, div };

inline FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw Error(Errc::InvalidParams, "unknown op");
}

inline FieldElement inverse(const FieldElement& a) { return {a.field(), a.field()->inv(a.value())}; }

inline bool is_square(const FieldElement& a) { return a.field()->is_square(a.value()); }

}  // namespace oddsec
