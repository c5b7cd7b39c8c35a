#pragma once

// Sparse homogeneous polynomials in X1, X2, X3 over GF(q).

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "oddsec/plane.hpp"

namespace oddsec {

/// Exponents (i, j, k) of X1^i X2^j X3^k.
using Mono = std::array<std::uint16_t, 3>;

inline int mono_degree(const Mono& m) { return m[0] + m[1] + m[2]; }

/// Terms are kept in descending lexicographic order of exponents, which is
/// graded-lex order since all terms share one degree: begin() is the leading term.
class HomPoly {
 public:
  using Terms = std::map<Mono, Elem, std::greater<>>;

  HomPoly() = default;
  HomPoly(FieldPtr field, int degree) : field_(std::move(field)), degree_(degree) {}

  static HomPoly zero(FieldPtr field, int degree = 0) { return {std::move(field), degree}; }
  static HomPoly constant(FieldPtr field, Elem c) {
    HomPoly r(std::move(field), 0);
    r.set({0, 0, 0}, c);
    return r;
  }
  static HomPoly monomial(FieldPtr field, Mono m, Elem c = Field::one()) {
    HomPoly r(std::move(field), mono_degree(m));
    r.set(m, c);
    return r;
  }
  /// a1 X1 + a2 X2 + a3 X3.
  static HomPoly linear(FieldPtr field, const Vec3& a) {
    HomPoly r(std::move(field), 1);
    r.set({1, 0, 0}, a[0]);
    r.set({0, 1, 0}, a[1]);
    r.set({0, 0, 1}, a[2]);
    return r;
  }

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const Field& field() const noexcept { return *field_; }
  int degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  Elem coeff(const Mono& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Field::zero() : it->second;
  }

  void set(const Mono& m, Elem c) {
    if (mono_degree(m) != degree_) throw Error(Errc::InvalidParams, "monomial degree does not match polynomial degree");
    if (c.v == 0)
      terms_.erase(m);
    else
      terms_[m] = c;
  }

  void add_term(const Mono& m, Elem c) {
    if (c.v == 0) return;
    if (mono_degree(m) != degree_) throw Error(Errc::InvalidParams, "monomial degree does not match polynomial degree");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = field_->add(it->second, c);
      if (it->second.v == 0) terms_.erase(it);
    }
  }

  Mono leading_mono() const { return terms_.begin()->first; }
  Elem leading_coeff() const { return terms_.begin()->second; }

  Elem evaluate(const Vec3& v) const {
    const Field& f = *field_;
    // Power tables avoid repeated exponentiation.
    std::array<std::vector<Elem>, 3> pw;
    for (int i = 0; i < 3; ++i) {
      pw[i].resize(degree_ + 1);
      pw[i][0] = Field::one();
      for (int k = 1; k <= degree_; ++k) pw[i][k] = f.mul(pw[i][k - 1], v[i]);
    }
    Elem s = Field::zero();
    for (const auto& [m, c] : terms_) s = f.add(s, f.mul(c, f.mul(pw[0][m[0]], f.mul(pw[1][m[1]], pw[2][m[2]]))));
    return s;
  }
  Elem evaluate(const FixedVector& v) const { return evaluate(v.c); }

  HomPoly scaled(Elem s) const {
    HomPoly r(field_, degree_);
    if (s.v == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, field_->mul(c, s));
    return r;
  }

  HomPoly operator-() const { return scaled(field_->neg(Field::one())); }

  HomPoly& operator+=(const HomPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && degree_ != o.degree_) degree_ = o.degree_;
    if (degree_ != o.degree_) throw Error(Errc::InvalidParams, "adding polynomials of different degrees");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  HomPoly& operator-=(const HomPoly& o) { return *this += -o; }

  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }

  friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    const Field& f = *a.field_;
    HomPoly r(a.field_, a.degree_ + b.degree_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        r.add_term({static_cast<std::uint16_t>(ma[0] + mb[0]), static_cast<std::uint16_t>(ma[1] + mb[1]),
                    static_cast<std::uint16_t>(ma[2] + mb[2])},
                   f.mul(ca, cb));
    return r;
  }

  HomPoly pow(unsigned k) const {
    HomPoly r = constant(field_, Field::one());
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Equality of coefficients; two zero polynomials are equal whatever their nominal degree.
  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Scales so the leading coefficient is 1.
  HomPoly monic() const {
    if (is_zero()) return *this;
    return scaled(field_->inv(leading_coeff()));
  }

  /// True iff a == c * b for some nonzero c.
  friend bool proportional(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.monic() == b.monic();
  }

  /// Hasse derivative of the given order: X^m -> prod C(m_i, a_i) X^(m-a).
  HomPoly hasse(const Mono& order) const {
    const Field& f = *field_;
    HomPoly r(field_, degree_ - mono_degree(order));
    if (r.degree_ < 0) return HomPoly(field_, 0);
    for (const auto& [m, c] : terms_) {
      if (m[0] < order[0] || m[1] < order[1] || m[2] < order[2]) continue;
      Elem k = c;
      for (int i = 0; i < 3; ++i) k = f.mul(k, binomial_mod(m[i], order[i], f));
      r.add_term({static_cast<std::uint16_t>(m[0] - order[0]), static_cast<std::uint16_t>(m[1] - order[1]),
                  static_cast<std::uint16_t>(m[2] - order[2])},
                 k);
    }
    return r;
  }

  /// The polynomial Y -> f(M Y).
  HomPoly substitute(const Mat3& mat) const {
    std::array<HomPoly, 3> lin;
    for (int i = 0; i < 3; ++i) lin[i] = linear(field_, mat.m[i]);
    std::array<std::vector<HomPoly>, 3> pw;
    for (int i = 0; i < 3; ++i) {
      pw[i].push_back(constant(field_, Field::one()));
      for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * lin[i]);
    }
    HomPoly r(field_, degree_);
    for (const auto& [m, c] : terms_) r += (pw[0][m[0]] * pw[1][m[1]] * pw[2][m[2]]).scaled(c);
    return r;
  }

  /// Exact quotient by d, or nullopt when d does not divide *this.
  std::optional<HomPoly> divide(const HomPoly& d) const {
    if (d.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
    if (is_zero()) return HomPoly(field_, std::max(0, degree_ - d.degree_));
    if (d.degree_ > degree_) return std::nullopt;
    const Field& f = *field_;
    HomPoly rem = *this;
    HomPoly quo(field_, degree_ - d.degree_);
    const Mono dl = d.leading_mono();
    const Elem dinv = f.inv(d.leading_coeff());
    while (!rem.is_zero()) {
      const Mono rl = rem.leading_mono();
      if (rl[0] < dl[0] || rl[1] < dl[1] || rl[2] < dl[2]) return std::nullopt;
      const Mono qm{static_cast<std::uint16_t>(rl[0] - dl[0]), static_cast<std::uint16_t>(rl[1] - dl[1]),
                    static_cast<std::uint16_t>(rl[2] - dl[2])};
      const Elem qc = f.mul(rem.leading_coeff(), dinv);
      quo.add_term(qm, qc);
      rem -= monomial(field_, qm, qc) * d;
    }
    return quo;
  }

  bool divides(const HomPoly& f) const { return f.divide(*this).has_value(); }

  /// Text form: "deg d:" then one "coeff i j k" line per term.
  void write(std::ostream& os) const {
    os << "deg " << degree_ << ":\n";
    for (const auto& [m, c] : terms_) os << field_->format(c) << ' ' << m[0] << ' ' << m[1] << ' ' << m[2] << '\n';
  }

  std::string to_text() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }

  static HomPoly read(FieldPtr field, std::istream& is) {
    std::string word;
    int d = -1;
    if (!(is >> word) || word != "deg") throw Error(Errc::ParseError, "expected 'deg'");
    std::string dtoken;
    if (!(is >> dtoken) || dtoken.empty() || dtoken.back() != ':') throw Error(Errc::ParseError, "expected 'd:'");
    try {
      d = std::stoi(dtoken.substr(0, dtoken.size() - 1));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad degree '" + dtoken + "'");
    }
    if (d < 0) throw Error(Errc::ParseError, "negative degree");
    HomPoly r(field, d);
    std::string coeff;
    while (is >> coeff) {
      int i = 0, j = 0, k = 0;
      if (!(is >> i >> j >> k) || i < 0 || j < 0 || k < 0 || i + j + k != d)
        throw Error(Errc::ParseError, "bad term for coefficient '" + coeff + "'");
      r.add_term({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(k)},
                 field->parse(coeff));
    }
    return r;
  }

  static HomPoly from_text(FieldPtr field, const std::string& text) {
    std::istringstream is(text);
    return read(std::move(field), is);
  }

 private:
  // C(n, k) mod p via Lucas' theorem.
  static Elem binomial_mod(unsigned n, unsigned k, const Field& f) {
    const unsigned p = f.p();
    std::uint64_t r = 1;
    while (n || k) {
      const unsigned ni = n % p, ki = k % p;
      if (ki > ni) return Field::zero();
      std::uint64_t c = 1;
      for (unsigned i = 0; i < ki; ++i) c = c * (ni - i) / (i + 1);
      r = r * (c % p) % p;
      n /= p;
      k /= p;
    }
    return f.from_int(static_cast<std::int64_t>(r));
  }

  FieldPtr field_;
  int degree_ = 0;
  Terms terms_;
};

inline HomPoly variable(FieldPtr field, int i) {
  Mono m{0, 0, 0};
  m[i] = 1;
  return HomPoly::monomial(std::move(field), m);
}

/// V(f): ids of the points of PG(2,q) where f vanishes.
inline std::vector<std::uint32_t> vanishing_set(const Plane& plane, const HomPoly& f) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t id = 0; id < plane.size(); ++id)
    if (f.evaluate(plane.point(id).c).v == 0) out.push_back(id);
  return out;
}

}  // namespace oddsec
