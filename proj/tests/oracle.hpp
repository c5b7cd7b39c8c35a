#pragma once

// Brute-force reference implementations for tests. Nothing here uses the
// library: fields are plain integers mod p (or naive polynomial products for
// extensions), lines are enumerated directly, and polynomials are dense maps.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Triple = std::array<int, 3>;

inline int mod(long long a, int p) { return static_cast<int>(((a % p) + p) % p); }

inline int pow_mod(long long a, long long k, int p) {
  long long r = 1;
  a = mod(a, p);
  while (k) {
    if (k & 1) r = r * a % p;
    a = a * a % p;
    k >>= 1;
  }
  return static_cast<int>(r);
}

inline int inv_mod(int a, int p) { return pow_mod(a, p - 2, p); }

/// GF(p^e) with elements as coefficient vectors; products by schoolbook
/// multiplication and reduction by the given monic modulus.
struct ExtField {
  int p, e;
  std::vector<int> modulus;  // low to high, monic, size e+1

  std::vector<int> decode(std::uint32_t v) const {
    std::vector<int> c(e);
    for (int i = 0; i < e; ++i, v /= p) c[i] = static_cast<int>(v % p);
    return c;
  }
  std::uint32_t encode(const std::vector<int>& c) const {
    std::uint32_t v = 0;
    for (int i = e - 1; i >= 0; --i) v = v * p + c[i];
    return v;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto x = decode(a), y = decode(b);
    for (int i = 0; i < e; ++i) x[i] = mod(x[i] + y[i], p);
    return encode(x);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const auto x = decode(a), y = decode(b);
    std::vector<int> prod(2 * e - 1, 0);
    for (int i = 0; i < e; ++i)
      for (int j = 0; j < e; ++j) prod[i + j] = mod(prod[i + j] + x[i] * y[j], p);
    for (int d = 2 * e - 2; d >= e; --d) {
      const int c = prod[d];
      if (!c) continue;
      for (int i = 0; i <= e; ++i) prod[d - e + i] = mod(prod[d - e + i] - c * modulus[i], p);
    }
    prod.resize(e);
    return encode(prod);
  }
};

/// Normalized projective triples over GF(p): first nonzero coordinate 1.
inline std::vector<Triple> projective_points(int p) {
  std::vector<Triple> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) out.push_back({1, a, b});
  for (int b = 0; b < p; ++b) out.push_back({0, 1, b});
  out.push_back({0, 0, 1});
  return out;
}

inline int dot(const Triple& a, const Triple& b, int p) { return mod(1LL * a[0] * b[0] + 1LL * a[1] * b[1] + 1LL * a[2] * b[2], p); }

inline Triple normalize(Triple v, int p) {
  for (int i = 0; i < 3; ++i)
    if (mod(v[i], p)) {
      const int s = inv_mod(mod(v[i], p), p);
      for (auto& c : v) c = mod(1LL * c * s, p);
      return v;
    }
  return v;
}

/// |l ∩ S| for every line l (lines enumerated as normalized triples).
inline std::vector<int> line_counts(const std::vector<Triple>& s, int p) {
  std::vector<int> out;
  for (const auto& l : projective_points(p)) {
    int n = 0;
    for (const auto& x : s) n += dot(l, x, p) == 0;
    out.push_back(n);
  }
  return out;
}

inline int odd_secants(const std::vector<Triple>& s, int p) {
  int n = 0;
  for (int c : line_counts(s, p)) n += c & 1;
  return n;
}

/// Weights scaled by L = lcm(1..|S|), as integers.
inline std::vector<long long> scaled_weights(const std::vector<Triple>& s, int p, long long& L) {
  L = 1;
  for (long long k = 1; k <= static_cast<long long>(s.size()); ++k) L = std::lcm(L, k);
  std::vector<long long> w(s.size(), 0);
  for (const auto& l : projective_points(p)) {
    int n = 0;
    for (const auto& x : s) n += dot(l, x, p) == 0;
    if (!(n & 1)) continue;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (dot(l, s[i], p) == 0) w[i] += L / n;
  }
  return w;
}

/// Points of S lying only on bisecants of S.
inline int s0_count(const std::vector<Triple>& s, int p) {
  int n = 0;
  for (const auto& x : s) {
    bool only = true;
    for (const auto& l : projective_points(p)) {
      if (dot(l, x, p)) continue;
      int k = 0;
      for (const auto& y : s) k += dot(l, y, p) == 0;
      only = only && k == 2;
    }
    n += only;
  }
  return n;
}

/// |S_0| for |S| = q + 2 by determinants: x is in S_0 iff no two other points
/// of S are collinear with x.
inline int s0_count_det(const std::vector<Triple>& s, int p) {
  auto det = [p](const Triple& a, const Triple& b, const Triple& c) {
    const long long d = 1LL * a[0] * (b[1] * c[2] - b[2] * c[1]) - 1LL * a[1] * (b[0] * c[2] - b[2] * c[0]) +
                        1LL * a[2] * (b[0] * c[1] - b[1] * c[0]);
    return mod(d, p);
  };
  int n = 0;
  const std::size_t k = s.size();
  for (std::size_t x = 0; x < k; ++x) {
    bool free = true;
    for (std::size_t y = 0; y < k && free; ++y)
      for (std::size_t z = y + 1; z < k && free; ++z)
        if (y != x && z != x && det(s[x], s[y], s[z]) == 0) free = false;
    n += free;
  }
  return n;
}

inline std::vector<Triple> conic(int p) {
  std::vector<Triple> out;
  for (const auto& x : projective_points(p))
    if (mod(1LL * x[1] * x[1] - 1LL * x[0] * x[2], p) == 0) out.push_back(x);
  return out;
}

/// Intersection sizes |l ∩ S| of the lines l through x.
inline std::vector<int> counts_through(const std::vector<Triple>& s, const Triple& x, int p) {
  std::vector<int> out;
  for (const auto& l : projective_points(p)) {
    if (dot(l, x, p)) continue;
    int k = 0;
    for (const auto& y : s) k += dot(l, y, p) == 0;
    out.push_back(k);
  }
  return out;
}

inline bool is_arc(const std::vector<Triple>& s, int p) {
  for (int c : line_counts(s, p))
    if (c > 2) return false;
  return true;
}

/// Points off the conic X2^2 = X1 X3 lying on exactly two of its tangents.
inline std::vector<Triple> external_points(int p) {
  const auto c = conic(p);
  std::vector<Triple> out;
  for (const auto& x : projective_points(p)) {
    bool on = false;
    for (const auto& y : c) on = on || y == x;
    if (on) continue;
    int tangents = 0;
    for (int k : counts_through(c, x, p)) tangents += k == 1;
    if (tangents == 2) out.push_back(x);
  }
  return out;
}

/// Calls fn on every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Dense polynomials over GF(p) keyed by exponent triple.
using Poly = std::map<Triple, int>;

inline void clean(Poly& f) {
  for (auto it = f.begin(); it != f.end();) it = it->second ? std::next(it) : f.erase(it);
}

inline Poly mul(const Poly& a, const Poly& b, int p) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      const Triple m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
      r[m] = mod(r[m] + 1LL * ca * cb, p);
    }
  clean(r);
  return r;
}

inline Poly add(const Poly& a, const Poly& b, int p) {
  Poly r = a;
  for (const auto& [m, c] : b) r[m] = mod(r[m] + c, p);
  clean(r);
  return r;
}

inline int eval(const Poly& f, const Triple& x, int p) {
  long long s = 0;
  for (const auto& [m, c] : f) s += 1LL * c * pow_mod(x[0], m[0], p) % p * pow_mod(x[1], m[1], p) % p * pow_mod(x[2], m[2], p);
  return mod(s, p);
}

/// f(u + X) by repeated multiplication of (u_i + X_i) factors.
inline Poly translate(const Poly& f, const Triple& u, int p) {
  Poly r;
  for (const auto& [m, c] : f) {
    Poly term{{{0, 0, 0}, c}};
    for (int i = 0; i < 3; ++i) {
      Triple xi{0, 0, 0};
      xi[i] = 1;
      Poly lin{{{0, 0, 0}, mod(u[i], p)}, {xi, 1}};
      clean(lin);
      for (int k = 0; k < m[i]; ++k) term = mul(term, lin, p);
    }
    r = add(r, term, p);
  }
  return r;
}

/// Lowest total degree present in f(u + X), and that homogeneous part.
inline std::pair<int, Poly> lowest_part(const Poly& f, const Triple& u, int p) {
  const Poly t = translate(f, u, p);
  int low = 1 << 20;
  for (const auto& [m, c] : t) low = std::min(low, m[0] + m[1] + m[2]);
  Poly part;
  for (const auto& [m, c] : t)
    if (m[0] + m[1] + m[2] == low) part[m] = c;
  return {low, part};
}

/// a == k * b for some nonzero k.
inline bool proportional(const Poly& a, const Poly& b, int p) {
  if (a.size() != b.size() || a.empty()) return false;
  const int k = mod(1LL * a.begin()->second * inv_mod(b.begin()->second, p), p);
  for (const auto& [m, c] : b) {
    auto it = a.find(m);
    if (it == a.end() || it->second != mod(1LL * k * c, p)) return false;
  }
  return true;
}

/// Univariate gcd degree over GF(p) via Euclid on dense coefficient vectors.
inline std::vector<int> uni_gcd(std::vector<int> a, std::vector<int> b, int p) {
  auto trim = [](std::vector<int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size() && !a.empty()) {
      const int k = mod(1LL * a.back() * inv_mod(b.back(), p), p);
      const std::size_t sh = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + sh] = mod(a[i + sh] - 1LL * k * b[i], p);
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const int s = inv_mod(a.back(), p);
    for (auto& c : a) c = mod(1LL * c * s, p);
  }
  return a;
}

}  // namespace oracle
