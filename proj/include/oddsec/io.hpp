#pragma once

// Point-set files and JSON analysis reports.
//
// File format:
//   # comment
//   q <p> <e> [modulus <c0:c1:...:1>]
//   <x> <y> <z>        one point per line, field elements in text form
//
// Points are normalized on load; a zero vector or a repeated point is a
// ParseError carrying the line number.

#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddsec/secant.hpp"

namespace oddsec {

using Json = nlohmann::ordered_json;

struct LoadedSet {
  std::shared_ptr<const Plane> plane;
  std::vector<std::uint32_t> ids;

  PointSet set() const { return PointSet(*plane, ids); }
};

inline std::string field_spec(const Field& f) {
  std::string s = "q " + std::to_string(f.p()) + " " + std::to_string(f.e());
  if (f.e() > 1) s += " modulus " + f.format_modulus();
  return s;
}

inline void write_point_set(std::ostream& os, const PointSet& s) {
  const Field& f = s.field();
  os << field_spec(f) << '\n';
  for (auto id : s.ids()) {
    const auto p = s.plane().point(id);
    os << f.format(p.c[0]) << ' ' << f.format(p.c[1]) << ' ' << f.format(p.c[2]) << '\n';
  }
}

inline std::string point_set_text(const PointSet& s) {
  std::ostringstream os;
  write_point_set(os, s);
  return os.str();
}

inline void save_point_set(const std::string& path, const PointSet& s) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::InvalidParams, "cannot write " + path);
  write_point_set(os, s);
}

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline std::vector<std::uint32_t> parse_coeff_list(std::size_t line, const std::string& text) {
  std::vector<std::uint32_t> out;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ':')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(part, &used);
      if (used != part.size()) parse_fail(line, "bad modulus '" + text + "'");
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      parse_fail(line, "bad modulus '" + text + "'");
    }
  }
  return out;
}

}  // namespace detail

/// Reads a point-set file. When `expected` is given, the file's field must
/// coincide with it (FieldMismatch otherwise) and `plane` is reused if given.
inline LoadedSet read_point_set(std::istream& is, const FieldPtr& expected = nullptr,
                                std::shared_ptr<const Plane> plane = nullptr) {
  LoadedSet out;
  std::string raw;
  std::size_t lineno = 0;
  FieldPtr field;
  std::vector<std::uint32_t> ids;
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!field) {
      if (tok[0] != "q" || (tok.size() != 3 && !(tok.size() == 5 && tok[3] == "modulus")))
        detail::parse_fail(lineno, "expected 'q <p> <e> [modulus <c0:c1:...>]'");
      std::uint32_t p = 0, e = 0;
      try {
        p = static_cast<std::uint32_t>(std::stoul(tok[1]));
        e = static_cast<std::uint32_t>(std::stoul(tok[2]));
      } catch (const std::logic_error&) {
        detail::parse_fail(lineno, "bad field header");
      }
      std::vector<std::uint32_t> modulus;
      if (tok.size() == 5) modulus = detail::parse_coeff_list(lineno, tok[4]);
      try {
        field = Field::make(p, e, modulus);
      } catch (const Error& err) {
        detail::parse_fail(lineno, err.message());
      }
      if (expected && !expected->same_as(*field))
        throw Error(Errc::FieldMismatch, "file field " + field_spec(*field) + " differs from " + field_spec(*expected));
      if (expected) field = expected;
      if (!plane || !plane->field().same_as(*field)) plane = std::make_shared<const Plane>(field);
      continue;
    }
    if (tok.size() != 3) detail::parse_fail(lineno, "expected three coordinates");
    Vec3 v{};
    for (int i = 0; i < 3; ++i) {
      try {
        v[i] = field->parse(tok[i]);
      } catch (const Error& err) {
        detail::parse_fail(lineno, err.message());
      }
    }
    if (is_zero(v)) detail::parse_fail(lineno, "zero vector is not a point");
    const auto id = plane->point_id(v);
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) detail::parse_fail(lineno, "repeated point");
    ids.push_back(id);
  }
  if (!field) detail::parse_fail(lineno, "missing field header");
  std::sort(ids.begin(), ids.end());
  out.plane = std::move(plane);
  out.ids = std::move(ids);
  return out;
}

inline LoadedSet load_point_set(const std::string& path, const FieldPtr& expected = nullptr) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::ParseError, "cannot open " + path);
  return read_point_set(is, expected);
}

inline std::string rational_text(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Secant profile, weights and classification of a set as JSON.
inline Json analysis_json(const PointSet& s, unsigned t = 1) {
  const auto prof = secant_profile(s);
  const auto w = weights(s, prof);
  const auto cls = classify(s, prof, t);
  Json j;
  j["q"] = s.plane().q();
  j["size"] = s.size();
  Json spectrum = Json::object();
  for (auto [k, n] : prof.spectrum) spectrum[std::to_string(k)] = n;
  j["spectrum"] = spectrum;
  j["odd_count"] = prof.odd_count;
  Json wj = Json::object();
  for (std::size_t i = 0; i < w.ids.size(); ++i) wj[std::to_string(w.ids[i])] = rational_text(w.weight[i]);
  j["weights"] = wj;
  j["weight_total"] = rational_text(w.total());
  j["classification"] = {{"s0", cls.s0.size()},
                         {"s43", cls.s43.size()},
                         {"st", cls.st.size()},
                         {"parts", cls.parts.size()},
                         {"s_prime", cls.s_prime.size()}};
  j["s_prime"] = cls.s_prime;
  return j;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace oddsec
