// Text and JSON formats: field descriptors, element literals, diagonal forms
// and Witt expressions, 2x2 matrices and surface representations. The
// grammars are described in FORMATS.md. Needs nlohmann/json on the include
// path.

#ifndef WITTCLS_IO_HPP
#define WITTCLS_IO_HPP

#include <cctype>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "wittcls/surfaces.hpp"

namespace wittcls {

using Json = nlohmann::json;

/// Malformed input. `position` is a 0-based character offset into the text
/// being parsed; `path` locates the offending value inside a JSON document.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& message, std::size_t position, std::string path = "")
      : DomainError(format(message, position, path)), position_(position), path_(std::move(path)) {}

  std::size_t position() const { return position_; }
  const std::string& path() const { return path_; }

 private:
  static std::string format(const std::string& m, std::size_t pos, const std::string& path) {
    std::string s = m + " at position " + std::to_string(pos);
    if (!path.empty()) s += " in " + path;
    return s;
  }

  std::size_t position_;
  std::string path_;
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  bool accept(const std::string& word) {
    skip_ws();
    if (s_.compare(i_, word.size(), word) != 0) return false;
    i_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input");
  }

  // optionally signed decimal integer
  Int integer() {
    skip_ws();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == digits) {
      i_ = start;
      fail("expected an integer");
    }
    std::string t = s_.substr(start, i_ - start);
    if (t[0] == '+') t.erase(0, 1);
    return Int(t);
  }

  bool at_digit() {
    skip_ws();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }

  std::size_t pos() const { return i_; }
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, i_); }
  [[noreturn]] void fail_at(const std::string& m, std::size_t at) const { throw ParseError(m, at); }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

inline long long small_integer(Cursor& c, long long lo, long long hi) {
  std::size_t at = c.pos();
  Int v = c.integer();
  if (v < Int(std::to_string(lo)) || v > Int(std::to_string(hi))) c.fail_at("integer out of range", at);
  return std::stoll(v.get_str());
}

// n or n/m
inline Rat rational(Cursor& c) {
  std::size_t at = c.pos();
  Int n = c.integer();
  Int d = 1;
  if (c.accept('/')) {
    if (c.peek() == '-' || c.peek() == '+') c.fail("denominator must be unsigned");
    d = c.integer();
    if (d == 0) c.fail_at("zero denominator", at);
  }
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// one summand: q, q*r, r
inline void element_term(Cursor& c, const Field& f, int sign, Rat& c0, Rat& c1) {
  auto root = [&] {
    std::size_t at = c.pos();
    if (!c.accept('r')) return false;
    if (!f.has_root()) c.fail_at("field " + f.name() + " has no root symbol r", at);
    return true;
  };
  if (root()) {
    c1 += sign;
    return;
  }
  Rat q = rational(c);
  if (c.accept('*')) {
    if (!root()) c.fail("expected 'r' after '*'");
    c1 += sign * q;
  } else {
    c0 += sign * q;
  }
}

inline Element element(Cursor& c, const Field& f) {
  std::size_t at = c.pos();
  Rat c0 = 0, c1 = 0;
  int sign = 1;
  if (c.accept('-')) sign = -1;
  else c.accept('+');
  if (c.peek() == '+' || c.peek() == '-') c.fail("unexpected sign");
  element_term(c, f, sign, c0, c1);
  for (;;) {
    char p = c.peek();
    if (p != '+' && p != '-') break;
    c.accept(p);
    // a sign directly followed by another sign is malformed
    if (c.peek() == '+' || c.peek() == '-') c.fail("unexpected sign");
    element_term(c, f, p == '-' ? -1 : 1, c0, c1);
  }
  try {
    return Element(f, c0, c1);
  } catch (const DomainError& e) {
    c.fail_at(std::string("invalid element: ") + e.what(), at);
  }
}

inline std::vector<Element> form_entries(Cursor& c, const Field& f) {
  c.expect('<');
  std::vector<Element> v;
  if (c.accept('>')) return v;
  for (;;) {
    std::size_t at = c.pos();
    Element e = element(c, f);
    if (e.is_zero()) c.fail_at("diagonal form entry is zero", at);
    v.push_back(e);
    if (c.accept('>')) return v;
    c.expect(',');
  }
}

}  // namespace detail

/// Q, Q(i), Q(sqrt,D), Fp(P), Fp2(P), Fp2(P,N) for x^2 - N, Fp2(P,M1,M0) for x^2 + M1 x + M0.
inline Field parse_field(const std::string& text) {
  detail::Cursor c(text);
  auto build = [&](auto make) -> Field {
    try {
      return make();
    } catch (const ParseError&) {
      throw;
    } catch (const DomainError& e) {
      throw ParseError(std::string("invalid field: ") + e.what(), 0);
    }
  };
  const long long kMax = std::numeric_limits<long long>::max();
  const long long kPrimeMax = 4'000'000'000LL;
  Field f;
  if (c.accept("Fp2")) {
    c.expect('(');
    long long p = detail::small_integer(c, 3, kPrimeMax);
    std::vector<long long> extra;
    while (c.accept(',')) extra.push_back(detail::small_integer(c, -kPrimeMax, kPrimeMax));
    c.expect(')');
    if (extra.size() > 2) c.fail("Fp2 takes at most three arguments");
    f = build([&] {
      if (extra.empty()) return Field::prime_square(static_cast<std::uint64_t>(p));
      if (extra.size() == 1) return Field::prime_square(static_cast<std::uint64_t>(p), 0, -extra[0]);
      return Field::prime_square(static_cast<std::uint64_t>(p), extra[0], extra[1]);
    });
  } else if (c.accept("Fp")) {
    c.expect('(');
    long long p = detail::small_integer(c, 3, kPrimeMax);
    c.expect(')');
    f = build([&] { return Field::prime(static_cast<std::uint64_t>(p)); });
  } else if (c.accept('Q')) {
    if (c.accept('(')) {
      if (c.accept('i')) {
        f = Field::quadratic(-1);
      } else {
        if (!c.accept("sqrt")) c.fail("expected 'i' or 'sqrt'");
        c.expect(',');
        long long d = detail::small_integer(c, -kMax, kMax);
        f = build([&] { return Field::quadratic(d); });
      }
      c.expect(')');
    }
  } else {
    c.fail("expected a field: Q, Q(i), Q(sqrt,D), Fp(P) or Fp2(P)");
  }
  c.expect_end();
  return f;
}

/// Element literal: a sum of terms n, n/m, n/m*r and r with signs.
inline Element parse_element(const Field& f, const std::string& text) {
  detail::Cursor c(text);
  Element e = detail::element(c, f);
  c.expect_end();
  return e;
}

/// <a1,...,an> with nonzero entries.
inline std::vector<Element> parse_form(const Field& f, const std::string& text) {
  detail::Cursor c(text);
  std::vector<Element> v = detail::form_entries(c, f);
  c.expect_end();
  return v;
}

/// A signed sum of forms with optional integer multiples, e.g. 2<1,1> - <3>.
inline WittExpression parse_witt(const Field& f, const std::string& text) {
  detail::Cursor c(text);
  WittExpression q(f);
  bool first = true;
  while (first || !c.done()) {
    long sign = 1;
    if (c.accept('-')) sign = -1;
    else if (!c.accept('+') && !first) c.fail("expected '+' or '-'");
    long m = 1;
    if (c.at_digit()) {
      m = static_cast<long>(detail::small_integer(c, 0, 1'000'000));
      c.accept('*');
    }
    for (const Element& e : detail::form_entries(c, f)) q.add(e, sign * m);
    first = false;
  }
  return q;
}

/// <a1,...,an> for the honest diagonal of q (multiplicities expanded).
inline std::string format_form(const std::vector<Element>& entries) {
  std::string s = "<";
  for (std::size_t i = 0; i < entries.size(); ++i) s += (i ? "," : "") + entries[i].to_string();
  return s + ">";
}

// JSON ----------------------------------------------------------------------

inline Element element_from_json(const Field& f, const Json& j, const std::string& path = "") {
  if (j.is_number_integer()) return Element::integer(f, j.get<long>());
  if (!j.is_string()) throw ParseError("element must be a string or an integer", 0, path);
  try {
    return parse_element(f, j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), e.position(), path);
  }
}

inline Json to_json(const Element& e) { return e.to_string(); }

inline Json to_json(const WittExpression& q) {
  Json terms = Json::array();
  for (const auto& t : q.terms()) terms.push_back({{"coefficient", t.coefficient.to_string()}, {"multiplicity", t.multiplicity}});
  return {{"field", q.field().name()}, {"text", q.to_string()}, {"terms", terms}};
}

inline Json matrix_entries_json(const Mat2& m) {
  return Json::array({Json::array({to_json(m.a11), to_json(m.a12)}), Json::array({to_json(m.a21), to_json(m.a22)})});
}

inline Json to_json(const Mat2& m) { return {{"field", m.field().name()}, {"entries", matrix_entries_json(m)}}; }

namespace detail {

inline Field json_field(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError("field must be a string", 0, path);
  try {
    return parse_field(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), e.position(), path);
  }
}

inline const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing member \"") + key + "\"", 0, path);
  return j.at(key);
}

}  // namespace detail

/// {"field": F, "entries": [[a,b],[c,d]]}, or the bare entries array when
/// the field is supplied by the enclosing document.
inline Mat2 matrix_from_json(const Json& j, const std::optional<Field>& outer = std::nullopt,
                             const std::string& path = "") {
  Field f;
  const Json* entries = &j;
  if (j.is_object()) {
    f = detail::json_field(detail::member(j, "field", path), path + "/field");
    if (outer && !(*outer == f)) throw ParseError("matrix field differs from the document field", 0, path + "/field");
    entries = &detail::member(j, "entries", path);
  } else if (outer) {
    f = *outer;
  } else {
    throw ParseError("matrix needs a field", 0, path);
  }
  std::string ep = j.is_object() ? path + "/entries" : path;
  if (!entries->is_array() || entries->size() != 2) throw ParseError("entries must be a 2x2 array", 0, ep);
  Element e[2][2];
  for (int r = 0; r < 2; ++r) {
    const Json& row = (*entries)[r];
    if (!row.is_array() || row.size() != 2) throw ParseError("entries must be a 2x2 array", 0, ep + "/" + std::to_string(r));
    for (int c = 0; c < 2; ++c)
      e[r][c] = element_from_json(f, row[c], ep + "/" + std::to_string(r) + "/" + std::to_string(c));
  }
  return Mat2{e[0][0], e[0][1], e[1][0], e[1][1]};
}

/// {"genus": g, "group": "SL2"|"PSL2", "field": F, "monodromies": [X1, Y1, ...]}.
inline SurfaceRep surface_rep_from_json(const Json& j) {
  SurfaceRep r;
  const Json& g = detail::member(j, "genus", "");
  if (!g.is_number_integer() || g.get<long>() < 1) throw ParseError("genus must be a positive integer", 0, "/genus");
  r.genus = g.get<long>();
  const Json& grp = detail::member(j, "group", "");
  if (grp == "SL2") r.group = GroupType::sl2;
  else if (grp == "PSL2") r.group = GroupType::psl2;
  else throw ParseError("group must be \"SL2\" or \"PSL2\"", 0, "/group");
  Field f = detail::json_field(detail::member(j, "field", ""), "/field");
  const Json& ms = detail::member(j, "monodromies", "");
  if (!ms.is_array()) throw ParseError("monodromies must be an array", 0, "/monodromies");
  if (static_cast<long>(ms.size()) != 2 * r.genus)
    throw ParseError("expected " + std::to_string(2 * r.genus) + " monodromies, got " + std::to_string(ms.size()), 0,
                     "/monodromies");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string p = "/monodromies/" + std::to_string(i);
    Mat2 m = matrix_from_json(ms[i], f, p);
    if (!m.is_sl2()) throw ParseError("matrix does not have determinant 1", 0, p);
    r.monodromies.push_back(m);
  }
  return r;
}

inline Json to_json(const SurfaceRep& r) {
  Json ms = Json::array();
  for (const Mat2& m : r.monodromies) ms.push_back(matrix_entries_json(m));
  return {{"genus", r.genus}, {"group", to_string(r.group)}, {"field", r.field().name()}, {"monodromies", ms}};
}

}  // namespace wittcls

#endif  // WITTCLS_IO_HPP
