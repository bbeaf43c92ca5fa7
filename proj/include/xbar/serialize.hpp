#pragma once

// JSON documents for every public type. Rationals are "num/den" strings,
// indices are one-based, LogValues are {"log": "a/b"} or "zero".

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "xbar/berkovich.hpp"

namespace xbar::io {

using nlohmann::json;

namespace detail {

inline std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
inline std::string at(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where, std::string("missing field '") + key + "'");
  return *it;
}

inline const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  return j;
}

inline std::size_t index_one_based(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer index");
  long long v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > n)
    throw ParseError(where, "index " + std::to_string(v) + " outside 1.." + std::to_string(n));
  return static_cast<std::size_t>(v - 1);
}

}  // namespace detail

// ---- scalars -------------------------------------------------------------

inline json encode(const Rational& r) { return to_string(r); }

inline Rational decode_rational(const json& j, const std::string& where = "") {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) throw ParseError(where, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where, e.what());
  }
}

inline json encode(const ExtRational& x) { return to_string(x); }

inline ExtRational decode_ext_rational(const json& j, const std::string& where = "") {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return ExtRational::pos_inf();
    if (s == "-inf") return ExtRational::neg_inf();
  }
  return ExtRational(decode_rational(j, where));
}

inline json encode(const LogValue& v) {
  if (v.is_zero()) return "zero";
  return json{{"log", to_string(v.log())}};
}

inline LogValue decode_log_value(const json& j, const std::string& where = "") {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "zero") return LogValue::zero();
    // Also accept a LogValue object embedded as a JSON string.
    json inner = json::parse(s, nullptr, false);
    if (inner.is_object()) return decode_log_value(inner, where);
    throw ParseError(where, "expected {\"log\": ...} or \"zero\"");
  }
  return LogValue::finite(decode_rational(detail::field(j, "log", where), detail::at(where, "log")));
}

inline json encode(const KVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

inline KVector decode_vector(const json& j, const std::string& where = "") {
  detail::array(j, where);
  KVector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(decode_rational(j[i], detail::at(where, i)));
  return v;
}

inline json encode(const std::vector<KVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(encode(v));
  return out;
}

inline std::vector<KVector> decode_vectors(const json& j, const std::string& where = "") {
  detail::array(j, where);
  std::vector<KVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_vector(j[i], detail::at(where, i)));
  return out;
}

/// Row-major.
inline json encode(const KMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(encode(m.row(i)));
  return out;
}

inline KMatrix decode_matrix(const json& j, const std::string& where = "") {
  auto rows = decode_vectors(j, where);
  if (rows.empty()) throw ParseError(where, "empty matrix");
  const std::size_t cols = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) throw ParseError(detail::at(where, i), "ragged matrix");
  return KMatrix::from_rows(rows, cols);
}

inline json encode(const LScalar& z) { return encode(z.coeffs()); }

inline LScalar decode_lscalar(const json& j, const PrimeContext& ctx, const std::string& where = "") {
  KVector c = decode_vector(j, where);
  if (c.size() != ctx.e()) throw ParseError(where, "expected " + std::to_string(ctx.e()) + " coefficients");
  return LScalar(std::move(c), ctx);
}

// ---- apartment -------------------------------------------------------------

inline json encode(const Piece& piece) {
  json out = json::array();
  for (auto i : piece) out.push_back(i + 1);
  return out;
}

inline Piece decode_piece(const json& j, std::size_t n, const std::string& where = "") {
  detail::array(j, where);
  Piece p;
  for (std::size_t k = 0; k < j.size(); ++k) p.push_back(detail::index_one_based(j[k], n, detail::at(where, k)));
  if (p.empty()) throw ParseError(where, "piece must be nonempty");
  return p;
}

inline json encode(const ApartmentPoint& x) {
  return json{{"I", encode(x.piece())}, {"x", encode(x.piece_values())}};
}

struct DecodedPoint {
  ApartmentPoint point;
  bool regauged;
};

/// Reads {"I": [...], "x": [...]} and enforces the gauge x_{min I} = 0.
/// `regauged` reports whether the input violated it.
inline DecodedPoint decode_point(const json& j, std::size_t n, const std::string& where = "") {
  Piece piece = decode_piece(detail::field(j, "I", where), n, detail::at(where, "I"));
  KVector values = decode_vector(detail::field(j, "x", where), detail::at(where, "x"));
  if (values.size() != piece.size()) throw ParseError(detail::at(where, "x"), "one coordinate per piece index required");
  Piece sorted = piece;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(detail::at(where, "I"), "repeated index in piece");
  ApartmentPoint x = ApartmentPoint::on_piece(n, piece, values);
  std::size_t min_pos = static_cast<std::size_t>(std::min_element(piece.begin(), piece.end()) - piece.begin());
  bool regauged = values[min_pos] != 0;
  return {x, regauged};
}

inline std::size_t point_dimension_hint(const json& j) {
  try {
    std::size_t n = 0;
    for (const auto& i : j.at("I")) n = std::max<std::size_t>(n, i.get<std::size_t>());
    return n;
  } catch (const std::exception&) {
    return 0;
  }
}

inline json encode(const Root& a) { return json::array({a.i + 1, a.j + 1}); }

inline Root decode_root(const json& j, std::size_t n, const std::string& where = "") {
  detail::array(j, where);
  if (j.size() != 2) throw ParseError(where, "a root is a pair [i, j]");
  std::size_t i = detail::index_one_based(j[0], n, detail::at(where, 0));
  std::size_t k = detail::index_one_based(j[1], n, detail::at(where, 1));
  if (i == k) throw ParseError(where, "a root needs distinct indices");
  return Root(i, k);
}

inline json encode(const MonomialElement& m) {
  json perm = json::array();
  for (auto w : m.perm()) perm.push_back(w + 1);
  return json{{"perm", perm}, {"trans", encode(m.trans())}};
}

inline MonomialElement decode_monomial(const json& j, std::size_t n, const std::string& where = "") {
  const json& pj = detail::array(detail::field(j, "perm", where), detail::at(where, "perm"));
  if (pj.size() != n) throw ParseError(detail::at(where, "perm"), "permutation needs n entries");
  Permutation w;
  for (std::size_t k = 0; k < n; ++k) w.push_back(detail::index_one_based(pj[k], n, detail::at(detail::at(where, "perm"), k)));
  KVector t = decode_vector(detail::field(j, "trans", where), detail::at(where, "trans"));
  if (t.size() != n) throw ParseError(detail::at(where, "trans"), "translation needs n entries");
  try {
    return MonomialElement(std::move(w), std::move(t));
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
}

inline json encode(const OpenBox& b) { return json{{"lo", encode(b.lo())}, {"hi", encode(b.hi())}}; }

inline OpenBox decode_box(const json& j, std::size_t n, const std::string& where = "") {
  KVector lo = decode_vector(detail::field(j, "lo", where), detail::at(where, "lo"));
  KVector hi = decode_vector(detail::field(j, "hi", where), detail::at(where, "hi"));
  if (lo.size() != n - 1 || hi.size() != n - 1) throw ParseError(where, "box bounds cover coordinates 2..n");
  return OpenBox(std::move(lo), std::move(hi));
}

// ---- seminorms and building --------------------------------------------------

inline json encode(const DiagonalSeminorm& g) {
  json values = json::array();
  for (const auto& v : g.values()) values.push_back(encode(v));
  return json{{"basis", encode(g.basis())}, {"values", values}};
}

inline std::vector<LogValue> decode_log_values(const json& j, const std::string& where) {
  detail::array(j, where);
  std::vector<LogValue> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_log_value(j[i], detail::at(where, i)));
  return out;
}

inline DiagonalSeminorm decode_seminorm(const json& j, const PrimeContext& ctx, const std::string& where = "",
                                        const char* values_key = "values") {
  KMatrix basis = decode_matrix(detail::field(j, "basis", where), detail::at(where, "basis"));
  auto values = decode_log_values(detail::field(j, values_key, where), detail::at(where, values_key));
  if (!basis.is_square() || basis.rows() != values.size())
    throw ParseError(where, "basis must be square with one value per column");
  return DiagonalSeminorm(ctx.p(), std::move(basis), std::move(values));
}

inline json encode(const BuildingPoint& b) {
  json out = encode(b.representative());
  out["kernel"] = encode(b.kernel());
  out["interior"] = b.is_interior();
  return out;
}

inline BuildingPoint decode_building(const json& j, const PrimeContext& ctx, const std::string& where = "") {
  return BuildingPoint(decode_seminorm(j, ctx, where));
}

inline json encode(const ChartPoint& c) { return json{{"g", encode(c.g)}, {"x", encode(c.x)}}; }

inline ChartPoint decode_chart(const json& j, std::size_t n, const std::string& where = "") {
  KMatrix g = decode_matrix(detail::field(j, "g", where), detail::at(where, "g"));
  if (!g.is_square() || g.rows() != n) throw ParseError(detail::at(where, "g"), "g must be n x n");
  auto x = decode_point(detail::field(j, "x", where), n, detail::at(where, "x"));
  return ChartPoint{std::move(g), std::move(x.point)};
}

// ---- berkovich ---------------------------------------------------------------

inline json encode(const Polynomial& f) {
  json out = json::array();
  for (const auto& [nu, c] : f.terms()) out.push_back(json{{"nu", nu}, {"c", encode(c)}});
  return out;
}

inline Polynomial decode_polynomial(const json& j, std::size_t n, const std::string& where = "") {
  detail::array(j, where);
  Polynomial f(n);
  std::vector<MultiIndex> seen;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = detail::at(where, k);
    const json& nj = detail::array(detail::field(j[k], "nu", w), detail::at(w, "nu"));
    if (nj.size() != n) throw ParseError(detail::at(w, "nu"), "multi-index needs n entries");
    MultiIndex nu;
    for (const auto& e : nj) {
      if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0))
        throw ParseError(detail::at(w, "nu"), "exponents must be nonnegative integers");
      nu.push_back(e.get<unsigned>());
    }
    if (std::find(seen.begin(), seen.end(), nu) != seen.end()) throw ParseError(w, "duplicate multi-index");
    seen.push_back(nu);
    f.add_term(nu, decode_rational(detail::field(j[k], "c", w), detail::at(w, "c")));
  }
  return f;
}

inline json encode(const MonomialPoint& P) {
  json radii = json::array();
  for (const auto& r : P.radii()) radii.push_back(encode(r));
  return json{{"basis", encode(P.basis())}, {"radii", radii}};
}

inline MonomialPoint decode_monomial_point(const json& j, const PrimeContext& ctx, const std::string& where = "") {
  DiagonalSeminorm g = decode_seminorm(j, ctx, where, "radii");
  return MonomialPoint(g.prime(), g.basis(), g.values());
}

inline json encode(const LFunctional& z) {
  json out = json::array();
  for (const auto& zi : z.entries()) out.push_back(encode(zi));
  return out;
}

inline LFunctional decode_functional(const json& j, const PrimeContext& ctx, const std::string& where = "") {
  detail::array(j, where);
  std::vector<LScalar> z;
  for (std::size_t i = 0; i < j.size(); ++i) z.push_back(decode_lscalar(j[i], ctx, detail::at(where, i)));
  return LFunctional(std::move(z), ctx);
}

inline json encode(const PrimeContext& ctx) { return json{{"p", ctx.p()}, {"n", ctx.n()}, {"e", ctx.e()}}; }

/// Structural equality of representations (same basis, same values).
inline bool same_representation(const DiagonalSeminorm& a, const DiagonalSeminorm& b) {
  return a.prime() == b.prime() && a.basis() == b.basis() && a.values() == b.values();
}

}  // namespace xbar::io
