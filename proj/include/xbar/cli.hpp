#pragma once

// Command-line frontend. Every command reads JSON payloads (inline or
// @file), writes one response document to `out`, and reports failures as an
// error envelope on `err`.

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xbar/serialize.hpp"

namespace xbar::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kDomainError = 2, kParseError = 3, kUnknownCommand = 4 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"phi",          "phi-inv", "act",     "equiv",  "stab",
                                              "fsigma",       "ray-limit", "gamma-member", "reduce", "section",
                                              "omega",        "ortho",   "sample-px"};
  return names;
}

namespace detail {

struct Options {
  unsigned long p = 2;
  std::optional<std::size_t> n;
  std::optional<std::size_t> e;
  std::optional<std::uint64_t> seed;
  std::string point, z, g, sigma, seminorm, monomial, monomial_point, box, piece, root, dir, c1, c2, vectors, poly,
      omega, kind = "rational", bound;
  std::size_t count = 20;
};

inline std::string read_payload(const std::string& flag, const std::string& text) {
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw ParseError(flag, "cannot read file " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return text;
}

inline json parse_payload(const std::string& flag, const std::string& text) {
  if (text.empty()) throw ParseError(flag, "missing required payload");
  try {
    return json::parse(read_payload(flag, text));
  } catch (const json::parse_error& e) {
    throw ParseError(flag, e.what());
  }
}

// Dimension carried by a payload, or 0 when it cannot be read off.
inline std::size_t rows_of(const json& j) { return j.is_array() ? j.size() : 0; }

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  json run(const std::string& cmd) {
    if (cmd == "phi") return phi();
    if (cmd == "phi-inv") return phi_inv();
    if (cmd == "act") return act();
    if (cmd == "equiv") return equiv();
    if (cmd == "stab") return stab();
    if (cmd == "fsigma") return fsigma();
    if (cmd == "ray-limit") return ray_limit_cmd();
    if (cmd == "gamma-member") return gamma_member();
    if (cmd == "reduce") return reduce();
    if (cmd == "section") return section();
    if (cmd == "omega") return omega();
    if (cmd == "ortho") return ortho();
    if (cmd == "sample-px") return sample_px();
    throw ParseError(cmd, "unknown command");
  }

  const std::optional<PrimeContext>& context() const { return ctx_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  json payload(const char* flag, const std::string& text) { return parse_payload(flag, text); }

  // Fixes the context from --n/--e, falling back to the payload dimension.
  const PrimeContext& fix(std::size_t inferred_n, std::size_t inferred_e = 1) {
    std::size_t n = o_.n.value_or(inferred_n);
    std::size_t e = o_.e.value_or(inferred_e);
    if (o_.n && inferred_n != 0 && inferred_n != *o_.n && strict_n_)
      fail(Errc::DimensionMismatch, "--n disagrees with the payload dimension");
    if (n == 0) throw ParseError("--n", "dimension not given and not inferable");
    ctx_.emplace(o_.p, n, e);
    return *ctx_;
  }

  ApartmentPoint point(const char* flag, const json& j) {
    auto d = io::decode_point(j, ctx_->n(), flag);
    if (d.regauged) warnings_.push_back(std::string(flag) + ": re-gauged to x_min(I) = 0");
    return d.point;
  }

  std::size_t point_n(const json& j) {
    strict_n_ = false;  // a point only bounds n from below
    return io::point_dimension_hint(j);
  }

  json phi() {
    json pj = payload("--point", o_.point);
    fix(point_n(pj));
    ApartmentPoint x = point("--point", pj);
    return json{{"seminorm", io::encode(phi_from_apartment(x, *ctx_))}};
  }

  json phi_inv() {
    json sj = payload("--seminorm", o_.seminorm);
    fix(rows_of(sj.contains("basis") ? sj["basis"] : json()));
    DiagonalSeminorm g = io::decode_seminorm(sj, *ctx_, "--seminorm");
    return json{{"point", io::encode(phi_inverse(g))}};
  }

  json act() {
    json gj = payload("--g", o_.g);
    fix(rows_of(gj));
    KMatrix g = io::decode_matrix(gj, "--g");
    if (!g.is_square() || g.rows() != ctx_->n()) fail(Errc::DimensionMismatch, "g must be n x n");
    if (!o_.seminorm.empty()) {
      BuildingPoint b(io::decode_seminorm(payload("--seminorm", o_.seminorm), *ctx_, "--seminorm"));
      return json{{"building", io::encode(act_group(g, b))}};
    }
    ApartmentPoint x = point("--point", payload("--point", o_.point));
    return json{{"building", io::encode(from_chart(ChartPoint{g, x}, *ctx_))}};
  }

  json equiv() {
    json a = payload("--c1", o_.c1), b = payload("--c2", o_.c2);
    fix(a.contains("g") ? rows_of(a["g"]) : 0);
    ChartPoint c1 = io::decode_chart(a, ctx_->n(), "--c1");
    ChartPoint c2 = io::decode_chart(b, ctx_->n(), "--c2");
    return json{{"equivalent", chart_equivalent(c1, c2, *ctx_)}};
  }

  json stab() {
    json gj = payload("--g", o_.g);
    fix(rows_of(gj));
    KMatrix g = io::decode_matrix(gj, "--g");
    if (!g.is_square() || g.rows() != ctx_->n()) fail(Errc::DimensionMismatch, "g must be n x n");
    ApartmentPoint x = point("--point", payload("--point", o_.point));
    return json{{"in_stabilizer", in_stabilizer_P_x(g, x, *ctx_)}};
  }

  json fsigma() {
    json sj = payload("--sigma", o_.sigma);
    if (!sj.is_array() || sj.empty()) throw ParseError("--sigma", "expected a nonempty array of points");
    std::size_t n = 0;
    for (const auto& x : sj) n = std::max(n, point_n(x));
    fix(n);
    std::vector<ApartmentPoint> sigma;
    for (std::size_t k = 0; k < sj.size(); ++k) sigma.push_back(point("--sigma", sj[k]));
    Root a = io::decode_root(payload("--root", o_.root), ctx_->n(), "--root");
    json out{{"f", io::encode(f_sigma(sigma, a))}};
    if (!o_.omega.empty()) {
      Rational w = io::decode_rational(payload("--omega", o_.omega), "--omega");
      out["in_U"] = in_U_a_sigma(ElementaryUnipotent{a, w}, sigma, *ctx_);
    }
    return out;
  }

  json ray_limit_cmd() {
    json dj = payload("--dir", o_.dir);
    fix(rows_of(dj));
    KVector d = io::decode_vector(dj, "--dir");
    ApartmentPoint x0 = point("--point", payload("--point", o_.point));
    return json{{"limit", io::encode(ray_limit(x0, d))}};
  }

  json gamma_member() {
    json pj = payload("--point", o_.point);
    json bj = payload("--box", o_.box);
    fix(bj.contains("lo") ? rows_of(bj["lo"]) + 1 : point_n(pj));
    ApartmentPoint y = point("--point", pj);
    OpenBox box = io::decode_box(bj, ctx_->n(), "--box");
    Piece I = io::decode_piece(payload("--piece", o_.piece), ctx_->n(), "--piece");
    return json{{"member", gamma_membership(y, box, I)}};
  }

  json reduce() {
    if (o_.kind == "rational") {
      json zj = payload("--z", o_.z);
      fix(rows_of(zj));
      KVector z = io::decode_vector(zj, "--z");
      if (z.size() != ctx_->n()) fail(Errc::DimensionMismatch, "z needs n entries");
      return json{{"building", io::encode(r_reduce_rational(z, *ctx_))}};
    }
    if (o_.kind == "L") {
      json zj = payload("--z", o_.z);
      std::size_t e = (zj.is_array() && !zj.empty() && zj[0].is_array()) ? zj[0].size() : 1;
      fix(rows_of(zj), e);
      LFunctional z = io::decode_functional(zj, *ctx_, "--z");
      return json{{"building", io::encode(r_reduce_L_point(z))}};
    }
    if (o_.kind == "monomial") {
      json mj = payload("--monomial-point", o_.monomial_point);
      fix(mj.contains("basis") ? rows_of(mj["basis"]) : 0);
      MonomialPoint P = io::decode_monomial_point(mj, *ctx_, "--monomial-point");
      return json{{"building", io::encode(r_reduce_monomial(P))}};
    }
    throw ParseError("--kind", "expected rational, L or monomial");
  }

  json section() {
    json sj = payload("--seminorm", o_.seminorm);
    fix(sj.contains("basis") ? rows_of(sj["basis"]) : 0);
    BuildingPoint b = io::decode_building(sj, *ctx_, "--seminorm");
    MonomialPoint P = j_section(b);
    json out{{"monomial_point", io::encode(P)}};
    if (!o_.poly.empty()) {
      Polynomial f = io::decode_polynomial(payload("--poly", o_.poly), ctx_->n(), "--poly");
      out["alpha"] = io::encode(alpha_evaluate(P, f));
    }
    return out;
  }

  json omega() {
    json zj = payload("--z", o_.z);
    std::size_t e = (zj.is_array() && !zj.empty() && zj[0].is_array()) ? zj[0].size() : 1;
    fix(rows_of(zj), e);
    LFunctional z = io::decode_functional(zj, *ctx_, "--z");
    return json{{"in_omega", in_omega(z)}};
  }

  json ortho() {
    json vj = payload("--vectors", o_.vectors);
    fix(vj.is_array() && !vj.empty() ? rows_of(vj[0]) : 0);
    auto us = io::decode_vectors(vj, "--vectors");
    DiagonalSeminorm ambient = o_.seminorm.empty()
                                   ? DiagonalSeminorm::standard(*ctx_, std::vector<LogValue>(ctx_->n(), LogValue::one()))
                                   : io::decode_seminorm(payload("--seminorm", o_.seminorm), *ctx_, "--seminorm");
    return json{{"vectors", io::encode(orthogonalize(us, ambient))}};
  }

  json sample_px() {
    if (!o_.seed) throw ParseError("--seed", "sample-px requires an explicit --seed");
    json pj = payload("--point", o_.point);
    fix(point_n(pj));
    ApartmentPoint x = point("--point", pj);
    SamplerBounds bounds;
    if (!o_.bound.empty()) {
      json bj = payload("--bound", o_.bound);
      if (bj.is_number_unsigned()) {
        bounds.factors = bj.get<std::size_t>();
      } else if (bj.is_object()) {
        if (bj.contains("factors")) bounds.factors = bj["factors"].get<std::size_t>();
        if (bj.contains("spread")) bounds.spread = bj["spread"].get<long>();
      } else {
        throw ParseError("--bound", "expected a factor count or {\"factors\", \"spread\"}");
      }
    }
    json mats = json::array();
    for (const auto& g : sample_P_x_generators(x, *ctx_, o_.count, bounds, *o_.seed)) mats.push_back(io::encode(g));
    return json{{"matrices", mats}};
  }

  Options o_;
  std::optional<PrimeContext> ctx_;
  std::vector<std::string> warnings_;
  bool strict_n_ = true;
};

inline void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--p", o.p, "prime p (default 2)");
  sub.add_option("--n", o.n, "dimension n; inferred from the payload when omitted");
  sub.add_option("--e", o.e, "ramification index e of L");
  sub.add_option("--seed", o.seed, "seed for randomized commands");
}

inline json error_envelope(const std::string& cmd, const std::optional<PrimeContext>& ctx, const std::string& code,
                           const std::string& message) {
  json out{{"status", "error"}, {"command", cmd}, {"code", code}, {"message", message}};
  if (ctx) out["config"] = io::encode(*ctx);
  return out;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto& names = command_names();
  if (args.empty() || std::find(names.begin(), names.end(), args.front()) == names.end()) {
    if (!args.empty() && (args.front() == "--help" || args.front() == "-h")) {
      out << "usage: xbar <command> [options]\ncommands:";
      for (const auto& n : names) out << ' ' << n;
      out << "\nrun `xbar <command> --help` for the options of a command\n";
      return kOk;
    }
    err << detail::error_envelope(args.empty() ? "" : args.front(), std::nullopt, "UnknownCommand",
                                  args.empty() ? "no command given" : "unknown command '" + args.front() + "'")
               .dump()
        << '\n';
    return kUnknownCommand;
  }
  const std::string cmd = args.front();

  detail::Options o;
  CLI::App app{"xbar " + cmd, "xbar " + cmd};
  detail::add_common(app, o);
  app.add_option("--point", o.point, "ApartmentPoint document");
  app.add_option("--z", o.z, "functional: rationals, or LScalar coefficient arrays");
  app.add_option("--g", o.g, "rational matrix, row-major");
  app.add_option("--sigma", o.sigma, "array of ApartmentPoint documents");
  app.add_option("--seminorm", o.seminorm, "DiagonalSeminorm document");
  app.add_option("--monomial", o.monomial, "MonomialElement document");
  app.add_option("--monomial-point", o.monomial_point, "MonomialPoint document");
  app.add_option("--box", o.box, "OpenBox document");
  app.add_option("--piece", o.piece, "piece I as one-based indices");
  app.add_option("--root", o.root, "root [i, j]");
  app.add_option("--dir", o.dir, "ray direction");
  app.add_option("--c1", o.c1, "first ChartPoint");
  app.add_option("--c2", o.c2, "second ChartPoint");
  app.add_option("--vectors", o.vectors, "array of vectors");
  app.add_option("--count", o.count, "number of samples");
  app.add_option("--bound", o.bound, "sampler bound: factor count or {\"factors\", \"spread\"}");
  app.add_option("--poly", o.poly, "polynomial document");
  app.add_option("--omega", o.omega, "root-group parameter");
  app.add_option("--kind", o.kind, "reduce: rational, L or monomial");

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::vector<std::string> reversed(rest.rbegin(), rest.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << detail::error_envelope(cmd, std::nullopt, "ParseError", e.what()).dump() << '\n';
    return kParseError;
  }

  detail::Runner runner(o);
  try {
    json result;
    // --monomial with --point selects the apartment action of N.
    if (cmd == "act" && !o.monomial.empty()) {
      json pj = detail::parse_payload("--point", o.point);
      json mj = detail::parse_payload("--monomial", o.monomial);
      std::size_t n = o.n.value_or(detail::rows_of(mj.contains("perm") ? mj["perm"] : json()));
      PrimeContext ctx(o.p, n, o.e.value_or(1));
      auto x = io::decode_point(pj, n, "--point");
      MonomialElement m = io::decode_monomial(mj, n, "--monomial");
      json doc{{"status", "ok"}, {"command", cmd}, {"config", io::encode(ctx)},
               {"result", {{"point", io::encode(act_monomial(m, x.point))}}}};
      if (x.regauged) doc["warnings"] = json::array({"--point: re-gauged to x_min(I) = 0"});
      out << doc.dump() << '\n';
      return kOk;
    }
    result = runner.run(cmd);
    json doc{{"status", "ok"}, {"command", cmd}, {"config", io::encode(*runner.context())}, {"result", result}};
    if (!runner.warnings().empty()) doc["warnings"] = runner.warnings();
    out << doc.dump() << '\n';
    return kOk;
  } catch (const ParseError& e) {
    err << detail::error_envelope(cmd, runner.context(), "ParseError", e.what()).dump() << '\n';
    return kParseError;
  } catch (const Error& e) {
    err << detail::error_envelope(cmd, runner.context(), std::string(e.code_name()), e.what()).dump() << '\n';
    return kDomainError;
  } catch (const json::exception& e) {
    err << detail::error_envelope(cmd, runner.context(), "ParseError", e.what()).dump() << '\n';
    return kParseError;
  }
}

}  // namespace xbar::cli
