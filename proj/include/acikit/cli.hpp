#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "acikit/diagonal.hpp"
#include "acikit/parse.hpp"
#include "acikit/rees.hpp"
#include "acikit/seqcheck.hpp"

namespace acikit::cli {

using json = nlohmann::json;

inline constexpr const char* version = "0.1.0";

enum Exit : int { ok = 0, mismatch = 1, usage = 2 };

/// Usage or resource problem, reported with exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

inline std::string fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

struct Options {
  std::string command;
  std::string ideal_path;  // empty or "-" reads stdin
  std::string field;       // overrides the file header when set
  std::string order;
  int max_degree = 30;
  int threads = 1;
  std::string json_path;

  // per command
  bool compare = false;
  int s_max = 3;
  int i_max = -1;
  int t = 5;
  bool note_order = false;
  std::string matrix_path;
  std::string multiplier = "1";
  int c = -1, e = -1;
  int jmax = -1;
  int identities = 0;
};

struct Context {
  const Options& opt;
  std::istream& in;
  std::ostream& out;
  std::string input_text;
  std::string field_name;
  std::string order_name;
};

inline json betti_json(const BettiTable& b) {
  json a = json::array();
  for (const auto& [k, m] : b.entries()) a.push_back({{"step", k.first}, {"shift", k.second}, {"count", m}});
  return a;
}

inline json claim(int computed, std::optional<int> formula = std::nullopt, std::optional<int> paper = std::nullopt) {
  json j{{"computed", computed}, {"formula", formula ? json(*formula) : json(nullptr)}};
  if (paper) j["paper_expected"] = *paper;
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline RingHeader apply_overrides(RingHeader h, const Options& o) {
  if (!o.field.empty()) {
    auto probe = parse_ring_header("ring: x over " + o.field);
    h.field = probe.field;
    h.prime = probe.prime;
  }
  if (o.order == "lex")
    h.order = MonomialOrder::lex();
  else if (o.order == "grevlex")
    h.order = MonomialOrder::grevlex();
  else if (!o.order.empty())
    throw UsageError("unknown order '" + o.order + "'");
  return h;
}

template <class Fn>
int with_field(const RingHeader& h, Fn&& fn) {
  if (h.field == "QQ") return fn(Rationals{});
  return fn(PrimeField(h.prime));
}

template <CoefficientField F>
struct InputIdeal {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> gens;
};

template <CoefficientField F>
InputIdeal<F> build_ideal(const IdealText& text, const RingHeader& h, F field) {
  InputIdeal<F> r;
  r.ring = Ring<F>::make(std::move(field), h.variables, {}, h.order);
  for (const auto& g : text.generators) {
    auto p = parse_polynomial(r.ring, g);
    if (p.is_zero()) throw UsageError("generator '" + g + "' is zero");
    if (!p.is_homogeneous()) throw UsageError("generator '" + g + "' is not homogeneous");
    r.gens.push_back(std::move(p));
  }
  if (r.gens.empty()) throw UsageError("ideal file lists no generators");
  return r;
}

inline std::string load_input(Context& ctx, const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream s;
    s << ctx.in.rdbuf();
    return s.str();
  }
  return read_file(path);
}

template <CoefficientField F>
json gens_json(const std::vector<Polynomial<F>>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(f.to_string());
  return a;
}

template <CoefficientField F>
std::optional<int> pfaffian_order(const std::vector<Polynomial<F>>& fs) {
  if (fs.size() != 4 || !detail::is_pfaffian_family(fs)) return std::nullopt;
  const int nv = static_cast<int>(fs[0].ring()->nvars());
  for (int t = 5;; ++t)
    if (3 * (t - 3) + (t - 3) * (t - 4) / 2 == nv) return t;
}

// ---- commands on an input ideal ----

template <CoefficientField F>
int cmd_resolve(Context& ctx, const InputIdeal<F>& I, json& j) {
  Ideal<F> J(I.ring, I.gens);
  auto r = minimal_resolution(J);
  auto rep = regularity_from(r.betti, static_cast<int>(I.ring->nvars()), krull_dimension(J));
  std::optional<int> reg_formula;
  if (auto t = pfaffian_order(I.gens)) reg_formula = *t - 4;
  ctx.out << r.betti.resolution_string("B") << "\n" << r.betti.grid();
  ctx.out << "reg " << rep.reg << "  pd " << rep.pd << "  depth " << rep.depth << "  dim " << rep.dim << "\n";
  j["betti"] = betti_json(r.betti);
  j["resolution"] = r.betti.resolution_string("B");
  j["regularity"] = claim(rep.reg, reg_formula, reg_formula);
  j["pd"] = claim(rep.pd);
  j["depth"] = claim(rep.depth, static_cast<int>(I.ring->nvars()) - rep.pd);
  j["dim"] = claim(rep.dim);
  j["cohen_macaulay"] = rep.depth == rep.dim;
  j["minimal"] = r.complex.is_minimal();
  return ok;
}

template <CoefficientField F>
int cmd_rees(Context& ctx, const InputIdeal<F>& I, json& j) {
  auto data = rees_data(I.gens);
  auto th = theorem_resolution(I.gens, data.linear_type);
  ctx.out << "linear type: " << (data.linear_type ? "yes" : "no") << "\n";
  ctx.out << th.label << " resolution (mapping cone):\n" << th.betti.resolution_string("S") << "\n";
  j["linear_type"] = data.linear_type;
  j["rees_ideal"] = gens_json(data.rees.gens());
  j["sym_ideal"] = gens_json(data.sym.gens());
  j["theorem"] = {{"label", th.label},
                  {"betti", betti_json(th.betti)},
                  {"length", claim(static_cast<int>(th.complex.length()), th.pd_predicted)}};
  auto rep = regularity_from(th.betti, static_cast<int>(th.ring->nvars()), 0);
  std::optional<int> rx;
  if (auto t = pfaffian_order(I.gens)) rx = *t % 2 ? 4 * (*t / 2) - 4 : 4 * (*t / 2) - 6;
  j["reg_x"] = claim(rep.reg_x, rx, rx);
  j["reg_y"] = claim(rep.reg_y, rx ? std::optional<int>(0) : std::nullopt, rx ? std::optional<int>(0) : std::nullopt);
  ctx.out << "reg_x " << rep.reg_x << "  reg_y " << rep.reg_y << "\n";
  if (!ctx.opt.compare) return ok;
  auto direct = minimal_resolution(data.linear_type ? data.rees : data.sym).betti;
  bool equal = direct == th.betti;
  j["direct"] = betti_json(direct);
  j["equal"] = equal;
  j["first_difference"] = th.betti.first_difference(direct);
  if (equal) {
    ctx.out << "tables equal\n";
    return ok;
  }
  ctx.out << "tables differ: " << th.betti.first_difference(direct) << "\n";
  return mismatch;
}

template <CoefficientField F>
int cmd_powers(Context& ctx, const InputIdeal<F>& I, json& j) {
  auto rep = verify_powers(I.gens, ctx.opt.s_max, ctx.opt.i_max);
  const auto& st = rep.setup;
  auto t = pfaffian_order(I.gens);
  json setup{{"d_sequence", st.d_sequence},
             {"regular_prefix", st.regular_prefix},
             {"max_last", st.max_last},
             {"reg_inequality", st.reg_inequality},
             {"reg_quotient", claim(st.reg_quotient, t ? std::optional<int>(*t - 4) : std::nullopt)},
             {"reg_bound", st.reg_bound},
             {"degrees", st.degrees},
             {"holds", st.holds()}};
  j["setup"] = setup;
  auto cells = [&](const std::vector<PowersCell>& v) {
    json a = json::array();
    for (const auto& c : v) {
      json x{{"s", c.s}, {"i", c.i}, {"formula", c.formula}, {"status", to_string(c.status)}};
      x["computed"] = c.computed ? json(*c.computed) : json(nullptr);
      if (t && st.holds() && c.i >= 0) x["paper_expected"] = pfaffian_powers_closed_form(*t, c.s);
      if (!c.note.empty()) x["note"] = c.note;
      a.push_back(x);
    }
    return a;
  };
  j["cells"] = cells(rep.cells);
  j["colon_lemma"] = cells(rep.lemma);
  j["clean"] = rep.clean();
  ctx.out << "setup: d-sequence " << st.d_sequence << ", regular prefix " << st.regular_prefix << ", d_n maximal "
          << st.max_last << ", reg(A/I) = " << st.reg_quotient << " < " << st.reg_bound << ": " << st.reg_inequality
          << "\n";
  auto line = [&](const PowersCell& c) {
    ctx.out << std::setw(3) << c.s << std::setw(4) << c.i << std::setw(9) << c.formula << std::setw(10)
            << (c.computed ? std::to_string(*c.computed) : "-") << "  " << to_string(c.status) << "\n";
  };
  ctx.out << "  s   i  formula  computed  status\n";
  for (const auto& c : rep.cells) line(c);
  ctx.out << "colon lemma (i = -1):\n";
  for (const auto& c : rep.lemma) line(c);
  return rep.clean() ? ok : mismatch;
}

template <CoefficientField F>
json seq_json(const SequenceCheck<F>& r) {
  json j{{"holds", r.holds}};
  if (!r.holds) {
    j["index"] = r.index;
    j["witness"] = r.witness ? json(r.witness->to_string()) : json(nullptr);
  }
  return j;
}

template <CoefficientField F>
int cmd_check_seq(Context& ctx, const InputIdeal<F>& I, json& j) {
  auto reg = is_regular_sequence(I.gens);
  auto ds = is_d_sequence(I.gens);
  auto pre = I.gens.size() > 1 ? is_regular_sequence(std::vector<Polynomial<F>>(I.gens.begin(), I.gens.end() - 1))
                               : SequenceCheck<F>{};
  j["regular"] = seq_json(reg);
  j["d_sequence"] = seq_json(ds);
  j["regular_prefix"] = seq_json(pre);
  j["height"] = claim(height(I.gens));
  auto say = [&](const char* what, const SequenceCheck<F>& r) {
    ctx.out << what << ": " << (r.holds ? "yes" : "no");
    if (!r.holds) ctx.out << " (fails at i=" << r.index << ", witness " << r.witness->to_string() << ")";
    ctx.out << "\n";
  };
  say("regular sequence", reg);
  say("d-sequence", ds);
  say("regular prefix", pre);
  if (ctx.opt.identities > 0 && ds.holds) {
    auto rep = dseq_identities(I.gens, ctx.opt.identities);
    json a = json::array();
    for (const auto& c : rep.checks) a.push_back({{"identity", c.identity}, {"i", c.i}, {"s", c.s}, {"holds", c.holds}});
    j["identities"] = a;
    ctx.out << "d-sequence identities up to s=" << ctx.opt.identities << ": " << (rep.all_hold() ? "hold" : "FAIL")
            << "\n";
    if (!rep.all_hold()) return mismatch;
  }
  return ok;
}

template <CoefficientField F>
int cmd_diagonal(Context& ctx, const InputIdeal<F>& I, json& j) {
  if (ctx.opt.c < 0 || ctx.opt.e < 0) throw UsageError("diagonal needs --c and --e");
  DiagonalSpec D(ctx.opt.c, ctx.opt.e);
  auto r = diagonal_report(I.gens, D);
  j["family"] = r.family;
  j["status"] = r.verified_hypotheses ? "VERIFIED_HYPOTHESES" : "UNVERIFIED_HYPOTHESES";
  j["cm_rees"] = r.cm_rees;
  j["rees_depth"] = claim(r.rees_depth);
  j["rees_dim"] = claim(r.rees_dim, static_cast<int>(I.ring->nvars()) + 1);
  j["koszul_c_min"] = r.koszul ? json(rational_string(r.koszul->c_min)) : json(nullptr);
  if (r.koszul) {
    j["koszul"] = {{"gamma", rational_string(r.koszul->gamma)},
                   {"gamma_alt", rational_string(r.koszul->gamma_alt)},
                   {"generic", rational_string(r.koszul->generic)},
                   {"family_constant", r.koszul->family_constant}};
  } else {
    j["koszul_note"] = r.koszul_note;
  }
  j["cm_threshold"] = D.e > 0 ? json(r.cm.threshold) : json(nullptr);
  if (D.e > 0)
    j["cm"] = {{"alpha", r.cm.alpha}, {"beta", r.cm.beta}, {"de", r.cm.de}, {"u", r.cm.u}, {"d", r.cm.d}, {"m", r.cm.m}};
  j["delta"] = {D.c, D.e};
  j["clears"] = {{"koszul", r.clears_koszul}, {"cm", r.clears_cm}};
  ctx.out << "family " << r.family << (r.verified_hypotheses ? "" : " (UNVERIFIED_HYPOTHESES)") << "\n";
  ctx.out << "Rees algebra Cohen-Macaulay: " << (r.cm_rees ? "yes" : "no") << " (depth " << r.rees_depth << ", dim "
          << r.rees_dim << ")\n";
  if (r.koszul)
    ctx.out << "Koszul for c >= " << rational_string(r.koszul->c_min) << ", e > 0: Δ=(" << D.c << "," << D.e << ") "
            << (r.clears_koszul ? "clears" : "does not clear") << "\n";
  else
    ctx.out << "Koszul bound: " << r.koszul_note << "\n";
  if (D.e > 0)
    ctx.out << "Cohen-Macaulay for c > " << r.cm.threshold << ": " << (r.clears_cm ? "clears" : "does not clear")
            << "\n";
  return ok;
}

template <CoefficientField F>
int cmd_oracle_tor(Context& ctx, const InputIdeal<F>& I, json& j) {
  Ideal<F> J(I.ring, I.gens);
  auto b = betti_numbers(J);
  int jmax = ctx.opt.jmax;
  if (jmax < 0)
    for (const auto& [k, m] : b.entries()) jmax = std::max(jmax, k.second[0]);
  auto o = tor_oracle_table(J, jmax);
  bool equal = o == b;
  j["oracle"] = betti_json(o);
  j["resolution"] = betti_json(b);
  j["jmax"] = jmax;
  j["equal"] = equal;
  ctx.out << "Tor oracle up to degree " << jmax << ":\n" << o.grid();
  ctx.out << (equal ? "agrees with the minimal resolution\n"
                    : "differs from the minimal resolution: " + o.first_difference(b) + "\n");
  return equal ? ok : mismatch;
}

template <CoefficientField F>
int cmd_ci_plus_one(Context& ctx, const InputIdeal<F>& I, json& j) {
  if (I.gens.size() < 2) throw UsageError("ci-plus-one needs the complete intersection followed by g");
  std::vector<Polynomial<F>> J(I.gens.begin(), I.gens.end() - 1);
  auto g = ci_plus_one(J, I.gens.back());
  auto colon = gb::colon(Ideal<F>(I.ring, J), I.gens.back());
  j["generators"] = gens_json(g.fs);
  j["colon"] = gens_json(gb::minimal_generators(colon));
  j["height"] = claim(height(g.fs));
  j["mu"] = claim(static_cast<int>(g.fs.size()));
  ctx.out << format_ideal_text(I.ring, g.fs);
  return ok;
}

// ---- generators of ideal files ----

template <CoefficientField F>
int cmd_pfaffian(Context& ctx, F field, json& j) {
  auto g = ctx.opt.note_order ? (ctx.opt.t == 6 ? cubic_third_ideal<F>(field)
                                                : throw UsageError("--note-order is only defined for t = 6"))
                              : aci_grade3_ideal<F>(ctx.opt.t, field);
  j["t"] = ctx.opt.t;
  j["degrees"] = g.degrees();
  j["generators"] = gens_json(g.fs);
  ctx.out << format_ideal_text(g.ring, g.fs);
  return ok;
}

template <CoefficientField F>
int cmd_hilbert_burch(Context& ctx, const std::string& text, const RingHeader& h, F field, json& j) {
  auto R = Ring<F>::make(std::move(field), h.variables, {}, h.order);
  auto it = parse_ideal_text(text);
  if (it.generators.size() != 3) throw UsageError("matrix file needs 3 rows of 'p, q'");
  std::vector<std::vector<Polynomial<F>>> Z;
  for (const auto& row : it.generators) {
    auto k = row.find(',');
    if (k == std::string::npos || row.find(',', k + 1) != std::string::npos)
      throw UsageError("matrix row '" + row + "' needs exactly two entries");
    Z.push_back({parse_polynomial(R, row.substr(0, k)), parse_polynomial(R, row.substr(k + 1))});
  }
  auto g = hilbert_burch_ideal(Z, parse_polynomial(R, ctx.opt.multiplier));
  j["generators"] = gens_json(g.fs);
  j["degrees"] = g.degrees();
  ctx.out << format_ideal_text(R, g.fs);
  return ok;
}

inline json manifest(const Context& ctx, double ms) {
  return {{"command", ctx.opt.command},
          {"input_hash", fnv1a64(ctx.input_text)},
          {"field", ctx.field_name},
          {"order", ctx.order_name},
          {"degree_cap", ctx.opt.max_degree},
          {"threads", ctx.opt.threads},
          {"wall_time_ms", ms},
          {"version", version}};
}

inline int dispatch(Context& ctx, json& j) {
  const auto& o = ctx.opt;
  if (o.command == "pfaffian-aci") {
    auto h = apply_overrides(RingHeader{}, o);
    ctx.input_text = "pfaffian-aci t=" + std::to_string(o.t) + (o.note_order ? " note-order" : "");
    ctx.field_name = h.field == "QQ" ? "QQ" : "Fp:" + std::to_string(h.prime);
    ctx.order_name = h.order.name();
    return with_field(h, [&](auto field) { return cmd_pfaffian(ctx, field, j); });
  }
  const std::string path = o.command == "hilbert-burch" ? o.matrix_path : o.ideal_path;
  if (o.command == "hilbert-burch" && path.empty()) throw UsageError("hilbert-burch needs --matrix");
  ctx.input_text = load_input(ctx, path);
  auto text = parse_ideal_text(ctx.input_text);
  auto h = apply_overrides(text.header, o);
  ctx.field_name = h.field == "QQ" ? "QQ" : "Fp:" + std::to_string(h.prime);
  ctx.order_name = h.order.name();
  if (o.command == "hilbert-burch")
    return with_field(h, [&](auto field) { return cmd_hilbert_burch(ctx, ctx.input_text, h, field, j); });
  return with_field(h, [&](auto field) -> int {
    auto I = build_ideal(text, h, field);
    j["input"] = gens_json(I.gens);
    if (o.command == "resolve") return cmd_resolve(ctx, I, j);
    if (o.command == "rees") return cmd_rees(ctx, I, j);
    if (o.command == "powers") return cmd_powers(ctx, I, j);
    if (o.command == "check-seq") return cmd_check_seq(ctx, I, j);
    if (o.command == "diagonal") return cmd_diagonal(ctx, I, j);
    if (o.command == "oracle-tor") return cmd_oracle_tor(ctx, I, j);
    if (o.command == "ci-plus-one") return cmd_ci_plus_one(ctx, I, j);
    throw UsageError("unknown command " + o.command);
  });
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"acikit: resolutions, Rees algebras and regularity of almost complete intersections", "acikit"};
  app.set_version_flag("--version", version);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", o.field, "coefficient field, QQ or Fp:<prime>");
  app.add_option("--order", o.order, "monomial order, grevlex or lex");
  app.add_option("--max-degree", o.max_degree, "degree cap for Groebner bases and resolutions")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "worker budget")->check(CLI::PositiveNumber);
  app.add_option("--json", o.json_path, "write a JSON report here");

  auto ideal_opt = [&](CLI::App* s) { s->add_option("--ideal", o.ideal_path, "ideal file, '-' or omitted for stdin"); };
  auto* resolve = app.add_subcommand("resolve", "minimal free resolution, Betti table and regularity of B/I");
  ideal_opt(resolve);
  auto* rees = app.add_subcommand("rees", "Rees ideal and its mapping-cone resolution");
  ideal_opt(rees);
  rees->add_flag("--compare", o.compare, "also resolve the Rees ideal directly and compare");
  auto* powers = app.add_subcommand("powers", "check the regularity formula for powers");
  ideal_opt(powers);
  powers->add_option("--s-max", o.s_max, "largest power")->check(CLI::Range(2, 12));
  powers->add_option("--i-max", o.i_max, "largest prefix length i");
  auto* check = app.add_subcommand("check-seq", "regular sequence and d-sequence tests");
  ideal_opt(check);
  check->add_option("--identities", o.identities, "also check the d-sequence identities up to this power");
  auto* pf = app.add_subcommand("pfaffian-aci", "print the grade 3 Pfaffian ideal of order t");
  pf->add_option("--t", o.t, "order of the skew matrix")->required()->check(CLI::Range(5, 12));
  pf->add_flag("--note-order", o.note_order, "t = 6 with the cubic placed third");
  auto* hb = app.add_subcommand("hilbert-burch", "print the ideal of maximal minors of a 3 x 2 matrix");
  hb->add_option("--matrix", o.matrix_path, "matrix file: ring header, then 3 rows 'p, q'")->required();
  hb->add_option("--z", o.multiplier, "multiplier z");
  auto* cpo = app.add_subcommand("ci-plus-one", "check J + <g>; the last generator is g");
  ideal_opt(cpo);
  auto* dg = app.add_subcommand("diagonal", "Koszul and Cohen-Macaulay bounds for a diagonal (c, e)");
  ideal_opt(dg);
  dg->add_option("--c", o.c)->required()->check(CLI::NonNegativeNumber);
  dg->add_option("--e", o.e)->required()->check(CLI::NonNegativeNumber);
  auto* tor = app.add_subcommand("oracle-tor", "Betti numbers from Koszul homology, compared with the resolution");
  ideal_opt(tor);
  tor->add_option("--jmax", o.jmax, "largest internal degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }
  o.command = app.get_subcommands().front()->get_name();

  ScopedDegreeCap cap(o.max_degree);
  Context ctx{o, in, out, {}, {}, {}};
  json j;
  int code = usage;
  auto t0 = std::chrono::steady_clock::now();
  try {
    code = dispatch(ctx, j);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return usage;
  } catch (const Overflow& e) {
    err << "resource limit: " << e.what() << " (raise --max-degree)\n";
    return usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!o.json_path.empty()) {
    j["manifest"] = manifest(ctx, ms);
    j["exit_code"] = code;
    std::ofstream f(o.json_path);
    if (!f) {
      err << "error: cannot write '" << o.json_path << "'\n";
      return usage;
    }
    f << j.dump(2) << "\n";
  }
  return code;
}

}  // namespace acikit::cli
