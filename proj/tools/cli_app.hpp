#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperlab/calculus.hpp"
#include "hyperlab/figures.hpp"
#include "hyperlab/filters_json.hpp"
#include "hyperlab/hyperreal.hpp"

namespace hyperlab::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kDomain = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { SVG, CSV, JSON, Text };

struct Config {
  int series_window = 16;
  unsigned approx_digits = 50;
  std::string output_dir;
  std::optional<Format> format;  // unset: figures by file extension, reports as text
};

inline Format parse_format(const std::string& s) {
  std::string low;
  for (char c : s) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (low == "svg") return Format::SVG;
  if (low == "csv") return Format::CSV;
  if (low == "json") return Format::JSON;
  if (low == "text") return Format::Text;
  throw UsageError("format must be one of svg, csv, json, text; got '" + s + "'");
}

inline void apply_setting(Config& c, const std::string& key, const std::string& value) {
  auto positive = [&](int minimum) {
    try {
      std::size_t used = 0;
      long v = std::stol(value, &used);
      if (used == value.size() && v >= minimum) return static_cast<int>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(key + " must be an integer >= " + std::to_string(minimum) + "; got '" + value + "'");
  };
  if (key == "series_window") c.series_window = positive(4);
  else if (key == "approx_digits") c.approx_digits = static_cast<unsigned>(positive(20));
  else if (key == "output_dir") c.output_dir = value;
  else if (key == "format") c.format = parse_format(value);
  else throw UsageError("unknown config key '" + key + "'");
}

/// Flat `key = value` lines; '#' starts a comment.
inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot read '" + path + "'");
  Config c;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    apply_setting(c, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
  }
  return c;
}

namespace detail {

using hyperlab::detail::trim;

class Session {
 public:
  Session(Config config, std::string mode, std::ostream& out) : cfg_(std::move(config)), mode_(std::move(mode)), out_(out) {}

  const Config& config() const { return cfg_; }

  ExactSeriesBackend exact() const { return {cfg_.series_window, digits()}; }
  ApproxSeriesBackend approx() const { return {cfg_.series_window, digits()}; }
  unsigned digits() const { return std::max(cfg_.approx_digits, Decimal::kMinimumDigits); }

  /// Exact first; on ModeError fall back to decimals unless exact was asked for.
  template <class ExactFn, class ApproxFn>
  void exact_or_approx(ExactFn exact_fn, ApproxFn approx_fn) {
    if (mode_ != "approx") {
      try {
        exact_fn();
        return;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ModeError || mode_ == "exact") throw;
      }
    }
    approx_fn();
  }

  std::string tag() const { return " [approx " + std::to_string(cfg_.approx_digits) + " digits]"; }
  std::string show(const Rational& q) const { return to_string(q); }
  std::string show(const Decimal& d) const { return d.str(cfg_.approx_digits); }
  std::string show(const ApproxSeries& s) const { return s.str(); }
  void line(const std::string& s) { out_ << s << "\n"; }
  void approx_line(const std::string& s) { out_ << s << tag() << "\n"; }

  bool json() const { return cfg_.format == Format::JSON; }

  /// Writes a scene; the format comes from the config, else the extension.
  void write_scene(const PlotScene& scene, const std::string& out_path) {
    std::filesystem::path path(out_path);
    if (path.is_relative() && !cfg_.output_dir.empty()) path = std::filesystem::path(cfg_.output_dir) / path;
    SceneFormat fmt = SceneFormat::SVG;
    if (cfg_.format == Format::CSV) fmt = SceneFormat::CSV;
    else if (cfg_.format != Format::SVG && path.extension() == ".csv") fmt = SceneFormat::CSV;
    std::string bytes = render(scene, fmt);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("--out: cannot write '" + path.string() + "'");
    f << bytes;
    line("wrote " + path.string());
  }

 private:
  Config cfg_;
  std::string mode_;
  std::ostream& out_;
};

inline Rational rational_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(flag + ": expected a rational number such as 3, -1/2 or 0.25; got '" + text + "'");
  }
}

inline std::pair<std::string, Rational> binding_flag(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("--at: expected name=value; got '" + text + "'");
  std::string name = trim(text.substr(0, eq));
  if (name.empty()) throw UsageError("--at: missing variable name in '" + text + "'");
  return {name, rational_flag("--at", trim(text.substr(eq + 1)))};
}

// ---- calculus and evaluation -------------------------------------------

inline void cmd_eval(Session& s, const std::string& src, const std::string& backend, const std::vector<std::string>& at) {
  Expr e = parse(src);
  std::vector<std::pair<std::string, Rational>> given;
  for (const auto& b : at) given.push_back(binding_flag(b));

  if (backend == "real") {
    s.exact_or_approx(
        [&] {
          Bindings<Rational> env;
          for (auto& [k, v] : given) env[k] = v;
          s.line(s.show(evaluate(e, RealExactBackend{}, env)));
        },
        [&] {
          auto be = s.approx();
          Bindings<ApproxSeries> env;
          for (auto& [k, v] : given) env[k] = ApproxSeries::constant(be.coefficient(v), be.terms);
          s.approx_line(s.show(evaluate(e, be, env).standard_part()));
        });
  } else if (backend == "ratfunc") {
    Bindings<RatFunc> env{{"x", RatFunc::x()}};
    for (auto& [k, v] : given) env[k] = RatFunc(v);
    RatFunc r = evaluate(e, RatFuncBackend{}, env);
    s.line(r.str());
    s.line("classification: " + std::string(to_string(r.classify())));
    if (r.order() >= 0) s.line("standard part: " + to_string(r.standard_part()));
  } else {
    s.exact_or_approx(
        [&] {
          auto be = s.exact();
          Bindings<ExactSeries> env{{"e", be.epsilon()}};
          for (auto& [k, v] : given) env[k] = ExactSeries::constant(v, be.terms);
          s.line(evaluate(e, be, env).str());
        },
        [&] {
          auto be = s.approx();
          Bindings<ApproxSeries> env{{"e", be.epsilon()}};
          for (auto& [k, v] : given) env[k] = ApproxSeries::constant(be.coefficient(v), be.terms);
          s.approx_line(evaluate(e, be, env).str());
        });
  }
}

inline void cmd_diff(Session& s, const std::string& src, const std::string& at, int order, const std::string& var) {
  Expr e = parse(src);
  Rational x0 = rational_flag("--at", at);
  s.exact_or_approx(
      [&] {
        auto be = s.exact();
        s.line(s.show(order == 1 ? derivative(e, x0, be, var).value : nth_derivative(e, x0, order, be, var)));
      },
      [&] {
        auto be = s.approx();
        Decimal d0 = be.coefficient(x0);
        s.approx_line(s.show(order == 1 ? derivative(e, d0, be, var).value : nth_derivative(e, d0, order, be, var)));
      });
}

inline void cmd_taylor(Session& s, const std::string& src, const std::string& at, int order, const std::string& var) {
  Expr e = parse(src);
  Rational x0 = rational_flag("--at", at);
  s.exact_or_approx(
      [&] {
        auto a = taylor(e, x0, order, s.exact(), var);
        for (std::size_t k = 0; k < a.size(); ++k) s.line(std::to_string(k) + ": " + s.show(a[k]));
      },
      [&] {
        auto be = s.approx();
        auto a = taylor(e, be.coefficient(x0), order, be, var);
        for (std::size_t k = 0; k < a.size(); ++k) s.approx_line(std::to_string(k) + ": " + s.show(a[k]));
      });
}

inline void cmd_limit(Session& s, const std::string& src, const std::string& at, const std::string& side,
                      const std::string& var) {
  Expr e = parse(src);
  Rational x0 = rational_flag("--at", at);
  Side sd = side == "above" ? Side::Above : Side::Below;
  auto report = [&](const auto& r, bool approximate) {
    using K = typename std::decay_t<decltype(r)>::Kind;
    switch (r.kind) {
      case K::Finite:
        if (approximate) s.approx_line(s.show(*r.value));
        else s.line(s.show(*r.value));
        break;
      case K::PositiveInfinite: s.line("+infinity"); break;
      case K::NegativeInfinite: s.line("-infinity"); break;
      case K::NoLimit: s.line("NoLimit"); break;
    }
  };
  s.exact_or_approx([&] { report(limit_at(e, x0, sd, s.exact(), var), false); },
                    [&] {
                      auto be = s.approx();
                      report(limit_at(e, be.coefficient(x0), sd, be, var), true);
                    });
}

inline void cmd_compare(Session& s, const std::string& lhs, const std::string& rhs, const std::string& backend) {
  Expr a = parse(lhs), b = parse(rhs);
  if (backend == "ratfunc") {
    Bindings<RatFunc> env{{"x", RatFunc::x()}};
    s.line(std::string(to_string(compare(evaluate(a, RatFuncBackend{}, env), evaluate(b, RatFuncBackend{}, env)))));
  } else if (backend == "real") {
    Bindings<Rational> env;
    auto va = evaluate(a, RealExactBackend{}, env), vb = evaluate(b, RealExactBackend{}, env);
    s.line(std::string(to_string(va < vb ? Ordering::Less : vb < va ? Ordering::Greater : Ordering::Equal)));
  } else {
    s.exact_or_approx(
        [&] {
          auto be = s.exact();
          Bindings<ExactSeries> env{{"e", be.epsilon()}};
          s.line(std::string(to_string(series_compare(evaluate(a, be, env), evaluate(b, be, env)))));
        },
        [&] {
          auto be = s.approx();
          Bindings<ApproxSeries> env{{"e", be.epsilon()}};
          s.approx_line(std::string(to_string(series_compare(evaluate(a, be, env), evaluate(b, be, env)))));
        });
  }
}

// ---- ultrapower ----------------------------------------------------------

inline SetFamily read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--family: cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return family_from_json_text(buf.str());
}

inline void cmd_check_filter(Session& s, const std::string& path, std::optional<int> threshold) {
  auto report = check_filter(read_family(path), threshold);
  if (s.json()) s.line(to_json(report).dump(2));
  else s.line(trim(to_text(report)));
}

inline void cmd_check_ultrafilter(Session& s, const std::string& path) {
  auto report = check_ultrafilter(read_family(path));
  if (s.json()) s.line(to_json(report).dump(2));
  else s.line(trim(to_text(report)));
}

inline void cmd_classify(Session& s, const std::string& spec, long horizon) {
  SequenceSpec seq = parse_sequence(spec);
  ClassificationReport r = classify_sequence(seq, horizon);
  if (s.json()) {
    nlohmann::json j;
    j["heuristic"] = r.heuristic;
    j["choice_dependent"] = r.choice_dependent;
    j["cases"] = nlohmann::json::array();
    for (auto c : r.cases) j["cases"].push_back(std::string(to_string(c)));
    j["findings"] = nlohmann::json::array();
    for (const auto& f : r.findings) {
      nlohmann::json fj{{"case", std::string(to_string(f.which))}};
      if (f.decision_set) fj["decision_set"] = f.decision_set->str();
      if (f.value) fj["value"] = f.value->str();
      if (f.limit) fj["L"] = to_string(*f.limit);
      fj["infinitesimal_sign"] = f.infinitesimal_sign ? nlohmann::json(std::string(to_string(*f.infinitesimal_sign)))
                                                      : nlohmann::json("undetermined");
      if (r.heuristic) fj["support"] = f.support;
      j["findings"].push_back(fj);
    }
    j["notes"] = r.notes;
    s.line(j.dump(2));
    return;
  }
  s.line(std::string("heuristic: ") + (r.heuristic ? "true" : "false"));
  for (const auto& f : r.findings) {
    std::string text = "case " + std::string(to_string(f.which)) + ":";
    if (f.decision_set) text += " decision set " + f.decision_set->str() + ",";
    if (r.heuristic) text += " " + std::to_string(f.support) + " sampled terms,";
    if (f.value) text += " value " + f.value->str() + ",";
    if (f.limit) {
      text += " L = " + to_string(*f.limit) + ", infinitesimal part ";
      text += f.infinitesimal_sign ? std::string(to_string(*f.infinitesimal_sign)) : std::string("undetermined");
      text += ",";
    }
    text.pop_back();
    s.line(text);
  }
  for (const auto& n : r.notes) s.line("note: " + n);
}

inline void cmd_seq_compare(Session& s, const std::string& a, const std::string& b) {
  s.line(std::string(to_string(omega_compare(to_hyperreal(parse_sequence(a)), to_hyperreal(parse_sequence(b))))));
}

inline void cmd_extend(Session& s, const std::string& src, const std::string& spec, const std::string& var) {
  Hyperreal h = to_hyperreal(parse_sequence(spec));
  StarValue v = star_extend(parse(src), h, var, s.config().series_window, s.digits());
  if (auto p = std::get_if<Hyperreal>(&v)) s.line(p->str());
  else if (auto q = std::get_if<ExactSeries>(&v)) s.line(q->str() + "  (series in e = 1/ω)");
  else s.approx_line(std::get<ApproxSeries>(v).str() + "  (series in e = 1/ω)");
}

inline void cmd_member(Session& s, const std::string& interval, const std::string& spec) {
  s.line(std::string(to_string(star_set_membership(parse_interval(interval), parse_sequence(spec)))));
}

inline void cmd_search(Session& s, int universe) {
  auto found = enumerate_ultrafilters(universe);
  s.line("families satisfying (2)-(4) without the empty set: " + std::to_string(found.size()));
  for (const auto& fam : found) {
    auto r = check_ultrafilter(fam);
    s.line(r.generator ? "principal, generator {" + std::to_string(*r.generator) + "}" : "not principal");
  }
}

// ---- scenes --------------------------------------------------------------

inline void cmd_saw(Session& s, std::optional<long> teeth, bool hyper, const std::string& tooth, bool magnify,
                    const std::string& out) {
  if (!hyper) {
    if (!teeth) throw UsageError("--teeth is required unless --hyper is given");
    if (*teeth < 1) throw UsageError("--teeth must be at least 1; got " + std::to_string(*teeth));
    SawMeasures m = saw_limit_check(*teeth);
    s.line("vertices: " + std::to_string(2 * *teeth + 1));
    s.line("sup_deviation: " + to_string(m.sup_deviation));
    s.line("arc_length: " + to_string(m.arc_length));
    if (!out.empty()) s.write_scene(figure_finite_saw(*teeth), out);
    return;
  }
  if (tooth.empty()) throw UsageError("--tooth \"c,j\" is required with --hyper");
  HyperIndex k;
  try {
    k = parse_hyper_index(tooth);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw UsageError(std::string("--tooth: ") + e.what());
    throw;
  }
  HyperPoint2D start = luzin_saw_hyper(k, SawPhase::Start);
  s.line("tooth: k = " + k.str() + " (N = 1/e)");
  for (SawPhase phase : {SawPhase::Start, SawPhase::TopOfRiser, SawPhase::EndOfTread}) {
    HyperPoint2D p = luzin_saw_hyper(k, phase);
    RealPoint sh = shadow(p);
    std::string text = std::string(to_string(phase)) + ": (" + p.x.str("e") + ", " + p.y.str("e") + "), shadow (" +
                       to_string(sh.x) + ", " + to_string(sh.y) + ")";
    if (magnify) {
      RealPoint m = shadow(microscope2d(p, start, infinite_N()));
      text += ", magnified (" + to_string(m.x) + ", " + to_string(m.y) + ")";
    }
    s.line(text);
  }
  if (!out.empty()) s.write_scene(figure_magnified_tooth(k), out);
}

inline void cmd_blancmange(Session& s, long terms, const std::string& at, const std::string& probe, int samples,
                           const std::string& out) {
  s.line("terms: " + std::to_string(terms));
  if (!at.empty()) {
    BlancmangeValue b = blancmange(rational_flag("--at", at), terms);
    s.line("value: " + to_string(b.value));
    s.line("tail_bound: " + to_string(b.tail_bound));
  }
  if (!probe.empty()) {
    auto comma = probe.find(',');
    if (comma == std::string::npos) throw UsageError("--probe: expected X0,M; got '" + probe + "'");
    Rational x0 = rational_flag("--probe", trim(probe.substr(0, comma)));
    Rational m = rational_flag("--probe", trim(probe.substr(comma + 1)));
    if (!is_integer(m) || m < 1 || m > 4096) throw UsageError("--probe: M must be an integer in 1..4096");
    s.line("quotient: " + to_string(diff_quotient_probe(x0, m.convert_to<long>())));
  }
  if (!out.empty()) s.write_scene(figure_blancmange(terms, samples), out);
}

inline void cmd_triangle(Session& s, long levels, const std::string& at, const std::string& out) {
  if (!at.empty()) {
    Rational x = rational_flag("--at", at);
    for (long n = 1; n <= levels; ++n) s.line("s_" + std::to_string(n) + ": " + to_string(triangle_wave(n, x)));
  }
  for (long n = 1; n <= levels; ++n) s.line("sup s_" + std::to_string(n) + ": " + to_string(triangle_sup(n)));
  if (!out.empty()) s.write_scene(figure_triangle_waves(levels), out);
}

inline void cmd_microscope(Session& s, const std::string& src, const std::string& center, const std::string& var,
                           const std::string& out) {
  Expr e = parse(src);
  Rational c = rational_flag("--center", center);
  s.line("center: " + to_string(c));
  s.exact_or_approx([&] { s.line("slope: " + s.show(derivative(e, c, s.exact(), var).value)); },
                    [&] {
                      auto be = s.approx();
                      s.approx_line("slope: " + s.show(derivative(e, be.coefficient(c), be, var).value));
                    });
  s.write_scene(figure_microscope(e, c, var, s.config().series_window, s.digits()), out);
}

inline void cmd_figures(Session& s, const std::string& dir) {
  std::filesystem::path base(dir);
  s.write_scene(figure_finite_saw(8), (base / "finite_saw.svg").string());
  s.write_scene(figure_magnified_tooth({Rational(1, 2), 0}), (base / "magnified_tooth.svg").string());
  s.write_scene(figure_triangle_waves(6), (base / "triangle_waves.svg").string());
  s.write_scene(figure_blancmange(8, 256), (base / "blancmange.svg").string());
}

inline std::string hint(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotFinite: return "the standard part exists only for finite elements";
    case ErrorKind::ModeError: return "the value is irrational; rerun with --mode approx";
    case ErrorKind::NotAvailable: return "try another backend, e.g. --backend series";
    case ErrorKind::UndefinedTerm: return "override the offending terms, e.g. \"1/(n-3); 3=0\"";
    case ErrorKind::NotRepresentable: return "only rational functions of n with one value per decision set are definable";
    case ErrorKind::WindowTooSmall: return "raise series_window in the config or with --series-window";
    default: return {};
  }
}

}  // namespace detail

/// Entry point; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact infinitesimal arithmetic: fields with infinitesimals, series, ultrapowers and saw figures",
               "hyperlab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, mode = "auto", format, output_dir;
  std::optional<int> window, digits;
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--series-window", window, "series terms kept (>= 4)");
  app.add_option("--approx-digits", digits, "decimal digits printed in approximate mode (>= 20)");
  app.add_option("--output-dir", output_dir, "directory for relative output files");
  app.add_option("--format", format, "svg, csv, json or text");
  app.add_option("--mode", mode, "exact, approx, or auto (exact with decimal fallback)")
      ->check(CLI::IsMember({"auto", "exact", "approx"}));

  std::string expr, at, side = "above", lhs, rhs, var = "x", backend = "real";
  std::vector<std::string> bindings;
  int order = 1;

  auto* eval = app.add_subcommand("eval", "evaluate an expression");
  eval->add_option("--expr", expr, "expression")->required();
  eval->add_option("--backend", backend, "real, ratfunc or series")->check(CLI::IsMember({"real", "ratfunc", "series"}));
  eval->add_option("--at", bindings, "binding name=value (repeatable)");

  auto* diff = app.add_subcommand("diff", "derivative as the standard part of a difference quotient");
  diff->add_option("--expr", expr, "expression")->required();
  diff->add_option("--at", at, "point x0")->required();
  diff->add_option("--order", order, "derivative order")->check(CLI::Range(1, 64));
  diff->add_option("--var", var, "variable name");

  auto* tay = app.add_subcommand("taylor", "Taylor coefficients of f(x0 + e)");
  tay->add_option("--expr", expr, "expression")->required();
  tay->add_option("--at", at, "point x0")->required();
  tay->add_option("--order", order, "highest coefficient")->required()->check(CLI::Range(0, 256));
  tay->add_option("--var", var, "variable name");

  auto* lim = app.add_subcommand("limit", "one-sided limit as st(f(x0 +- e))");
  lim->add_option("--expr", expr, "expression")->required();
  lim->add_option("--at", at, "point x0")->required();
  lim->add_option("--side", side, "above or below")->check(CLI::IsMember({"above", "below"}));
  lim->add_option("--var", var, "variable name");

  std::string cmp_backend = "ratfunc";
  auto* cmp = app.add_subcommand("compare", "order two elements");
  cmp->add_option("--lhs", lhs, "left expression")->required();
  cmp->add_option("--rhs", rhs, "right expression")->required();
  cmp->add_option("--backend", cmp_backend, "ratfunc, series or real")
      ->check(CLI::IsMember({"ratfunc", "series", "real"}));

  auto* ultra = app.add_subcommand("ultra", "filters, ultrafilters and definable hyperreals");
  ultra->require_subcommand(1);
  std::string family, seq, seq_a, seq_b, interval;
  std::optional<int> threshold;
  long horizon = 100;
  int universe = 0;
  auto* cf = ultra->add_subcommand("check-filter", "check axioms (0)-(3) on a finite universe");
  cf->add_option("--family", family, "JSON family file")->required();
  cf->add_option("--threshold", threshold, "enable (1): complements smaller than T force decisiveness")
      ->check(CLI::NonNegativeNumber);
  auto* cu = ultra->add_subcommand("check-ultrafilter", "check axioms (0), (2)-(4) and principality");
  cu->add_option("--family", family, "JSON family file")->required();
  auto* cl = ultra->add_subcommand("classify", "tripartite classification of a sequence");
  cl->add_option("--seq", seq, "sequence")->required();
  cl->add_option("--horizon", horizon, "terms examined for sampled sequences (>= 100)")->check(CLI::Range(100L, 10'000'000L));
  auto* uc = ultra->add_subcommand("compare", "order the classes of two definable sequences");
  uc->add_option("--seq-a", seq_a, "first sequence")->required();
  uc->add_option("--seq-b", seq_b, "second sequence")->required();
  auto* ux = ultra->add_subcommand("extend", "apply f termwise to a definable sequence");
  ux->add_option("--expr", expr, "function of --var")->required();
  ux->add_option("--seq", seq, "sequence")->required();
  ux->add_option("--var", var, "variable name");
  auto* um = ultra->add_subcommand("member", "membership of a class in the extension of an interval");
  um->add_option("--interval", interval, "interval such as (0, 1) or [0, inf)")->required();
  um->add_option("--seq", seq, "sequence")->required();
  auto* us = ultra->add_subcommand("search", "all families on {1..n} satisfying (2)-(4) without the empty set");
  us->add_option("--universe", universe, "universe size")->required()->check(CLI::Range(1, 12));

  std::optional<long> teeth;
  bool hyper = false, magnify = false;
  std::string tooth, out_file;
  auto* saw = app.add_subcommand("saw", "finite and infinite saws");
  saw->add_option("--teeth", teeth, "number of teeth");
  saw->add_flag("--hyper", hyper, "use the saw with N = 1/e teeth");
  saw->add_option("--tooth", tooth, "tooth index \"c,j\" meaning c*N + j");
  saw->add_flag("--magnify", magnify, "view the tooth through the microscope with factor N");
  saw->add_option("--out", out_file, "figure file (.svg or .csv)");

  long terms = 8;
  std::string probe;
  int samples = 256;
  auto* bl = app.add_subcommand("blancmange", "partial sums of the blancmange series");
  bl->add_option("--terms", terms, "number of terms")->required()->check(CLI::Range(1L, 4096L));
  bl->add_option("--at", at, "evaluate at X");
  bl->add_option("--probe", probe, "difference quotient at X0 with step 2^-M, as X0,M");
  bl->add_option("--samples", samples, "samples per unit in the figure")->check(CLI::Range(1, 1 << 16));
  bl->add_option("--out", out_file, "figure file (.svg or .csv)");

  long levels = 6;
  auto* tri = app.add_subcommand("triangle", "triangle waves s_n");
  tri->add_option("--levels", levels, "highest level")->check(CLI::Range(1L, 16L));
  tri->add_option("--at", at, "evaluate at X");
  tri->add_option("--out", out_file, "figure file (.svg or .csv)");

  std::string center;
  auto* mic = app.add_subcommand("microscope", "magnify the graph of f at a point");
  mic->add_option("--expr", expr, "expression")->required();
  mic->add_option("--center", center, "point c")->required();
  mic->add_option("--var", var, "variable name");
  mic->add_option("--out", out_file, "figure file (.svg or .csv)")->required();

  std::string fig_dir;
  auto* figs = app.add_subcommand("figures", "write the saw, tooth, triangle and blancmange figures");
  figs->add_option("--out-dir", fig_dir, "directory")->required();

  std::vector<const char*> argv{"hyperlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    if (window) apply_setting(cfg, "series_window", std::to_string(*window));
    if (digits) apply_setting(cfg, "approx_digits", std::to_string(*digits));
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (!format.empty()) cfg.format = parse_format(format);
    detail::Session s(cfg, mode, out);

    if (eval->parsed()) detail::cmd_eval(s, expr, backend, bindings);
    else if (diff->parsed()) detail::cmd_diff(s, expr, at, order, var);
    else if (tay->parsed()) detail::cmd_taylor(s, expr, at, order, var);
    else if (lim->parsed()) detail::cmd_limit(s, expr, at, side, var);
    else if (cmp->parsed()) detail::cmd_compare(s, lhs, rhs, cmp_backend);
    else if (cf->parsed()) detail::cmd_check_filter(s, family, threshold);
    else if (cu->parsed()) detail::cmd_check_ultrafilter(s, family);
    else if (cl->parsed()) detail::cmd_classify(s, seq, horizon);
    else if (uc->parsed()) detail::cmd_seq_compare(s, seq_a, seq_b);
    else if (ux->parsed()) detail::cmd_extend(s, expr, seq, var);
    else if (um->parsed()) detail::cmd_member(s, interval, seq);
    else if (us->parsed()) detail::cmd_search(s, universe);
    else if (saw->parsed()) detail::cmd_saw(s, teeth, hyper, tooth, magnify, out_file);
    else if (bl->parsed()) detail::cmd_blancmange(s, terms, at, probe, samples, out_file);
    else if (tri->parsed()) detail::cmd_triangle(s, levels, at, out_file);
    else if (mic->parsed()) detail::cmd_microscope(s, expr, center, var, out_file);
    else if (figs->parsed()) detail::cmd_figures(s, fig_dir);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    if (auto h = detail::hint(e.kind()); !h.empty()) err << "hint: " << h << "\n";
    return kDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}

}  // namespace hyperlab::cli
