#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "alimit/alpha_theory.hpp"
#include "alimit/common.hpp"
#include "alimit/diagonalize.hpp"
#include "alimit/formats.hpp"
#include "alimit/parallel.hpp"
#include "alimit/shearer.hpp"
#include "alimit/tree.hpp"
#include "reference_data.hpp"

namespace alimit::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exit codes beyond 0 (success) and 1 (a requested assertion failed).
constexpr int kUsageError = 2;
constexpr int kRefused = 3;

std::vector<double> default_alphas() { return {0.0, 1e-5, 1e-4, 1e-3, 1e-2, 0.1}; }

std::vector<double> paper_alphas(std::string_view which) {
  std::vector<double> out;
  auto add = [&](const auto& table) {
    for (const auto& row : table) out.push_back(row.alpha);
  };
  if (which == "tau0" || which == "all") add(reference::kTau0Table);
  if (which == "tau2" || which == "all") add(reference::kTau2Table);
  if (which == "tau1" || which == "all") add(reference::kTau1Table);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> columns_for(std::string_view which) {
  if (which == "tau0") return {"tau0"};
  if (which == "tau2") return {"tau2"};
  if (which == "tau1") return {"tau1", "tau1_prime"};
  return {"tau0", "tau1", "tau1_prime", "tau2"};
}

struct Grid {
  std::optional<double> start, stop, step;
  std::optional<std::size_t> count;
  std::vector<double> alphas;

  bool given() const { return start || stop || step || count; }

  // Grid points from start to stop inclusive, by count or by step.
  std::vector<double> points() const {
    if (!start || !stop) throw std::invalid_argument("a grid needs both --start and --stop");
    if (step && count) throw std::invalid_argument("give either --step or --count, not both");
    if (*stop < *start) throw std::invalid_argument("grid --stop is below --start");
    std::size_t n;
    if (count) {
      n = *count;
    } else {
      const double s = step.value_or(0.01);
      if (!(s > 0.0)) throw std::invalid_argument("grid --step must be positive");
      n = static_cast<std::size_t>(std::floor((*stop - *start) / s + 1e-9)) + 1;
    }
    if (n == 0) throw std::invalid_argument("grid is empty");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (count)
        out[i] = n == 1 ? *start : *start + (*stop - *start) * static_cast<double>(i) / (n - 1);
      else
        out[i] = *start + static_cast<double>(i) * *step;
    }
    return out;
  }
};

void add_grid_options(CLI::App* app, Grid& g) {
  app->add_option("--alphas", g.alphas, "Explicit alpha values")->delimiter(',');
  app->add_option("--start", g.start, "Grid start");
  app->add_option("--stop", g.stop, "Grid stop (inclusive)");
  app->add_option("--step", g.step, "Grid step");
  app->add_option("--count", g.count, "Number of grid points");
}

// Output either goes to --out or to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error(fmt::format("cannot open {} for writing", path));
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

TableFormat require_format(const std::string& s) {
  if (auto f = parse_table_format(s)) return *f;
  throw std::invalid_argument(fmt::format("unknown format '{}' (csv, json or text)", s));
}

void check_digits(int digits) {
  if (digits < 1 || digits > 17) throw std::invalid_argument("--digits must be in 1..17");
}

std::vector<ThresholdRow> compute_rows(const std::vector<double>& alphas, bool with_regime) {
  std::vector<ThresholdRow> rows(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    rows[i] = threshold_row(alphas[i]);
    if (with_regime) rows[i].regime = sweep_label(alphas[i]);
  });
  return rows;
}

// ---- tables ---------------------------------------------------------------

struct TablesOptions {
  std::string which = "all";
  bool paper_rows = false;
  Grid grid;
  std::string format = "csv";
  std::string out;
  int digits = kDefaultDigits;
};

int cmd_tables(const TablesOptions& o, std::ostream& out) {
  check_digits(o.digits);
  const TableFormat fmt = require_format(o.format);
  std::vector<double> alphas;
  if (o.paper_rows)
    alphas = paper_alphas(o.which);
  else if (!o.grid.alphas.empty())
    alphas = o.grid.alphas;
  else if (o.grid.given())
    alphas = o.grid.points();
  else
    alphas = default_alphas();
  Sink sink(o.out, out);
  write_threshold_rows(sink.get(), compute_rows(alphas, false), columns_for(o.which), fmt,
                       o.digits);
  return 0;
}

// ---- sweep ----------------------------------------------------------------

struct SweepOptions {
  Grid grid;
  bool segments = false;
  std::string format = "csv";
  std::string out;
  int digits = kDefaultDigits;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  check_digits(o.digits);
  const TableFormat fmt = require_format(o.format);
  std::vector<double> alphas;
  if (!o.grid.alphas.empty()) {
    alphas = o.grid.alphas;
  } else if (o.grid.given()) {
    alphas = o.grid.points();
  } else {
    Grid g;
    g.start = 0.0;
    g.stop = 0.99;
    g.count = 100;
    alphas = g.points();
  }
  for (double a : alphas)
    if (!(a >= 0.0 && a < 1.0))
      throw std::invalid_argument(fmt::format("sweep alphas must lie in [0, 1), got {}", a));
  std::sort(alphas.begin(), alphas.end());

  auto rows = compute_rows(alphas, true);
  if (o.segments)
    for (auto& row : rows) row.segments = sweep_segments(row.alpha, o.digits);
  Sink sink(o.out, out);
  write_threshold_rows(sink.get(), rows, columns_for("all"), fmt, o.digits);
  return 0;
}

// ---- shearer --------------------------------------------------------------

struct ShearerOptions {
  double alpha = 0.0;
  double lambda = 0.0;
  std::size_t k = 100;
  std::vector<std::size_t> ks;
  bool exploratory = false;
  std::string format = "text";
  std::string out;
  int digits = kDefaultDigits;
};

std::string join_numbers(const std::vector<double>& v, int digits) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i], digits);
  }
  return s + "]";
}

int cmd_shearer(const ShearerOptions& o, std::ostream& out, std::ostream& err) {
  check_digits(o.digits);
  const TableFormat fmt = require_format(o.format);
  if (!(o.lambda > 2.0)) throw std::invalid_argument("lambda must exceed 2");
  if (o.k == 0) throw std::invalid_argument("k must be at least 1");
  const ReportMode mode = o.exploratory ? ReportMode::Exploratory : ReportMode::Checked;

  std::vector<std::size_t> ks = o.ks.empty() ? std::vector<std::size_t>{o.k} : o.ks;
  ConvergenceReport rep;
  try {
    rep = convergence_report(o.alpha, o.lambda, ks, mode);
  } catch (const RegimeError& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  }

  const std::size_t k = o.ks.empty() ? o.k : *std::max_element(ks.begin(), ks.end());
  const auto seq = build_shearer(o.alpha, o.lambda, k);
  const auto window = verify_window(seq);
  std::optional<PairingReport> pairing;
  if (rep.regime == Regime::Interval) pairing = pairing_check(seq);

  bool ok = true;
  if (!o.exploratory) {
    ok = rep.violations.empty() && window.ok && (!pairing || pairing->ok);
    if (rep.regime != Regime::Interval && !window.below_unit_bound.empty()) ok = false;
  }

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  const int d = o.digits;
  if (fmt == TableFormat::Csv) {
    write_convergence_csv(os, rep, d);
  } else if (fmt == TableFormat::Json) {
    Json j = to_json(seq);
    j["report"] = to_json(rep);
    Json w{{"ok", window.ok}, {"below_unit_bound", window.below_unit_bound}};
    Json viol = Json::array();
    for (const auto& v : window.violations)
      viol.push_back({{"index", v.index}, {"kind", violation_name(v.kind)}, {"value", v.value}});
    w["violations"] = viol;
    j["window"] = w;
    if (pairing) {
      Json pairs = Json::array();
      for (const auto& p : pairing->pairs)
        pairs.push_back(
            {{"left", p.left}, {"right", p.right}, {"product", p.product}, {"ok", p.ok}});
      j["pairing"] = {{"bound", pairing->bound},
                      {"ok", pairing->ok},
                      {"truncated", pairing->truncated},
                      {"max_zero_run", pairing->max_zero_run},
                      {"pairs", pairs}};
    }
    os << j.dump(2) << '\n';
  } else {
    const auto& p = seq.params;
    os << kFormatHeader << '\n';
    os << fmt::format("alpha = {}  lambda = {}  k = {}\n", format_exact(o.alpha),
                      format_exact(o.lambda), k);
    os << fmt::format("regime: {}{}{}\n", regime_name(rep.regime),
                      rep.boundary ? " (boundary lambda = tau2)" : "",
                      o.exploratory ? " [exploratory: nothing asserted]" : "");
    os << fmt::format("delta = {}  theta' = {}  window = ({}, {})\n", format_number(p.delta(), d),
                      format_number(p.theta_prime(), d),
                      format_number(p.theta_prime() - p.delta(), d),
                      format_number(p.theta_prime(), d));
    os << "r = " << caterpillar_notation(seq.r) << '\n';
    os << "b = " << join_numbers(seq.b, d) << '\n';
    for (const auto& s : rep.samples) {
      os << fmt::format(
          "k = {}: rho = {}  gap = {}  sigma = {}  C/k = {}  Q_k = {}{}\n", s.k,
          format_exact(s.rho), format_number(s.gap, d), format_number(s.sigma, d),
          format_number(s.c_over_k, d), format_number(s.qk, d), s.qk_saturated ? " (saturated)" : "");
    }
    os << fmt::format("window: {}", window.ok ? "ok" : "VIOLATED");
    for (const auto& v : window.violations)
      os << fmt::format(" [b_{} {} {}]", v.index, violation_name(v.kind), format_number(v.value, d));
    if (!window.below_unit_bound.empty())
      os << fmt::format("; {} entries at or below -1 + alpha", window.below_unit_bound.size());
    os << '\n';
    if (pairing) {
      os << fmt::format("pairing (bound (1-alpha)^2 = {}): {}; longest zero run {}, {} pairs "
                        "truncated at k\n",
                        format_number(pairing->bound, d), pairing->ok ? "ok" : "VIOLATED",
                        pairing->max_zero_run, pairing->truncated);
      for (const auto& pr : pairing->pairs)
        os << fmt::format("  b_{} b_{} = {} {}\n", pr.left, pr.right, format_exact(pr.product),
                          pr.ok ? "<" : ">=");
    }
    for (const auto& v : rep.violations) os << "violation: " << v << '\n';
  }
  if (!ok) err << "one or more invariants failed\n";
  return ok ? 0 : 1;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const std::string& suite, std::ostream& out) {
  std::vector<CheckResult> results;
  auto add = [&](std::vector<CheckResult> r) {
    results.insert(results.end(), r.begin(), r.end());
  };
  if (suite == "inertia" || suite == "all") add(verify_inertia());
  if (suite == "identities" || suite == "all") add(verify_identities());
  if (suite == "examples" || suite == "all") add(verify_examples());
  bool ok = true;
  for (const auto& r : results) {
    out << (r.ok ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.ok;
  }
  out << fmt::format("{} of {} checks passed\n",
                     std::count_if(results.begin(), results.end(), [](auto& r) { return r.ok; }),
                     results.size());
  return ok ? 0 : 1;
}

// ---- spectral-radius --------------------------------------------------------

struct RadiusOptions {
  std::string edges;
  double alpha = 0.0;
  double tol = 1e-12;
  std::size_t root = 1;
  std::optional<double> diag_shift;
  std::string diag_out;
};

int cmd_spectral_radius(const RadiusOptions& o, std::ostream& out) {
  std::ifstream in(o.edges);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", o.edges));
  const RootedTree tree = read_edge_list(in, o.root);
  const auto m = a_alpha_weights(tree, o.alpha);
  const auto r = spectral_radius(m, o.tol);
  out << kFormatHeader << '\n';
  out << fmt::format("n = {}  alpha = {}\n", m.size(), format_exact(o.alpha));
  out << fmt::format("rho = {}\n", format_exact(r.value));
  out << fmt::format("bracket = [{}, {}]  rounds = {}  converged = {}\n", format_exact(r.lower),
                     format_exact(r.upper), r.iterations, r.converged ? "yes" : "no");
  if (o.diag_shift) {
    const DiagResult d = diagonalize(m, *o.diag_shift);
    const std::string text = to_json(d).dump(2) + "\n";
    if (o.diag_out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.diag_out, std::ios::binary);
      if (!f) throw std::runtime_error(fmt::format("cannot open {} for writing", o.diag_out));
      f << text;
    }
    out << fmt::format("inertia of A + ({})I: pos = {} neg = {} zero = {}\n",
                       format_exact(*o.diag_shift), d.n_pos, d.n_neg, d.n_zero);
  }
  return r.converged ? 0 : 1;
}

// Streams CLI11 help and error output to the given sinks.
int report_parse_error(CLI::App& app, const CLI::ParseError& e, std::ostream& out,
                       std::ostream& err) {
  const int code = app.exit(e, out, err);
  return code == 0 ? 0 : kUsageError;
}

}  // namespace

ThresholdRow threshold_row(double alpha) {
  ThresholdRow row;
  row.alpha = alpha;
  if (auto p = threshold_point(ThresholdKind::Tau0, alpha)) row.tau0 = Cell::of(p->value);
  if (auto p = threshold_point(ThresholdKind::Tau2, alpha)) row.tau2 = Cell::of(p->value);
  if (auto p = threshold_point(ThresholdKind::Tau1Prime, alpha)) {
    row.tau1_prime = Cell::of(p->value);
    row.tau1 = row.tau0;
  }
  return row;
}

std::string sweep_label(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) return "unknown";
  if (alpha >= 0.5) return "unknown";
  if (alpha >= alpha_star().first) return "interval-II";
  const double t1p = tau1_prime(alpha);
  const double t2 = tau2(alpha);
  return t1p >= t2 * (1.0 - 1e-9) ? "interval-I" : "gap";
}

std::string sweep_segments(double alpha, int digits) {
  const std::string label = sweep_label(alpha);
  if (label == "unknown") return "";
  if (label == "interval-II") return fmt::format("[{},inf)", format_number(tau2(alpha), digits));
  const auto iv = tau1_interval(alpha);
  if (label == "interval-I") return fmt::format("[{},inf)", format_number(iv.tau1, digits));
  return fmt::format("[{},{});[{},inf)", format_number(iv.tau1, digits),
                     format_number(iv.tau1_prime, digits), format_number(tau2(alpha), digits));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral limit points of A_alpha matrices of caterpillars and starlike trees",
               "alimit"};
  app.require_subcommand(1);

  TablesOptions tables;
  auto* t = app.add_subcommand("tables", "Threshold tables for tau0, tau2 and [tau1, tau1')");
  t->add_option("which", tables.which, "tau0, tau2, tau1 or all")
      ->check(CLI::IsMember({"tau0", "tau2", "tau1", "all"}));
  t->add_flag("--paper-rows", tables.paper_rows, "Use the published alpha rows");
  add_grid_options(t, tables.grid);
  t->add_option("--format", tables.format, "csv, json or text");
  t->add_option("--out", tables.out, "Output file (default stdout)");
  t->add_option("--digits", tables.digits, "Significant digits");

  ShearerOptions sh;
  auto* s = app.add_subcommand("shearer", "Build the alpha-Shearer caterpillar and diagnose it");
  s->add_option("-a,--alpha", sh.alpha, "alpha in [0, 1)")->required();
  s->add_option("-l,--lambda", sh.lambda, "Target lambda > 2")->required();
  s->add_option("-k", sh.k, "Spine length");
  s->add_option("--ks", sh.ks, "Several spine lengths for the convergence report")
      ->delimiter(',');
  s->add_flag("--exploratory", sh.exploratory, "Report without asserting anything");
  s->add_option("--format", sh.format, "text, json or csv");
  s->add_option("--out", sh.out, "Output file (default stdout)");
  s->add_option("--digits", sh.digits, "Significant digits");

  SweepOptions sw;
  auto* w = app.add_subcommand("sweep", "Per-alpha thresholds and regime labels");
  add_grid_options(w, sw.grid);
  w->add_flag("--segments", sw.segments, "Add the proven limit-point segments");
  w->add_option("--format", sw.format, "csv, json or text");
  w->add_option("--out", sw.out, "Output file (default stdout)");
  w->add_option("--digits", sw.digits, "Significant digits");

  std::string suite = "all";
  auto* v = app.add_subcommand("verify", "Run the invariant suites");
  v->add_option("suite", suite, "inertia, identities, examples or all")
      ->check(CLI::IsMember({"inertia", "identities", "examples", "all"}));

  RadiusOptions rad;
  auto* r = app.add_subcommand("spectral-radius", "Spectral radius of A_alpha of an edge-list tree");
  r->add_option("--edges", rad.edges, "Edge-list file")->required();
  r->add_option("--alpha", rad.alpha, "alpha in [0, 1]")->required();
  r->add_option("--tol", rad.tol, "Bracket width")->check(CLI::PositiveNumber);
  r->add_option("--root", rad.root, "1-based root vertex");
  r->add_option("--diag-shift", rad.diag_shift, "Also diagonalize A + xI at this x");
  r->add_option("--diag-out", rad.diag_out, "Write the DiagResult JSON here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return report_parse_error(app, e, out, err);
  }

  try {
    if (t->parsed()) return cmd_tables(tables, out);
    if (s->parsed()) return cmd_shearer(sh, out, err);
    if (w->parsed()) return cmd_sweep(sw, out);
    if (v->parsed()) return cmd_verify(suite, out);
    if (r->parsed()) return cmd_spectral_radius(rad, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace alimit::cli
