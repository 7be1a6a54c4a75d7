#include "szego/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include "szego/fixtures.hpp"
#include "szego/report.hpp"
#include "szego/symbol_io.hpp"
#include "szego/wiener_hopf.hpp"

namespace szego {

namespace {

struct Options {
  std::string example, params, symbol_file, n_range = "6..16", out = "json", out_dir = ".";
  double tol = 1e-12;
  std::string part = "psi";
  int grid = 512;
};

struct Input {
  Symbol symbol;
  std::optional<Fixture> fixture;
  nlohmann::json description;
};

Input load_input(const Options& o) {
  if (!o.example.empty() && !o.symbol_file.empty())
    throw ValidationError("give either --example or --symbol-file, not both");
  Input in;
  if (!o.example.empty()) {
    auto p = parse_params(o.params);
    in.fixture = make_fixture(o.example, p, std::min(o.tol, 1e-13));
    in.symbol = in.fixture->symbol;
    nlohmann::json pj = nlohmann::json::object();
    for (const auto& [k, v] : p) pj[k] = to_json(v);
    in.description = {{"example", o.example}, {"params", pj}};
  } else if (!o.symbol_file.empty()) {
    if (!o.params.empty()) throw ValidationError("--params only applies to --example");
    in.symbol = load_symbol_file(o.symbol_file);
    in.description = {{"symbol_file", o.symbol_file}};
  } else {
    throw ValidationError("one of --example or --symbol-file is required");
  }
  return in;
}

std::pair<int, int> parse_range(const std::string& s, int block_size) {
  static const std::regex re(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ValidationError("--n expects a..b, got '" + s + "'");
  int a = std::stoi(m[1]), b = std::stoi(m[2]);
  int cap = size_cap() / block_size;
  if (a < 3 || a >= b || b > cap)
    throw ValidationError(fmt::format("--n needs 3 <= a < b <= {} (size cap / block size)", cap));
  return {a, b};
}

std::set<std::string> parse_outputs(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item != "json" && item != "csv" && item != "svg") throw ValidationError("unknown output format '" + item + "'");
    out.insert(item);
  }
  return out;
}

struct Writer {
  std::filesystem::path dir;
  std::set<std::string> formats;
  std::string stem;
  std::ostream& out;

  bool wants(const std::string& f) const { return formats.count(f) != 0; }
  void put(const std::string& ext, const std::string& content) {
    if (!wants(ext)) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ValidationError("cannot create output directory " + dir.string());
    auto path = dir / (stem + "." + ext);
    write_atomic(path, content);
    fmt::print(out, "wrote {}\n", path.string());
  }
};

nlohmann::json base_header(const Options& o, const Symbol& s) {
  return reproducibility_header({{"series_tol", o.tol}, {"structure_rel_tol", 1e-10}, {"classify_band", 0.02}},
                                {{"n_range", o.n_range}, {"size_cap", size_cap()}, {"block_size", s.block_size()}});
}

nlohmann::json symbol_summary(const Symbol& s) {
  return {{"block_size", s.block_size()},
          {"k_min", s.k_min()},
          {"k_max", s.k_max()},
          {"coefficient_count", s.coefficients().size()},
          {"tail_bound", s.tail_bound()},
          {"exact_band", s.exact_band()}};
}

void require_gapped(const Symbol& s) {
  double smin = min_singular_on_grid(s, 1024);
  if (!(smin > 1e-8 * std::max(s.scale(), 1e-300)))
    throw HypothesisError(fmt::format("symbol is gapless: min singular value {:.3e} on the circle", smin));
}

int cmd_analyze(const Options& o, std::ostream& out) {
  auto in = load_input(o);
  const Symbol& s = in.symbol;
  auto [a, b] = parse_range(o.n_range, s.block_size());
  require_gapped(s);
  auto G = geometric_mean(s);
  auto ec = classify_E(s, a, b);
  auto idx = predict_zero_modes(s);
  Symbol inv = inverse_symbol(s, o.tol);
  auto rows = determinant_rows(s, a, b, G.G, &inv, PrefactorKernel::two_sided);

  nlohmann::json j;
  j["header"] = base_header(o, s);
  j["header"]["grid_sizes"]["geometric_mean"] = G.grid;
  j["input"] = in.description;
  j["symbol"] = symbol_summary(s);
  j["geometric_mean"] = to_json(G.G);
  j["e_classification"] = {{"class", to_string(ec.cls)}, {"tail_rate", ec.rate}};
  j["e_classification"]["E"] = ec.E ? to_json(*ec.E) : nlohmann::json(nullptr);

  int a_side = -1;
  if (s.k_max() <= 4 && s.k_max() >= 0) a_side = s.k_max();
  else if (s.k_min() >= -4 && s.k_min() <= 0) a_side = -s.k_min();
  if (a_side >= 0 && s.exact_band()) j["widom_E"] = to_json(widom_finite_E(s, a_side, o.tol));
  else j["widom_E"] = nullptr;

  nlohmann::json dets = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"n", r.n}, {"det_T", to_json(r.det_T)}, {"ratio", to_json(r.ratio)}};
    row["prefactor"] = r.prefactor ? to_json(*r.prefactor) : nlohmann::json(nullptr);
    row["t_n"] = r.t ? to_json(r.t->value()) : nlohmann::json(nullptr);
    dets.push_back(row);
  }
  j["determinants"] = dets;

  j["modified_asymptotics"] = nullptr;
  if (ec.cls == EClass::zero && idx.predicted_pairs && *idx.predicted_pairs == 1) {
    try {
      auto fit = verify_modified_asymptotics(s, a, b, PrefactorKernel::two_sided, o.tol);
      j["modified_asymptotics"] = {{"E_tilde", to_json(fit.E_tilde)},
                                   {"max_deviation", fit.max_deviation},
                                   {"prefactor_slope", fit.prefactor_slope},
                                   {"kernel", "two_sided"}};
    } catch (const PreconditionError& e) {
      j["modified_asymptotics"] = {{"error", e.what()}};
    }
  }
  j["topology"] = to_json(idx);
  try {
    j["zero_modes"] = to_json(zero_mode_report(s, a, b));
  } catch (const ConvergenceError& e) {
    j["zero_modes"] = {{"error", e.what()}};
  }
  if (in.fixture) {
    nlohmann::json orc = nlohmann::json::array();
    for (const auto& r : rows) {
      SignedLog want = in.fixture->oracle_det(r.n);
      orc.push_back({{"n", r.n}, {"oracle_det", to_json(want)},
                     {"rel_error", std::abs(r.det_T.value() / want.value() - 1.0)}});
    }
    j["oracle"] = {{"det_T", orc}, {"G", to_json(in.fixture->oracle_G)}};
  }

  fmt::print(out, "G = {:.12g}{:+.12g}i  E: {}  class: {}  predicted pairs: {}\n", G.G.value().real(),
             G.G.value().imag(), to_string(ec.cls), to_string(idx.cls),
             idx.predicted_pairs ? std::to_string(*idx.predicted_pairs) : "-");
  Writer w{o.out_dir, parse_outputs(o.out), "analyze", out};
  w.put("json", dump_json(j));
  w.put("csv", to_csv(asymptotics_csv(rows)));
  if (w.wants("svg")) {
    Series ratio{"log|det T_n / G^n|", {}, {}}, pref{"log|prefactor|", {}, {}};
    for (const auto& r : rows) {
      ratio.x.push_back(r.n);
      ratio.y.push_back(r.ratio.log_abs);
      if (r.prefactor) pref.x.push_back(r.n), pref.y.push_back(r.prefactor->log_abs);
    }
    w.put("svg", svg_line_chart("determinant asymptotics", "n", "log", {ratio, pref}));
  }
  return 0;
}

int cmd_det_scan(const Options& o, std::ostream& out) {
  auto in = load_input(o);
  const Symbol& s = in.symbol;
  auto [a, b] = parse_range(o.n_range, s.block_size());
  require_gapped(s);
  auto G = geometric_mean(s);
  CsvTable t;
  t.header = {"n", "log_abs_detTn", "phase_detTn", "log_abs_detCn", "phase_detCn", "log_abs_Gn", "phase_Gn",
              "log_abs_ratioT", "phase_ratioT", "log_abs_ratioC", "phase_ratioC"};
  nlohmann::json rows = nlohmann::json::array();
  Series sT{"log|det T_n / G^n|", {}, {}}, sC{"log|det C_n / G^n|", {}, {}};
  for (int n = a; n <= b; ++n) {
    SignedLog dT = log_det(build_toeplitz(s, n).data);
    SignedLog dC = log_det(build_circulant(s, n, CirculantMode::truncate).data);
    SignedLog Gn = G.G.pow(n), rT = dT / Gn, rC = dC / Gn;
    t.rows.push_back({double(n), dT.log_abs, std::arg(dT.phase), dC.log_abs, std::arg(dC.phase), Gn.log_abs,
                      std::arg(Gn.phase), rT.log_abs, std::arg(rT.phase), rC.log_abs, std::arg(rC.phase)});
    rows.push_back({{"n", n}, {"det_T", to_json(dT)}, {"det_C", to_json(dC)}, {"G_n", to_json(Gn)},
                    {"ratio_T", to_json(rT)}, {"ratio_C", to_json(rC)}});
    sT.x.push_back(n), sT.y.push_back(rT.log_abs);
    sC.x.push_back(n), sC.y.push_back(rC.log_abs);
  }
  nlohmann::json j{{"header", base_header(o, s)}, {"input", in.description}, {"symbol", symbol_summary(s)},
                   {"geometric_mean", to_json(G.G)}, {"rows", rows}};
  fmt::print(out, "det-scan n={}..{}  G = {:.12g}{:+.12g}i\n", a, b, G.G.value().real(), G.G.value().imag());
  Writer w{o.out_dir, parse_outputs(o.out), "det_scan", out};
  w.put("json", dump_json(j));
  w.put("csv", to_csv(t));
  if (w.wants("svg")) w.put("svg", svg_line_chart("det T_n and det C_n", "n", "log ratio", {sT, sC}));
  return 0;
}

int cmd_indices(const Options& o, std::ostream& out) {
  auto in = load_input(o);
  auto idx = predict_zero_modes(in.symbol);
  nlohmann::json j{{"header", base_header(o, in.symbol)}, {"input", in.description}, {"topology", to_json(idx)}};
  fmt::print(out, "class {}  kitaev {}  winding {}  predicted pairs {}\n", to_string(idx.cls),
             idx.kitaev ? std::to_string(*idx.kitaev) : "-", idx.winding ? std::to_string(*idx.winding) : "-",
             idx.predicted_pairs ? std::to_string(*idx.predicted_pairs) : "-");
  Writer w{o.out_dir, parse_outputs(o.out), "indices", out};
  w.put("json", dump_json(j));
  return 0;
}

int cmd_zero_modes(const Options& o, std::ostream& out) {
  auto in = load_input(o);
  const Symbol& s = in.symbol;
  auto [a, b] = parse_range(o.n_range, s.block_size());
  auto rep = zero_mode_report(s, a, b);
  auto idx = predict_zero_modes(s);
  nlohmann::json j{{"header", base_header(o, s)}, {"input", in.description}, {"zero_modes", to_json(rep)},
                   {"topology", to_json(idx)}};
  fmt::print(out, "zero-mode pairs {} (predicted {})\n", rep.scan.pair_count,
             idx.predicted_pairs ? std::to_string(*idx.predicted_pairs) : "-");
  Writer w{o.out_dir, parse_outputs(o.out), "zero_modes", out};
  w.put("json", dump_json(j));
  w.put("csv", to_csv(zero_mode_csv(rep.scan)));
  if (w.wants("svg")) {
    std::vector<Series> ser;
    size_t width = rep.scan.eps.empty() ? 0 : rep.scan.eps.front().size();
    for (size_t p = 0; p < width; ++p) {
      Series sp{fmt::format("log eps_{}", p + 1), {}, {}};
      for (size_t i = 0; i < rep.scan.ns.size(); ++i)
        if (p < rep.scan.eps[i].size() && rep.scan.eps[i][p] > 0)
          sp.x.push_back(rep.scan.ns[i]), sp.y.push_back(std::log(rep.scan.eps[i][p]));
      ser.push_back(sp);
    }
    Series g{"log gap/2", {}, {}};
    for (size_t i = 0; i < rep.scan.ns.size(); ++i) g.x.push_back(rep.scan.ns[i]), g.y.push_back(std::log(rep.scan.gap[i] / 2));
    ser.push_back(g);
    w.put("svg", svg_line_chart("smallest eigenvalues of T_n", "n", "log |eigenvalue|", ser));
  }
  return 0;
}

int cmd_factor_check(const Options& o, std::ostream& out) {
  if (o.example.empty()) throw ValidationError("factor-check needs --example");
  auto in = load_input(o);
  auto chk = verify_factorization(*in.fixture, o.grid);
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : chk.factors)
    factors.push_back({{"name", f.name}, {"forbidden", f.forbidden}, {"forbidden_inverse", f.forbidden_inverse}});
  nlohmann::json j{{"header", base_header(o, in.symbol)}, {"input", in.description}, {"residual", chk.residual},
                   {"support_violation", chk.support_violation}, {"factors", factors}};
  j["header"]["grid_sizes"]["factor_grid"] = o.grid;
  fmt::print(out, "residual {:.3e}  support violation {:.3e}\n", chk.residual, chk.support_violation);
  Writer w{o.out_dir, parse_outputs(o.out), "factor_check", out};
  w.put("json", dump_json(j));
  return chk.residual < 1e-8 ? 0 : 2;
}

int cmd_wiener_hopf(const Options& o, std::ostream& out) {
  Symbol psi;
  nlohmann::json desc;
  if (!o.example.empty()) {
    auto f = make_fixture(o.example, parse_params(o.params));
    if (!f.split_psi) throw PreconditionError(o.example + " has no scalar split");
    if (o.part != "psi" && o.part != "lambda") throw ValidationError("--part must be psi or lambda");
    psi = o.part == "psi" ? *f.split_psi : *f.split_lambda;
    desc = {{"example", o.example}, {"part", o.part}};
  } else if (!o.symbol_file.empty()) {
    psi = load_symbol_file(o.symbol_file);
    desc = {{"symbol_file", o.symbol_file}};
  } else {
    throw ValidationError("wiener-hopf needs --symbol-file or --example");
  }
  if (psi.block_size() != 1) throw ValidationError("wiener-hopf needs a scalar symbol (block_size 1)");
  auto f = wiener_hopf_scalar(psi);
  nlohmann::json ri = nlohmann::json::array(), ro = nlohmann::json::array();
  for (auto r : f.roots_inside) ri.push_back(to_json(r));
  for (auto r : f.roots_outside) ro.push_back(to_json(r));
  nlohmann::json j{{"header", base_header(o, psi)}, {"input", desc}, {"winding", f.winding},
                   {"constant", to_json(f.constant)}, {"roots_inside", ri}, {"roots_outside", ro},
                   {"phi_plus", symbol_to_json(f.phi_plus)}, {"phi_minus", symbol_to_json(f.phi_minus)}};
  nlohmann::json alpha = nlohmann::json::array();
  for (const auto& [k, v] : f.alpha.coefficients())
    if (std::abs(k) <= 32) alpha.push_back({{"k", k}, {"value", to_json(v(0, 0))}});
  j["alpha_head"] = alpha;

  // det T_n(psi) against the theorem, psi = z^{-m} p with p of winding 0
  auto [a, b] = parse_range(o.n_range, 1);
  int m = -f.winding;
  Symbol p = shift_symbol(psi, -m);
  nlohmann::json rows = nlohmann::json::array();
  for (int n = a; n <= b; ++n) {
    SignedLog th = scalar_winding_theorem(p, m, n);
    SignedLog brute = log_det(build_toeplitz(psi, n).data);
    nlohmann::json row{{"n", n}, {"theorem", to_json(th)}, {"direct", to_json(brute)}};
    row["rel_error"] = brute.is_zero() ? nlohmann::json(nullptr)
                                       : nlohmann::json(std::abs(th.value() / brute.value() - 1.0));
    rows.push_back(row);
  }
  j["theorem_rows"] = rows;
  fmt::print(out, "winding {}  roots inside {}  outside {}\n", f.winding, f.roots_inside.size(), f.roots_outside.size());
  Writer w{o.out_dir, parse_outputs(o.out), "wiener_hopf", out};
  w.put("json", dump_json(j));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block Toeplitz determinants, Szego asymptotics and zero modes", "szego-lab"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* c, bool ranged) {
    c->add_option("--example", o.example, "built-in example: example1, example1b, example2, example3");
    c->add_option("--params", o.params, "comma separated k=v, e.g. u=0.3,v=0.6 or zeta=1+1i");
    c->add_option("--symbol-file", o.symbol_file, "JSON symbol file");
    c->add_option("--tol", o.tol, "series tolerance")->check(CLI::PositiveNumber);
    c->add_option("--out", o.out, "comma separated output formats: json,csv,svg");
    c->add_option("--out-dir", o.out_dir, "output directory");
    if (ranged) c->add_option("--n", o.n_range, "size range a..b");
  };
  common(app.add_subcommand("analyze", "full report"), true);
  common(app.add_subcommand("det-scan", "det T_n and det C_n against G^n"), true);
  common(app.add_subcommand("indices", "symmetry class and topological indices"), false);
  common(app.add_subcommand("zero-modes", "near-zero eigenvalues of T_n"), true);
  auto* fc = app.add_subcommand("factor-check", "residual of the stored block factorization");
  common(fc, false);
  fc->add_option("--grid", o.grid, "grid size");
  auto* wh = app.add_subcommand("wiener-hopf", "scalar Wiener-Hopf factorization and winding theorem");
  common(wh, true);
  wh->add_option("--part", o.part, "example1 scalar part: psi or lambda");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "analyze") return cmd_analyze(o, out);
    if (cmd == "det-scan") return cmd_det_scan(o, out);
    if (cmd == "indices") return cmd_indices(o, out);
    if (cmd == "zero-modes") return cmd_zero_modes(o, out);
    if (cmd == "factor-check") return cmd_factor_check(o, out);
    if (cmd == "wiener-hopf") return cmd_wiener_hopf(o, out);
  } catch (const HypothesisError& e) {
    err << "hypothesis violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace szego
