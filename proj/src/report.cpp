#include "szego/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace szego {

namespace {

std::string fmt_double(double d) {
  if (!std::isfinite(d)) return "null";
  if (d == 0) return std::signbit(d) ? "-0.0" : "0.0";
  return fmt::format("{:.17g}", d);
}

void emit(const nlohmann::json& j, std::string& out, int depth) {
  std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += fmt_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string csv_cell(const std::optional<double>& v) {
  if (!v) return "";
  if (std::isnan(*v)) return "nan";
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", *v);
}

std::string xml_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw ValidationError("cannot write " + tmp.string());
    o << content;
    o.flush();
    if (!o) throw ValidationError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

std::string to_csv(const CsvTable& t) {
  std::string out;
  for (size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

std::string svg_line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<Series>& series) {
  const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]), x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]), y1 = std::max(y1, s.y[i]);
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 1, x1 += 1;
  if (y1 == y0) y0 -= 1, y1 += 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::string o = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", W, H, W, H);
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += fmt::format("<text x=\"{}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n", W / 2,
                   xml_escape(title));
  o += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, H - B, W - R, H - B);
  o += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, T, L, H - B);
  for (int i = 0; i <= 4; ++i) {
    double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    o += fmt::format("<text x=\"{:.1f}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{:.4g}</text>\n", px(xv),
                     H - B + 16, xv);
    o += fmt::format("<text x=\"{}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n", L - 6,
                     py(yv) + 4, yv);
  }
  o += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n", (L + W - R) / 2,
                   H - 10, xml_escape(xlabel));
  o += fmt::format(
      "<text x=\"16\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
      (T + H - B) / 2, (T + H - B) / 2, xml_escape(ylabel));
  for (size_t s = 0; s < series.size(); ++s) {
    std::string pts;
    for (size_t i = 0; i < series[s].x.size(); ++i) {
      if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i])) continue;
      pts += fmt::format("{:.2f},{:.2f} ", px(series[s].x[i]), py(series[s].y[i]));
    }
    const char* col = colors[s % 6];
    o += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", col, pts);
    o += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{}\">{}</text>\n", W - R - 150, T + 16 * (s + 1),
                     col, xml_escape(series[s].label));
  }
  o += "</svg>\n";
  return o;
}

nlohmann::json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json to_json(const SignedLog& v) {
  nlohmann::json j{{"is_zero", v.is_zero()}, {"phase", to_json(v.phase)}};
  j["log_abs"] = v.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(v.log_abs);
  return j;
}

nlohmann::json to_json(const IndexReport& r) {
  nlohmann::json j{{"class", to_string(r.cls)}};
  j["kitaev_index"] = r.kitaev ? nlohmann::json(*r.kitaev) : nlohmann::json(nullptr);
  j["winding_index"] = r.winding ? nlohmann::json(*r.winding) : nlohmann::json(nullptr);
  j["predicted_pairs"] = r.predicted_pairs ? nlohmann::json(*r.predicted_pairs) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ZeroModeScan& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < s.ns.size(); ++i)
    rows.push_back({{"n", s.ns[i]}, {"eps", s.eps[i]}, {"gap_circulant", s.gap[i]}, {"pairs_below_threshold", s.counts[i]}});
  nlohmann::json rates = nlohmann::json::array();
  for (double r : s.fitted_rates) rates.push_back(std::isfinite(r) ? nlohmann::json(r) : nlohmann::json(nullptr));
  return {{"rows", rows}, {"pair_count", s.pair_count}, {"fitted_rates", rates}};
}

nlohmann::json to_json(const ZeroModeReport& r) {
  nlohmann::json j{{"scan", to_json(r.scan)}};
  j["coefficient_decay_rate"] = r.coeff_decay_rate ? nlohmann::json(*r.coeff_decay_rate) : nlohmann::json(nullptr);
  j["root_gap"] = r.root_gap ? nlohmann::json(*r.root_gap) : nlohmann::json(nullptr);
  if (r.wave) {
    j["wavefunction"] = {{"mode_found", r.wave->mode_found},
                         {"magnitude", r.wave->magnitude},
                         {"residual", r.wave->residual},
                         {"threshold", r.wave->threshold},
                         {"seed", r.wave->seed},
                         {"attempts", r.wave->attempts},
                         {"profile", r.profile}};
  } else {
    j["wavefunction"] = nullptr;
  }
  return j;
}

nlohmann::json reproducibility_header(const nlohmann::json& tolerances, const nlohmann::json& grids) {
  return {{"tool", "szego-lab"}, {"version", kVersion}, {"tolerances", tolerances}, {"grid_sizes", grids}};
}

std::vector<DetRow> determinant_rows(const Symbol& s, int n_min, int n_max, const SignedLog& G,
                                     const Symbol* inverse, PrefactorKernel kernel) {
  std::vector<DetRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    DetRow r{n, log_det(build_toeplitz(s, n).data), {}, std::nullopt, std::nullopt};
    r.ratio = r.det_T / G.pow(n);
    if (inverse) {
      try {
        r.prefactor = prefactor_from_inverse(*inverse, n, kernel);
        r.t = r.ratio / *r.prefactor;
      } catch (const PreconditionError&) {
      }
    }
    rows.push_back(r);
  }
  return rows;
}

CsvTable asymptotics_csv(const std::vector<DetRow>& rows) {
  CsvTable t;
  t.header = {"n", "log_abs_detTn", "phase", "ratio_re", "ratio_im", "prefactor_log_abs", "t_n_re", "t_n_im"};
  for (const auto& r : rows) {
    std::vector<std::optional<double>> row{static_cast<double>(r.n), r.det_T.log_abs, std::arg(r.det_T.phase)};
    cplx q = r.ratio.value();
    row.push_back(q.real());
    row.push_back(q.imag());
    row.push_back(r.prefactor ? std::optional<double>(r.prefactor->log_abs) : std::nullopt);
    if (r.t) {
      cplx t = r.t->value();
      row.push_back(t.real());
      row.push_back(t.imag());
    } else {
      row.push_back(std::nullopt);
      row.push_back(std::nullopt);
    }
    t.rows.push_back(row);
  }
  return t;
}

CsvTable zero_mode_csv(const ZeroModeScan& s) {
  CsvTable t;
  size_t width = 0;
  for (const auto& e : s.eps) width = std::max(width, e.size());
  t.header.push_back("n");
  for (size_t p = 0; p < width; ++p) t.header.push_back(fmt::format("eps_{}", p + 1));
  t.header.push_back("gap_circulant");
  for (size_t i = 0; i < s.ns.size(); ++i) {
    std::vector<std::optional<double>> row{static_cast<double>(s.ns[i])};
    for (size_t p = 0; p < width; ++p)
      row.push_back(p < s.eps[i].size() ? std::optional<double>(s.eps[i][p]) : std::nullopt);
    row.push_back(s.gap[i]);
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace szego
