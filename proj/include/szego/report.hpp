#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "szego/asymptotics.hpp"
#include "szego/topology.hpp"
#include "szego/zero_modes.hpp"

namespace szego {

inline constexpr const char* kVersion = "0.1.0";

// keys sorted, doubles as %.17g, non-finite doubles as null
std::string dump_json(const nlohmann::json& j);

// write to a sibling temp file, then rename over the target
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;  // nullopt -> empty cell
};
std::string to_csv(const CsvTable& t);

struct Series {
  std::string label;
  std::vector<double> x, y;
};
std::string svg_line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<Series>& series);

nlohmann::json to_json(const SignedLog& v);
nlohmann::json to_json(cplx z);
nlohmann::json to_json(const IndexReport& r);
nlohmann::json to_json(const ZeroModeScan& s);
nlohmann::json to_json(const ZeroModeReport& r);

nlohmann::json reproducibility_header(const nlohmann::json& tolerances, const nlohmann::json& grids);

struct DetRow {
  int n;
  SignedLog det_T;
  SignedLog ratio;  // det T_n / G^n
  std::optional<SignedLog> prefactor;
  std::optional<SignedLog> t;
};

// prefactor and t only where the inverse coefficient is resolved and the kernel is nondegenerate
std::vector<DetRow> determinant_rows(const Symbol& s, int n_min, int n_max, const SignedLog& G,
                                     const Symbol* inverse, PrefactorKernel kernel);

// n, log_abs_detTn, phase, ratio_re, ratio_im, prefactor_log_abs, t_n_re, t_n_im
CsvTable asymptotics_csv(const std::vector<DetRow>& rows);

// n, eps_1, ..., gap_circulant
CsvTable zero_mode_csv(const ZeroModeScan& s);

}  // namespace szego
