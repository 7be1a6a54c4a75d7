#include "szego/symbol_io.hpp"

#include <fmt/format.h>

#include <fstream>

namespace szego {

namespace {

Eigen::MatrixXd read_real(const nlohmann::json& j, int N, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != N)
    throw ValidationError(fmt::format("{}: expected {} rows", what, N));
  Eigen::MatrixXd m(N, N);
  for (int a = 0; a < N; ++a) {
    const auto& row = j[a];
    if (!row.is_array() || static_cast<int>(row.size()) != N)
      throw ValidationError(fmt::format("{}: row {} must have {} entries", what, a, N));
    for (int b = 0; b < N; ++b) {
      if (!row[b].is_number()) throw ValidationError(fmt::format("{}: entry ({},{}) is not a number", what, a, b));
      m(a, b) = row[b].get<double>();
    }
  }
  return m;
}

}  // namespace

Symbol symbol_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("symbol file must hold a JSON object");
  if (!j.contains("block_size") || !j["block_size"].is_number_integer())
    throw ValidationError("symbol file: integer block_size required");
  int N = j["block_size"].get<int>();
  if (N < 1) throw ValidationError("symbol file: block_size must be positive");
  if (!j.contains("coefficients") || !j["coefficients"].is_array())
    throw ValidationError("symbol file: coefficients array required");
  std::vector<std::pair<int, CMat>> coeffs;
  for (const auto& c : j["coefficients"]) {
    if (!c.is_object() || !c.contains("k") || !c["k"].is_number_integer())
      throw ValidationError("symbol file: each coefficient needs an integer k");
    int k = c["k"].get<int>();
    std::string what = fmt::format("coefficient k={}", k);
    if (!c.contains("re")) throw ValidationError(what + ": missing re");
    CMat m = read_real(c["re"], N, what + " re").cast<cplx>();
    if (c.contains("im")) m += cplx(0, 1) * read_real(c["im"], N, what + " im").cast<cplx>();
    coeffs.emplace_back(k, m);
  }
  return symbol_from_coefficients(N, coeffs);
}

nlohmann::json symbol_to_json(const Symbol& s) {
  const int N = s.block_size();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, m] : s.coefficients()) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int a = 0; a < N; ++a) {
      nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
      for (int b = 0; b < N; ++b) {
        rr.push_back(m(a, b).real());
        ii.push_back(m(a, b).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    arr.push_back({{"k", k}, {"re", re}, {"im", im}});
  }
  return {{"block_size", N}, {"coefficients", arr}};
}

Symbol load_symbol_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open symbol file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  }
  return symbol_from_json(j);
}

}  // namespace szego
