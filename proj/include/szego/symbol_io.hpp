#pragma once

#include <json.hpp>
#include <string>

#include "szego/symbol.hpp"

namespace szego {

// { "block_size": N, "coefficients": [ { "k": int, "re": [[...]], "im": [[...]] } ] }
Symbol symbol_from_json(const nlohmann::json& j);
nlohmann::json symbol_to_json(const Symbol& s);
Symbol load_symbol_file(const std::string& path);

}  // namespace szego
