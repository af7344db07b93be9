#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "orgrisk/fact.hpp"
#include "orgrisk/model.hpp"
#include "orgrisk/scenario_io.hpp"

namespace orgrisk::testing {

inline std::string data_path(const std::string& rel) { return std::string(ORGRISK_DATA_DIR) + "/" + rel; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string golden_text() { return read_text(data_path("golden_flood.orgm")); }
inline OrgModel golden() { return parse_scenario(golden_text()); }

inline Fact F(const std::string& text) { return *parse_fact(text); }

}  // namespace orgrisk::testing
