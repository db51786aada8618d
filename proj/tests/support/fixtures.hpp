#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "uc/model.hpp"
#include "uc/tree.hpp"

namespace uctest {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fixture_path(const char* name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline uc::DetInstance ref_d() {
    return uc::parse_instance(slurp(fixture_path("ref_d.json")));
}

inline uc::ScenarioTree ref_s() {
    return uc::parse_tree(slurp(fixture_path("ref_s.json")));
}

}  // namespace uctest
