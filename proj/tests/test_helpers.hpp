#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "bayesball/document.hpp"

namespace testutil {

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture: " + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline bayesball::Network load_network(const std::string& name) {
  return std::get<bayesball::Network>(
      bayesball::load_model_from_text(read_fixture(name)));
}

inline bayesball::InfluenceDiagram load_diagram(const std::string& name) {
  return std::get<bayesball::InfluenceDiagram>(
      bayesball::load_model_from_text(read_fixture(name)));
}

inline std::string show(const bayesball::NodeSet& set) {
  std::string out = "{";
  for (const auto& id : set) {
    if (out.size() > 1) out += ", ";
    out += id;
  }
  return out + "}";
}

}  // namespace testutil

#if defined(DOCTEST_LIBRARY_INCLUDED)
namespace doctest {
template <>
struct StringMaker<std::set<std::string>> {
  static String convert(const std::set<std::string>& set) {
    return testutil::show(set).c_str();
  }
};
}  // namespace doctest
#endif
