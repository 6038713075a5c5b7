#pragma once

#include <string>
#include <vector>

#include "germscope/germscope.hpp"

namespace testing_support {

using namespace germscope;

inline Poly P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

inline MapGerm G(const std::string& vars, const std::string& map) { return parse_germ("vars: " + vars + "\nmap: " + map + "\n"); }

inline std::vector<std::string> strings(const std::vector<Jet>& v) {
  std::vector<std::string> out;
  for (const auto& j : v) out.push_back(j.value().to_string());
  return out;
}

inline std::vector<std::vector<std::string>> strings(const std::vector<std::vector<Jet>>& m) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : m) out.push_back(strings(row));
  return out;
}

inline std::vector<std::string> strings(const std::vector<Monomial>& ms, const RingPtr& r) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(Poly::term(r, m, Rat(1)).to_string());
  return out;
}

}  // namespace testing_support
