#ifndef RAM_TESTS_HELPERS_HPP_
#define RAM_TESTS_HELPERS_HPP_

#include <string_view>
#include <vector>

#include "ram/core.hpp"

namespace testing {

// "cab" is c > a > b over objects a, b, c, ...
inline ram::Preference P(std::string_view letters) {
  std::vector<ram::ObjectIndex> ranking;
  for (char ch : letters) ranking.push_back(ch - 'a');
  return ram::Preference(ranking);
}

inline ram::Profile profile(std::initializer_list<std::string_view> prefs) {
  std::vector<ram::Preference> out;
  for (auto p : prefs) out.push_back(P(p));
  return ram::Profile(out);
}

inline ram::Rational R(long p, long q = 1) { return ram::Rational(p, q); }

inline std::vector<ram::Rational> row(std::initializer_list<ram::Rational> values) {
  return std::vector<ram::Rational>(values);
}

}  // namespace testing

#endif  // RAM_TESTS_HELPERS_HPP_
