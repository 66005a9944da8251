#include "curvhom/linalg.hpp"

#include <algorithm>

namespace curvhom {

int SignPattern::negatives() const {
  return static_cast<int>(std::count(signs.begin(), signs.end(), -1));
}

std::string SignPattern::str() const {
  std::string s;
  for (int x : signs) s += x < 0 ? '-' : '+';
  return s;
}

SignPattern SignPattern::parse(const std::string& s) {
  SignPattern p;
  for (char c : s) {
    if (c == '-')
      p.signs.push_back(-1);
    else if (c == '+')
      p.signs.push_back(1);
    else
      throw Error(ErrorCode::InvalidArgument, "sign pattern must contain only '+' and '-'");
  }
  std::sort(p.signs.begin(), p.signs.end());
  return p;
}

}  // namespace curvhom
