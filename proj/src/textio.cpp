#include "zonorun/textio.hpp"

#include <sstream>

namespace zonorun {

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const QuadRat& x) {
  if (x.b == 0) return to_string(x.a);
  std::string s = to_string(x.a);
  s += (sign(x.b) < 0 ? "-" : "+");
  Rat ab = abs(x.b);
  if (ab != 1) s += to_string(ab) + "*";
  s += "sqrt2";
  return s;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw PreconditionError("parse_rat: empty string");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw PreconditionError("parse_rat: bad rational '" + s + "'");
  }
}

QuadRat parse_quadrat(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) return QuadRat(parse_rat(s));
  return QuadRat(parse_rat(s.substr(0, colon)), parse_rat(s.substr(colon + 1)));
}

std::vector<Int> parse_int_list(const std::string& s, char sep) {
  std::vector<Int> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, sep)) {
    if (tok.empty()) throw PreconditionError("parse_int_list: empty entry in '" + s + "'");
    try {
      out.emplace_back(tok);
    } catch (const std::invalid_argument&) {
      throw PreconditionError("parse_int_list: bad integer '" + tok + "'");
    }
  }
  if (out.empty()) throw PreconditionError("parse_int_list: no entries");
  return out;
}

std::string format_rat_point(const RatVec& p) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += to_string(p(i));
  }
  return s + ")";
}

}  // namespace zonorun
