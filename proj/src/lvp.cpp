#include "zonorun/lvp.hpp"

#include <sstream>

namespace zonorun {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

RatFamily parse_rat_family(const std::string& s) {
  std::vector<PlanarVec<Rat>> vecs;
  for (const std::string& part : split(s, ';')) {
    auto coords = split(part, ',');
    if (coords.size() != 2) throw PreconditionError("parse_rat_family: need two coordinates");
    vecs.push_back({parse_rat(coords[0]), parse_rat(coords[1])});
  }
  return RatFamily::create(std::move(vecs));
}

QuadFamily parse_quad_family(const std::string& s) {
  std::vector<PlanarVec<QuadRat>> vecs;
  for (const std::string& part : split(s, ';')) {
    auto coords = split(part, ',');
    if (coords.size() != 2) throw PreconditionError("parse_quad_family: need two coordinates");
    vecs.push_back({parse_quadrat(coords[0]), parse_quadrat(coords[1])});
  }
  return QuadFamily::create(std::move(vecs));
}

QuadFamily octagon_family() {
  QuadRat sqrt2(Rat(0), Rat(1));
  std::vector<PlanarVec<QuadRat>> vecs{
      {QuadRat(1), QuadRat(0)},
      {sqrt2, QuadRat(1)},
      {QuadRat(1), sqrt2},
      {QuadRat(0), QuadRat(1)},
  };
  return QuadFamily::create(std::move(vecs));
}

}  // namespace zonorun
