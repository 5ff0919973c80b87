#pragma once

#include <string>
#include <vector>

#include "relhyp/electric.hpp"
#include "relhyp/words.hpp"

namespace fixtures {

inline relhyp::Presentation presentation(std::vector<std::string> gens, std::vector<std::string> rels) {
  auto A = relhyp::Alphabet::from_generators(gens);
  std::vector<relhyp::Word> rs;
  for (auto const& r : rels) rs.push_back(A.parse(r));
  return relhyp::Presentation(A, rs);
}

inline relhyp::Presentation z() { return presentation({"a"}, {}); }
inline relhyp::Presentation z2() { return presentation({"a", "b"}, {"abAB"}); }
inline relhyp::Presentation f2() { return presentation({"a", "b"}, {}); }
inline relhyp::Presentation trivial_group() { return presentation({"a"}, {"a"}); }

inline relhyp::RelativePresentation relative(relhyp::Presentation P, std::vector<std::string> parabolic) {
  auto f = relhyp::RelativePresentation::family(P, "P", parabolic);
  return relhyp::RelativePresentation(P, {f});
}
inline relhyp::RelativePresentation z2_rel_b() { return relative(z2(), {"b"}); }
inline relhyp::RelativePresentation f2_rel_b() { return relative(f2(), {"b"}); }

}  // namespace fixtures
