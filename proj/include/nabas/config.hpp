#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nabas/identity.hpp"

namespace nabas {

// Text form of a representation:
//   field qp|laurent <p>
//   dim <d>
//   surface <g> <m>
//   gen <letter> <d*d entries, row-major>     one per generator, in order
//   boundary <j> <word>                        optional, 1-based j
//   invert <j>                                 optional
//   cutoff <n>
//   window <n>
// '#' starts a comment.
struct Config {
  FieldModel model;
  int dim = 2;
  SurfaceType surface{1, 1};
  std::vector<std::vector<FieldElement>> gens;
  std::map<int, Word> boundary_overrides;
  std::set<int> inverted;
  int cutoff = 12;
  int window = 3;

  Representation representation() const;
  bool operator==(const Config& o) const;
};

Config parse_config(std::string_view text);
Config load_config(const std::string& path);
std::string print_config(const Config& c);

std::vector<std::string> preset_names();
Config preset(std::string_view name);

}  // namespace nabas
