#include "negdep/zoo.hpp"

namespace negdep {

std::vector<ZooEntry> measure_zoo() {
  std::vector<ZooEntry> zoo;
  for (int n = 3; n <= 8; ++n) zoo.push_back({"nand:" + std::to_string(n), family_nand(n)});
  for (const char* spec : {"indep:1/2", "indep:1/2,1/2,1/2,1/2", "indep:1/3,2/3,1/4", "indep:1/5,1/2,3/4,2/3,1/3"}) {
    zoo.push_back({spec, family_from_spec(spec)});
  }
  zoo.push_back({"antipair", family_anti_pair()});
  zoo.push_back({"pospair", family_pos_pair(), false});
  for (const char* spec : {"condsum:1/2,1/2,1/2:1:2", "condsum:1/3,1/2,2/3,3/4:2:2", "condsum:1/2,1/3,1/4,1/5,2/3:1:3",
                           "condsum:1/2,1/2,1/2,1/2,1/2,1/2:2:4",
                           "condsum:1/2,1/3,2/3,1/4,3/4,2/5,3/5,1/2:3:5"}) {
    zoo.push_back({spec, family_from_spec(spec)});
  }
  zoo.push_back({"balls:2:2", family_balls_bins(2, 2)});
  zoo.push_back({"balls:3:2", family_balls_bins(3, 2)});
  // Pairwise independent but far from negatively dependent.
  zoo.push_back({"hadamard:4", family_hadamard(4), false});
  zoo.push_back({"hadamard:8", family_hadamard(8), false});
  return zoo;
}

}  // namespace negdep
