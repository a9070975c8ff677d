#pragma once

// The fixed catalogue of small measures every property is exercised on.

#include <string>
#include <vector>

#include "negdep/measure.hpp"

namespace negdep {

struct ZooEntry {
  std::string name;
  ExplicitMeasure measure;
  // False only for entries built to break negative dependence.
  bool expected_negative_regression = true;
};

std::vector<ZooEntry> measure_zoo();

}  // namespace negdep
