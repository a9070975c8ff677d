#pragma once

// JSON and CSV encodings of everything the toolkit reports. Rationals are
// always written as "num/den".

#include <string>

#include "json.hpp"
#include "negdep/concentration.hpp"
#include "negdep/coupling.hpp"
#include "negdep/dependence.hpp"
#include "negdep/martingale.hpp"

namespace negdep {

nlohmann::json to_json(const ExplicitMeasure& m);
nlohmann::json to_json(const DominanceCertificate& cert);
nlohmann::json to_json(const Coupling& c);
// {"notion", "verdict", "certificate", "work"}
nlohmann::json to_json(const NotionReport& report);
// Nested nodes: {"pick", "p0", "p1", "y", "alpha", "beta", "children"}.
nlohmann::json to_json(const MartingaleTree& tree);
nlohmann::json to_json(const TailReport& report);
nlohmann::json to_json(const PickResult& pick);
nlohmann::json to_json(const PickLemmaReport& report);

Coupling coupling_from_json(const nlohmann::json& doc);

// One row per node: id,parent,depth,revealed,pick,probability,p0,p1,y,y0,y1,alpha,beta
std::string tree_to_csv(const MartingaleTree& tree);
// t,upper_exact,lower_exact,bound,monotone_bound,pass
std::string tail_report_to_csv(const TailReport& report);

// Human-readable one-liners mirroring the JSON.
std::string describe(const NotionReport& report);

}  // namespace negdep
