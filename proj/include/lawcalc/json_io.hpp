#ifndef LAWCALC_JSON_IO_HPP
#define LAWCALC_JSON_IO_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lawcalc/capacities.hpp"
#include "lawcalc/collapse.hpp"
#include "lawcalc/functional.hpp"
#include "lawcalc/laws.hpp"
#include "lawcalc/optimizer.hpp"
#include "lawcalc/riskmeasures.hpp"

namespace lawcalc {

using Json = nlohmann::ordered_json;

/// Malformed input documents (wrong structure, bad types, unreadable file).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_json_file(const std::string& path);

// Laws: {"atoms":[{"v":...,"p":...},...]} or {"uniform":[v1,...,vn]}.
DiscreteLaw law_from_json(const Json& j);
Json law_to_json(const DiscreteLaw& law);
// Samples require the {"uniform":[...]} form (the arrangement matters).
UniformSample sample_from_json(const Json& j);

// Capacities:
//   {"n":..,"kind":"distortion","knots":[[u,T],...]}
//   {"kind":"densities","d":[[...],...]}
//   {"kind":"jp","alpha":..,"nu":{...}}
//   {"n":..,"kind":"explicit","values":{"<bitmask>":v,...}}
Capacity capacity_from_json(const Json& j);
Json capacity_to_json(const Capacity& mu);

// {"crm":{"generators":[law,...]}}
ConsistentRiskMeasure crm_from_json(const Json& j);
Json crm_to_json(const ConsistentRiskMeasure& m);

// {"set":{"generators":[...],"rays":[...],"increasing":bool}}
LawInvariantSet set_from_json(const Json& j);
Json set_to_json(const LawInvariantSet& s);

// {"kind":"mean"|"es"|"crm"|"negated-crm"|"rho-example"|"phi-example"|
//  "choquet", ...kind-specific fields}
Functional functional_from_json(const Json& j);

// {"kind":"rearrangement-closure"|"interval"|"mean-halfspace"|
//  "preference-bounded", ...}
DomainSpec domain_from_json(const Json& j);

// {"phi":...,"domain":...,"d":[...],"p":...}
FeasibleQuadruple problem_from_json(const Json& j);

Json verdict_to_json(const CollapseVerdict& v);
Json solve_report_to_json(const SolveReport& r);
Json counterexample_to_json(const CounterexampleCase& c,
                            const CounterexampleCheck& check);

}  // namespace lawcalc

#endif
