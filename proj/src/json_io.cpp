#include "lawcalc/json_io.hpp"

#include <fstream>

namespace lawcalc {

namespace {

const Json& require_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return *it;
}

double number(const Json& j, const char* where) {
  if (!j.is_number()) {
    throw ParseError(std::string(where) + ": expected a number");
  }
  return j.get<double>();
}

std::vector<double> number_array(const Json& j, const char* where) {
  if (!j.is_array()) {
    throw ParseError(std::string(where) + ": expected an array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) out.push_back(number(v, where));
  return out;
}

std::vector<DiscreteLaw> law_array(const Json& j, const char* where) {
  if (!j.is_array()) {
    throw ParseError(std::string(where) + ": expected an array of laws");
  }
  std::vector<DiscreteLaw> out;
  for (const Json& v : j) out.push_back(law_from_json(v));
  return out;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

DiscreteLaw law_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("law: expected an object");
  if (j.contains("atoms")) {
    const Json& arr = j["atoms"];
    if (!arr.is_array()) throw ParseError("law: 'atoms' must be an array");
    std::vector<Atom> atoms;
    for (const Json& a : arr) {
      atoms.push_back(Atom{number(require_field(a, "v"), "law atom v"),
                           number(require_field(a, "p"), "law atom p")});
    }
    return DiscreteLaw(std::move(atoms));
  }
  if (j.contains("uniform")) {
    return UniformSample(number_array(j["uniform"], "law uniform")).law();
  }
  throw ParseError("law: expected 'atoms' or 'uniform'");
}

Json law_to_json(const DiscreteLaw& law) {
  Json atoms = Json::array();
  for (const Atom& a : law.atoms()) {
    atoms.push_back(Json{{"v", a.value}, {"p", a.prob}});
  }
  return Json{{"atoms", std::move(atoms)}};
}

UniformSample sample_from_json(const Json& j) {
  if (j.is_object() && j.contains("uniform")) {
    return UniformSample(number_array(j["uniform"], "sample"));
  }
  throw ParseError("sample: expected {\"uniform\":[...]}");
}

Capacity capacity_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("capacity: expected an object");
  const std::string kind = require_field(j, "kind").get<std::string>();
  if (kind == "distortion") {
    const int n = static_cast<int>(number(require_field(j, "n"), "capacity n"));
    const Json& knots = require_field(j, "knots");
    if (!knots.is_array()) throw ParseError("capacity: 'knots' must be an array");
    std::vector<std::pair<double, double>> parsed;
    for (const Json& k : knots) {
      if (!k.is_array() || k.size() != 2) {
        throw ParseError("capacity: each knot must be [u, T(u)]");
      }
      parsed.emplace_back(number(k[0], "knot u"), number(k[1], "knot T"));
    }
    return Capacity::distortion(n, std::move(parsed));
  }
  if (kind == "densities") {
    const Json& d = require_field(j, "d");
    if (!d.is_array() || d.empty()) {
      throw ParseError("capacity: 'd' must be a nonempty array of vectors");
    }
    std::vector<std::vector<double>> densities;
    for (const Json& row : d) densities.push_back(number_array(row, "density"));
    return Capacity::density_family(std::move(densities));
  }
  if (kind == "jp") {
    return Capacity::jp(capacity_from_json(require_field(j, "nu")),
                        number(require_field(j, "alpha"), "alpha"));
  }
  if (kind == "explicit") {
    const int n = static_cast<int>(number(require_field(j, "n"), "capacity n"));
    const Json& values = require_field(j, "values");
    if (!values.is_object()) {
      throw ParseError("capacity: 'values' must map bitmasks to numbers");
    }
    std::vector<std::pair<std::uint32_t, double>> entries;
    for (auto it = values.begin(); it != values.end(); ++it) {
      std::uint32_t mask = 0;
      try {
        mask = static_cast<std::uint32_t>(std::stoul(it.key()));
      } catch (const std::exception&) {
        throw ParseError("capacity: bitmask keys must be decimal integers");
      }
      const double v = number(it.value(), "capacity value");
      if (v < -1e-9 || v > 1.0 + 1e-9) {
        throw ParseError("capacity: explicit values must lie in [0,1]");
      }
      entries.emplace_back(mask, v);
    }
    return Capacity::explicit_partial(n, entries);
  }
  throw ParseError("capacity: unknown kind '" + kind + "'");
}

Json capacity_to_json(const Capacity& mu) {
  switch (mu.kind()) {
    case Capacity::Kind::Distortion: {
      Json knots = Json::array();
      for (const auto& [u, t] : mu.knots()) knots.push_back(Json::array({u, t}));
      return Json{{"n", mu.atom_count()},
                  {"kind", "distortion"},
                  {"knots", std::move(knots)}};
    }
    case Capacity::Kind::DensityFamily: {
      Json d = Json::array();
      for (const auto& row : mu.densities()) d.push_back(row);
      return Json{{"n", mu.atom_count()}, {"kind", "densities"}, {"d", std::move(d)}};
    }
    case Capacity::Kind::JP:
      return Json{{"n", mu.atom_count()},
                  {"kind", "jp"},
                  {"alpha", mu.alpha()},
                  {"nu", capacity_to_json(mu.nu())}};
    case Capacity::Kind::Explicit: {
      Json values = Json::object();
      const std::uint32_t full = mu.full_mask();
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        values[std::to_string(mask)] = mu.eval(mask);
      }
      return Json{{"n", mu.atom_count()},
                  {"kind", "explicit"},
                  {"values", std::move(values)}};
    }
  }
  throw std::logic_error("capacity_to_json: unreachable kind");
}

ConsistentRiskMeasure crm_from_json(const Json& j) {
  const Json& inner = require_field(j, "crm");
  return ConsistentRiskMeasure(
      law_array(require_field(inner, "generators"), "crm generators"));
}

Json crm_to_json(const ConsistentRiskMeasure& m) {
  Json gens = Json::array();
  for (const DiscreteLaw& g : m.generators()) gens.push_back(law_to_json(g));
  return Json{{"crm", Json{{"generators", std::move(gens)}}}};
}

LawInvariantSet set_from_json(const Json& j) {
  const Json& inner = require_field(j, "set");
  LawInvariantSet s;
  s.generators = law_array(require_field(inner, "generators"), "set generators");
  if (s.generators.empty()) throw ParseError("set: generators must be nonempty");
  if (inner.contains("rays")) s.rays = law_array(inner["rays"], "set rays");
  if (inner.contains("increasing")) {
    if (!inner["increasing"].is_boolean()) {
      throw ParseError("set: 'increasing' must be a boolean");
    }
    s.increasing = inner["increasing"].get<bool>();
  }
  return s;
}

Json set_to_json(const LawInvariantSet& s) {
  Json gens = Json::array();
  for (const DiscreteLaw& g : s.generators) gens.push_back(law_to_json(g));
  Json rays = Json::array();
  for (const DiscreteLaw& r : s.rays) rays.push_back(law_to_json(r));
  return Json{{"set", Json{{"generators", std::move(gens)},
                           {"rays", std::move(rays)},
                           {"increasing", s.increasing}}}};
}

Functional functional_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("functional: expected an object");
  const std::string kind = require_field(j, "kind").get<std::string>();
  if (kind == "mean") return mean_functional();
  if (kind == "es") {
    return es_functional(number(require_field(j, "p"), "es level"));
  }
  if (kind == "crm") {
    return crm_functional(ConsistentRiskMeasure(
        law_array(require_field(j, "generators"), "crm generators")));
  }
  if (kind == "negated-crm") {
    // Risk measures enter maximisation objectives via explicit negation.
    return negated_functional(crm_functional(ConsistentRiskMeasure(
        law_array(require_field(j, "generators"), "crm generators"))));
  }
  if (kind == "rho-example") return rho_example_functional();
  if (kind == "phi-example") return phi_example_functional();
  if (kind == "choquet") {
    return choquet_functional(capacity_from_json(require_field(j, "capacity")));
  }
  throw ParseError("functional: unknown kind '" + kind + "'");
}

DomainSpec domain_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("domain: expected an object");
  const std::string kind = require_field(j, "kind").get<std::string>();
  if (kind == "rearrangement-closure") {
    bool allow_shift = false, increasing = false;
    if (j.contains("allow_shift")) allow_shift = j["allow_shift"].get<bool>();
    if (j.contains("increasing")) increasing = j["increasing"].get<bool>();
    return DomainSpec::rearrangement_closure(
        law_array(require_field(j, "generators"), "domain generators"),
        allow_shift, increasing);
  }
  if (kind == "interval") {
    return DomainSpec::interval(number(require_field(j, "a"), "interval a"),
                                number(require_field(j, "b"), "interval b"));
  }
  if (kind == "mean-halfspace") {
    return DomainSpec::mean_half_space(
        number(require_field(j, "bound"), "halfspace bound"));
  }
  if (kind == "preference-bounded") {
    return DomainSpec::preference_bounded(
        law_from_json(require_field(j, "top")));
  }
  throw ParseError("domain: unknown kind '" + kind + "'");
}

FeasibleQuadruple problem_from_json(const Json& j) {
  FeasibleQuadruple q{mean_functional(), DomainSpec::interval(0.0, 1.0),
                      UniformSample({1.0}), 0.0};
  q.phi = functional_from_json(require_field(j, "phi"));
  q.domain = domain_from_json(require_field(j, "domain"));
  q.d = UniformSample(number_array(require_field(j, "d"), "pricing density"));
  q.p = number(require_field(j, "p"), "budget level");
  return q;
}

Json verdict_to_json(const CollapseVerdict& v) {
  Json j{{"schema", "1"},
         {"collapsed", v.collapsed},
         {"gap", v.gap},
         {"notes", v.notes}};
  j["witness"] = v.witness.has_value() ? law_to_json(*v.witness) : Json(nullptr);
  return j;
}

Json solve_report_to_json(const SolveReport& r) {
  Json trace = Json::array();
  for (const auto& [candidate, value] : r.improvement_trace) {
    trace.push_back(Json{{"candidate", candidate.values}, {"value", value}});
  }
  return Json{{"schema", "1"},
              {"solution", r.solution.values},
              {"value", r.value},
              {"antimonotone_with_d", r.antimonotone_with_d},
              {"trace", std::move(trace)}};
}

Json counterexample_to_json(const CounterexampleCase& c,
                            const CounterexampleCheck& check) {
  Json expected{{"no_antimonotone_optimum", c.expected.no_antimonotone_optimum},
                {"non_antimonotone_optimum_exists",
                 c.expected.non_antimonotone_optimum_exists},
                {"no_constant_feasible", c.expected.no_constant_feasible}};
  Json observed{{"no_antimonotone_optimum", check.no_antimonotone_optimum},
                {"non_antimonotone_optimum_exists",
                 check.non_antimonotone_optimum_exists},
                {"no_constant_feasible", check.no_constant_feasible},
                {"optimum_confirmed", check.optimum_confirmed},
                {"optimal_value", check.optimal_value},
                {"feasible_count", check.feasible_count}};
  return Json{{"schema", "1"},
              {"description", c.description},
              {"optimal", c.optimal.values},
              {"p", c.quadruple.p},
              {"expected", std::move(expected)},
              {"observed", std::move(observed)},
              {"ok", check.ok}};
}

}  // namespace lawcalc
