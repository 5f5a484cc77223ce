#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lawcalc/json_io.hpp"
#include "lawcalc/rearrange.hpp"
#include "lawcalc/repro.hpp"

namespace {

using lawcalc::Json;

struct RunConfig {
  double tolerance = lawcalc::kTolerance;
  std::uint64_t seed = 42;
  bool json = false;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit(const RunConfig& cfg, const Json& payload,
          const std::string& text) {
  if (cfg.json) {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::vector<double> parse_reals(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t next = csv.find(',', pos);
    const std::string tok =
        csv.substr(pos, next == std::string::npos ? next : next - pos);
    if (tok.empty()) {
      throw lawcalc::ParseError("empty entry in numeric list '" + csv + "'");
    }
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      throw lawcalc::ParseError("bad number '" + tok + "'");
    }
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string describe_law(const lawcalc::DiscreteLaw& law) {
  std::string out = "atoms:";
  for (const auto& a : law.atoms()) {
    out += " (" + fmt(a.value) + ", " + fmt(a.prob) + ")";
  }
  out += "\nmean: " + fmt(lawcalc::mean(law)) + "\n";
  return out;
}

int run(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("LAWCALC_TOLERANCE")) {
    cfg.tolerance = std::strtod(env, nullptr);
  }

  CLI::App app{"calculator for law-invariant functionals on finitely "
               "supported distributions"};
  app.require_subcommand(1);
  app.add_flag("--json", cfg.json, "emit JSON instead of text");
  app.add_option("--seed", cfg.seed, "seed for randomized probes");
  app.add_option("--tolerance", cfg.tolerance,
                 "comparison tolerance (default 1e-9, env LAWCALC_TOLERANCE)");

  int exit_code = 0;

  // law show | law ingest
  auto* law_cmd = app.add_subcommand("law", "inspect and ingest laws");
  law_cmd->require_subcommand(1);
  {
    auto* show = law_cmd->add_subcommand("show", "print a law file");
    auto path = std::make_shared<std::string>();
    show->add_option("file", *path, "law JSON file")->required();
    show->callback([&cfg, path] {
      const auto law = lawcalc::law_from_json(lawcalc::load_json_file(*path));
      emit(cfg, lawcalc::law_to_json(law), describe_law(law));
    });

    auto* ingest = law_cmd->add_subcommand("ingest", "empirical law from CSV");
    auto csv = std::make_shared<std::string>();
    ingest->add_option("file", *csv, "one real per line")->required();
    ingest->callback([&cfg, csv] {
      const auto law = lawcalc::ingest_csv(*csv);
      emit(cfg, lawcalc::law_to_json(law), describe_law(law));
    });
  }

  // hl
  {
    auto* hl = app.add_subcommand("hl", "sharp rearrangement bounds of E[X'Y]");
    auto xp = std::make_shared<std::string>();
    auto yp = std::make_shared<std::string>();
    hl->add_option("x", *xp, "law JSON file")->required();
    hl->add_option("y", *yp, "law JSON file")->required();
    hl->callback([&cfg, xp, yp] {
      const auto x = lawcalc::law_from_json(lawcalc::load_json_file(*xp));
      const auto y = lawcalc::law_from_json(lawcalc::load_json_file(*yp));
      const double lo = lawcalc::hl_lower(x, y);
      const double hi = lawcalc::hl_upper(x, y);
      const double product = lawcalc::mean(x) * lawcalc::mean(y);
      Json j{{"schema", "1"},
             {"lower", lo},
             {"upper", hi},
             {"mean_product", product},
             {"gap_lower", product - lo},
             {"gap_upper", hi - product}};
      emit(cfg, j,
           "lower: " + fmt(lo) + "\nupper: " + fmt(hi) +
               "\nmean product: " + fmt(product) + "\ngaps: (" +
               fmt(product - lo) + ", " + fmt(hi - product) + ")\n");
    });
  }

  // couple
  {
    auto* cp = app.add_subcommand("couple", "arrange a law against a sample");
    auto xp = std::make_shared<std::string>();
    auto yp = std::make_shared<std::string>();
    auto kind = std::make_shared<std::string>("antimonotone");
    cp->add_option("x", *xp, "law JSON file")->required();
    cp->add_option("y", *yp, "sample JSON file ({\"uniform\":[...]})")
        ->required();
    cp->add_option("--kind", *kind, "comonotone|antimonotone");
    cp->callback([&cfg, xp, yp, kind] {
      const auto x = lawcalc::law_from_json(lawcalc::load_json_file(*xp));
      const auto y = lawcalc::sample_from_json(lawcalc::load_json_file(*yp));
      lawcalc::CoupleKind k;
      if (*kind == "comonotone") {
        k = lawcalc::CoupleKind::Comonotone;
      } else if (*kind == "antimonotone") {
        k = lawcalc::CoupleKind::Antimonotone;
      } else {
        throw std::domain_error("couple: kind must be comonotone or antimonotone");
      }
      const auto r = lawcalc::couple(x, y, k);
      Json j{{"schema", "1"},
             {"kind", *kind},
             {"x_rearranged", r.x_rearranged.values},
             {"inner_product", r.inner_product}};
      std::string text = "arranged:";
      for (double v : r.x_rearranged.values) text += " " + fmt(v);
      text += "\ninner product: " + fmt(r.inner_product) + "\n";
      emit(cfg, j, text);
    });
  }

  // es
  {
    auto* escmd = app.add_subcommand("es", "expected shortfall of a law");
    auto xp = std::make_shared<std::string>();
    auto p = std::make_shared<double>(0.5);
    escmd->add_option("x", *xp, "law JSON file")->required();
    escmd->add_option("--p", *p, "level in [0,1]")->required();
    escmd->callback([&cfg, xp, p] {
      const auto x = lawcalc::law_from_json(lawcalc::load_json_file(*xp));
      const double v = lawcalc::es(x, *p);
      emit(cfg, Json{{"schema", "1"}, {"p", *p}, {"es", v}},
           "es(" + fmt(*p) + ") = " + fmt(v) + "\n");
    });
  }

  // crm eval
  {
    auto* crm = app.add_subcommand("crm", "consistent risk measures");
    crm->require_subcommand(1);
    auto* eval = crm->add_subcommand("eval", "evaluate a risk measure");
    auto mp = std::make_shared<std::string>();
    auto xp = std::make_shared<std::string>();
    eval->add_option("crm", *mp, "risk measure JSON file")->required();
    eval->add_option("x", *xp, "law JSON file")->required();
    eval->callback([&cfg, mp, xp] {
      const auto m = lawcalc::crm_from_json(lawcalc::load_json_file(*mp));
      const auto x = lawcalc::law_from_json(lawcalc::load_json_file(*xp));
      const double v = lawcalc::crm_eval(m, x);
      emit(cfg, Json{{"schema", "1"}, {"value", v}}, "crm value: " + fmt(v) + "\n");
    });
  }

  // choquet eval
  {
    auto* ch = app.add_subcommand("choquet", "Choquet integrals");
    ch->require_subcommand(1);
    auto* eval = ch->add_subcommand("eval", "integrate a sample");
    auto cp = std::make_shared<std::string>();
    auto xp = std::make_shared<std::string>();
    eval->add_option("capacity", *cp, "capacity JSON file")->required();
    eval->add_option("x", *xp, "sample JSON file")->required();
    eval->callback([&cfg, cp, xp] {
      const auto mu = lawcalc::capacity_from_json(lawcalc::load_json_file(*cp));
      const auto x = lawcalc::sample_from_json(lawcalc::load_json_file(*xp));
      const auto v = lawcalc::choquet(mu, x);
      Json layers = Json::array();
      for (const auto& [threshold, cap] : v.layer_trace) {
        layers.push_back(Json{{"threshold", threshold}, {"capacity", cap}});
      }
      emit(cfg,
           Json{{"schema", "1"}, {"value", v.value}, {"layers", std::move(layers)}},
           "choquet value: " + fmt(v.value) + "\n");
    });
  }

  // capacity check | capacity jp-recover
  {
    auto* cap = app.add_subcommand("capacity", "capacity diagnostics");
    cap->require_subcommand(1);

    auto* check = cap->add_subcommand("check", "structural checks");
    auto cp = std::make_shared<std::string>();
    auto want_sub = std::make_shared<bool>(false);
    auto want_li = std::make_shared<bool>(false);
    check->add_option("capacity", *cp, "capacity JSON file")->required();
    check->add_flag("--submodular", *want_sub, "check submodularity");
    check->add_flag("--law-invariant", *want_li, "check law invariance");
    check->callback([&cfg, cp, want_sub, want_li] {
      const auto mu = lawcalc::capacity_from_json(lawcalc::load_json_file(*cp));
      Json j{{"schema", "1"}};
      std::string text;
      if (!*want_sub && !*want_li) {
        throw std::domain_error(
            "capacity check: pass --submodular and/or --law-invariant");
      }
      if (*want_sub) {
        const auto r = lawcalc::is_submodular(mu, cfg.tolerance);
        j["submodular"] = r.submodular;
        if (r.violation.has_value()) {
          j["violation"] = Json{{"A", r.violation->first},
                                {"B", r.violation->second}};
        }
        text += std::string("submodular: ") + (r.submodular ? "yes" : "no");
        if (r.violation.has_value()) {
          text += " (violating pair A=" + std::to_string(r.violation->first) +
                  ", B=" + std::to_string(r.violation->second) + ")";
        }
        text += "\n";
      }
      if (*want_li) {
        const bool li = lawcalc::is_law_invariant(mu, cfg.tolerance);
        j["law_invariant"] = li;
        text += std::string("law invariant: ") + (li ? "yes" : "no") + "\n";
      }
      emit(cfg, j, text);
    });

    auto* recover = cap->add_subcommand("jp-recover", "invert a JP mixture");
    auto rp = std::make_shared<std::string>();
    auto alpha = std::make_shared<double>(0.0);
    recover->add_option("capacity", *rp, "capacity JSON file")->required();
    recover->add_option("--alpha", *alpha, "mixture weight, != 1/2")->required();
    recover->callback([&cfg, rp, alpha] {
      const auto mu = lawcalc::capacity_from_json(lawcalc::load_json_file(*rp));
      const auto nu = lawcalc::jp_recover_nu(mu, *alpha);
      emit(cfg, lawcalc::capacity_to_json(nu),
           lawcalc::capacity_to_json(nu).dump(2) + "\n");
    });
  }

  // collapse detectors
  {
    auto* col = app.add_subcommand("collapse", "collapse-to-the-mean detectors");
    col->require_subcommand(1);

    auto emit_verdict = [&cfg](const lawcalc::CollapseVerdict& v) {
      std::string text = std::string("collapsed: ") +
                         (v.collapsed ? "yes" : "no") + "\ngap: " + fmt(v.gap) +
                         "\nnotes: " + v.notes + "\n";
      emit(cfg, lawcalc::verdict_to_json(v), text);
    };

    auto* line = col->add_subcommand("line-test", "translation line test");
    auto l_phi = std::make_shared<std::string>();
    auto l_z = std::make_shared<std::string>();
    auto l_x0 = std::make_shared<double>(0.0);
    auto l_a = std::make_shared<double>(0.0);
    auto l_grid = std::make_shared<std::string>("-2,-1,1,2");
    line->add_option("--phi", *l_phi, "functional JSON file")->required();
    line->add_option("--z", *l_z, "direction law JSON file")->required();
    line->add_option("--x0", *l_x0, "base point");
    line->add_option("--a", *l_a, "slope");
    line->add_option("--t-grid", *l_grid, "comma-separated t values");
    line->callback([emit_verdict, l_phi, l_z, l_x0, l_a, l_grid] {
      const auto phi =
          lawcalc::functional_from_json(lawcalc::load_json_file(*l_phi));
      const auto z = lawcalc::law_from_json(lawcalc::load_json_file(*l_z));
      emit_verdict(lawcalc::translation_line_test(phi, *l_x0, z, *l_a,
                                                  parse_reals(*l_grid)));
    });

    auto* meta = col->add_subcommand("meta-cert", "certified gap test");
    auto m_phi = std::make_shared<std::string>();
    auto m_z = std::make_shared<std::string>();
    auto m_y = std::make_shared<std::string>();
    auto m_x0 = std::make_shared<double>(0.0);
    auto m_k = std::make_shared<int>(1000);
    meta->add_option("--phi", *m_phi, "functional JSON file")->required();
    meta->add_option("--z", *m_z, "direction law JSON file")->required();
    meta->add_option("--y", *m_y, "pairing law JSON file")->required();
    meta->add_option("--x0", *m_x0, "base point");
    meta->add_option("--k-max", *m_k, "largest k in the chain");
    meta->callback([emit_verdict, m_phi, m_z, m_y, m_x0, m_k] {
      const auto phi =
          lawcalc::functional_from_json(lawcalc::load_json_file(*m_phi));
      const auto z = lawcalc::law_from_json(lawcalc::load_json_file(*m_z));
      const auto y = lawcalc::law_from_json(lawcalc::load_json_file(*m_y));
      emit_verdict(lawcalc::meta_gap_certificate(phi, *m_x0, z, y, *m_k));
    });

    auto* cq = col->add_subcommand("choquet-test", "symmetric linearity search");
    auto c_cap = std::make_shared<std::string>();
    auto c_cand = std::make_shared<std::string>();
    cq->add_option("capacity", *c_cap, "JP capacity JSON file")->required();
    cq->add_option("--candidates", *c_cand,
                   "JSON file with an array of samples");
    cq->callback([emit_verdict, c_cap, c_cand] {
      const auto mu =
          lawcalc::capacity_from_json(lawcalc::load_json_file(*c_cap));
      std::vector<lawcalc::UniformSample> candidates;
      if (!c_cand->empty()) {
        const Json arr = lawcalc::load_json_file(*c_cand);
        if (!arr.is_array()) {
          throw lawcalc::ParseError("candidates: expected an array of samples");
        }
        for (const Json& s : arr) candidates.push_back(lawcalc::sample_from_json(s));
      }
      emit_verdict(lawcalc::choquet_symmetric_linearity(mu, candidates));
    });

    auto* probe = col->add_subcommand("expectation-probe",
                                      "expectation invariance probe");
    auto p_phi = std::make_shared<std::string>();
    auto p_trials = std::make_shared<int>(100);
    probe->add_option("--phi", *p_phi, "functional JSON file")->required();
    probe->add_option("--trials", *p_trials, "number of random pairs");
    probe->callback([emit_verdict, &cfg, p_phi, p_trials] {
      const auto phi =
          lawcalc::functional_from_json(lawcalc::load_json_file(*p_phi));
      emit_verdict(
          lawcalc::expectation_invariance_probe(phi, *p_trials, cfg.seed));
    });
  }

  // optimize solve | improve | counterexample
  {
    auto* opt = app.add_subcommand("optimize", "budget-constrained maximisation");
    opt->require_subcommand(1);

    auto* sv = opt->add_subcommand("solve", "antimonotone candidate search");
    auto s_prob = std::make_shared<std::string>();
    sv->add_option("problem", *s_prob, "problem JSON file")->required();
    sv->callback([&cfg, s_prob] {
      const auto q = lawcalc::problem_from_json(lawcalc::load_json_file(*s_prob));
      const auto r = lawcalc::solve(q);
      std::string text = "value: " + fmt(r.value) + "\nsolution:";
      for (double v : r.solution.values) text += " " + fmt(v);
      text += std::string("\nantimonotone with d: ") +
              (r.antimonotone_with_d ? "yes" : "no") + "\n";
      emit(cfg, lawcalc::solve_report_to_json(r), text);
    });

    auto* im = opt->add_subcommand("improve", "one antimonotone improvement step");
    auto i_prob = std::make_shared<std::string>();
    auto i_x = std::make_shared<std::string>();
    im->add_option("problem", *i_prob, "problem JSON file")->required();
    im->add_option("--x", *i_x, "comma-separated sample values")->required();
    im->callback([&cfg, i_prob, i_x] {
      const auto q = lawcalc::problem_from_json(lawcalc::load_json_file(*i_prob));
      const lawcalc::UniformSample x(parse_reals(*i_x));
      const auto out = lawcalc::antimonotone_improve(q, x);
      Json j{{"schema", "1"},
             {"improved", out.values},
             {"value", q.phi(out.law())}};
      std::string text = "improved:";
      for (double v : out.values) text += " " + fmt(v);
      text += "\nvalue: " + fmt(q.phi(out.law())) + "\n";
      emit(cfg, j, text);
    });

    auto* ce = opt->add_subcommand("counterexample",
                                   "sharpness scenarios and their checker");
    auto c_scen = std::make_shared<std::string>();
    auto c_d = std::make_shared<std::string>();
    ce->add_option("--scenario", *c_scen, "a|b|c|d")->required();
    ce->add_option("--d", *c_d, "comma-separated pricing density")->required();
    ce->callback([&cfg, c_scen, c_d] {
      lawcalc::Scenario s;
      if (*c_scen == "a") {
        s = lawcalc::Scenario::HalfSpaceMean;
      } else if (*c_scen == "b") {
        s = lawcalc::Scenario::RearrangementShifts;
      } else if (*c_scen == "c") {
        s = lawcalc::Scenario::IntervalTail;
      } else if (*c_scen == "d") {
        s = lawcalc::Scenario::PreferenceTop;
      } else {
        throw std::domain_error("counterexample: scenario must be a, b, c or d");
      }
      const lawcalc::UniformSample d(parse_reals(*c_d));
      const auto c = lawcalc::counterexample_scenario(s, d);
      const auto check = lawcalc::check_counterexample(c);
      std::string text =
          c.description + "\nexpected outcome " +
          (check.ok ? "confirmed" : "NOT confirmed") +
          " (optimal value " + fmt(check.optimal_value) + ", " +
          std::to_string(check.feasible_count) + " feasible candidates)\n";
      emit(cfg, lawcalc::counterexample_to_json(c, check), text);
    });
  }

  // repro
  {
    auto* rp = app.add_subcommand("repro", "reproduce the worked-example values");
    auto id = std::make_shared<std::string>("all");
    rp->add_option("id", *id, "example id or 'all'")->required();
    rp->callback([&cfg, &exit_code, id] {
      const auto sections = lawcalc::run_repro(*id);
      emit(cfg, lawcalc::repro_to_json(sections),
           lawcalc::repro_to_text(sections));
      for (const auto& s : sections) {
        if (!s.pass) exit_code = 1;
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n" << app.help();
    return 1;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lawcalc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
