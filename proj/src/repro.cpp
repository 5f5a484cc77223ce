#include "lawcalc/repro.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "lawcalc/riskmeasures.hpp"

namespace lawcalc {

namespace {

constexpr double kReproTol = 1e-12;

void claim(ReproSection& s, const std::string& name, double expected,
           double computed) {
  const bool pass = std::abs(computed - expected) <= kReproTol;
  s.claims.push_back(ReproClaim{name, expected, computed, pass});
  if (!pass) s.pass = false;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ReproSection key_example() {
  ReproSection s;
  s.id = "ex-key-example";

  const DiscreteLaw z({Atom{-1.0, 2.0 / 3.0}, Atom{2.0, 1.0 / 3.0}});
  const DiscreteLaw x({Atom{-6.0, 0.5}, Atom{4.0, 0.5}});
  const DiscreteLaw y = DiscreteLaw::point_mass(-1.0);

  claim(s, "E[Z]", 0.0, mean(z));
  claim(s, "rho(Z)", 0.5, rho_example(z));
  claim(s, "E[X]", -1.0, mean(x));
  claim(s, "E[Y]", -1.0, mean(y));
  claim(s, "phi(X)", 0.0, phi_example(x));
  claim(s, "phi(Y)", -1.0, phi_example(y));
  claim(s, "rho(Y)", -1.0, rho_example(y));
  for (double m : {0.0, 1.0, 2.0, 5.0}) {
    claim(s, "phi(" + fmt(m) + "*Z)", 0.0, phi_example(affine(z, m, 0.0)));
  }

  const double rho_x = rho_example(x);
  s.annotations.push_back(ReproAnnotation{
      "rho(X)", rho_x,
      "evaluates to " + fmt(rho_x) +
          ", not the reference value 0; the phi claims above are unaffected "
          "(they need only rho(X) >= 0)"});
  return s;
}

ReproSection quasiconv_example() {
  ReproSection s;
  s.id = "ex-quasiconv";

  const DiscreteLaw z({Atom{-1.0, 2.0 / 3.0}, Atom{2.0, 1.0 / 3.0}});
  const DiscreteLaw u({Atom{0.0, 0.5}, Atom{4.0, 0.5}});

  claim(s, "E[Z]", 0.0, mean(z));
  claim(s, "E[U]", 2.0, mean(u));
  for (double t : {0.0, 1.0, 2.0, 5.0}) {
    claim(s, "phi(" + fmt(t) + "*U)", t, phi_example(affine(u, t, 0.0)));
    claim(s, "phi(-" + fmt(t) + "*U)", -t + 0.0, phi_example(affine(u, -t, 0.0)));
  }
  for (double t : {1.0, 2.0, 5.0}) {
    claim(s, "phi(" + fmt(t) + "*Z)", 0.0, phi_example(affine(z, t, 0.0)));
    claim(s, "phi(-" + fmt(t) + "*Z)", 0.0, phi_example(affine(z, -t, 0.0)));
    claim(s, "rho(-" + fmt(t) + "*Z)", t / 2.0, rho_example(affine(z, -t, 0.0)));
  }
  return s;
}

}  // namespace

const std::vector<std::string>& repro_ids() {
  static const std::vector<std::string> ids = {"ex-key-example",
                                               "ex-quasiconv"};
  return ids;
}

std::vector<ReproSection> run_repro(const std::string& id) {
  if (id == "all") {
    return {key_example(), quasiconv_example()};
  }
  if (id == "ex-key-example") return {key_example()};
  if (id == "ex-quasiconv") return {quasiconv_example()};
  throw std::domain_error("repro: unknown example id '" + id + "'");
}

Json repro_to_json(const std::vector<ReproSection>& sections) {
  Json report = Json::array();
  bool all_pass = true;
  for (const ReproSection& s : sections) {
    Json claims = Json::array();
    for (const ReproClaim& c : s.claims) {
      claims.push_back(Json{{"name", c.name},
                            {"expected", c.expected},
                            {"computed", c.computed},
                            {"pass", c.pass}});
    }
    Json annotations = Json::array();
    for (const ReproAnnotation& a : s.annotations) {
      annotations.push_back(
          Json{{"name", a.name}, {"computed", a.computed}, {"note", a.note}});
    }
    report.push_back(Json{{"id", s.id},
                          {"claims", std::move(claims)},
                          {"annotations", std::move(annotations)},
                          {"pass", s.pass}});
    if (!s.pass) all_pass = false;
  }
  return Json{{"schema", "1"}, {"report", std::move(report)}, {"pass", all_pass}};
}

std::string repro_to_text(const std::vector<ReproSection>& sections) {
  std::ostringstream out;
  for (const ReproSection& s : sections) {
    out << "[" << s.id << "]\n";
    for (const ReproClaim& c : s.claims) {
      out << (c.pass ? "ok  " : "FAIL") << "  " << c.name << " = "
          << fmt(c.expected) << "  (computed " << fmt(c.computed) << ")\n";
    }
    for (const ReproAnnotation& a : s.annotations) {
      out << "note  " << a.name << ": " << a.note << "\n";
    }
    out << (s.pass ? "section ok" : "section FAILED") << "\n";
  }
  return out.str();
}

}  // namespace lawcalc
