#ifndef LAWCALC_REPRO_HPP
#define LAWCALC_REPRO_HPP

#include <string>
#include <vector>

#include "lawcalc/json_io.hpp"

namespace lawcalc {

/// One asserted value of a worked example, checked within 1e-12.
struct ReproClaim {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  bool pass = false;
};

/// An informational value printed but not asserted.
struct ReproAnnotation {
  std::string name;
  double computed = 0.0;
  std::string note;
};

struct ReproSection {
  std::string id;
  std::vector<ReproClaim> claims;
  std::vector<ReproAnnotation> annotations;
  bool pass = true;
};

const std::vector<std::string>& repro_ids();

/// Runs one section, or all of them for id "all".
std::vector<ReproSection> run_repro(const std::string& id);

Json repro_to_json(const std::vector<ReproSection>& sections);
std::string repro_to_text(const std::vector<ReproSection>& sections);

}  // namespace lawcalc

#endif
