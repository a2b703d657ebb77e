#include "kerrcat/presets.hpp"

#include <string>

#include "kerrcat/error.hpp"

namespace kerrcat {

LgProtocol preset_protocol(std::string_view name, double alpha0) {
  LgProtocol p;
  p.alpha0 = complex(alpha0, 0.0);
  p.partition_angle = 0.0;
  p.quad = QuadratureSpec{0.0};
  if (name == "k4-lg") {
    p.spec = HamiltonianSpec{4, 1.0, 0.0};
    p.times = {RationalPhaseTime(0, 1), RationalPhaseTime(1, 4), RationalPhaseTime(3, 4)};
    p.assignments = {OutcomeAssignment{1.0, -1.0}, OutcomeAssignment{1.0, -1.0}, OutcomeAssignment{1.0, -1.0}};
  } else if (name == "k2-lg") {
    p.spec = HamiltonianSpec{2, 1.0, 0.0};
    p.times = {RationalPhaseTime(0, 1), RationalPhaseTime(1, 3), RationalPhaseTime(2, 3)};
    p.assignments = {OutcomeAssignment{1.0, -1.0}, OutcomeAssignment{1.0, 0.0}, OutcomeAssignment{0.0, -1.0}};
  } else {
    throw validation_error("unknown preset '" + std::string(name) + "'");
  }
  p.validate();
  return p;
}

std::vector<std::string> preset_names() { return {"k4-lg", "k2-lg"}; }

}  // namespace kerrcat
