#pragma once

#include <optional>
#include <string>

#include "agc/model.hpp"
#include "agc/refine.hpp"
#include "agc/sim.hpp"
#include "agc/verify.hpp"

namespace agc {

/// Simulation section of a model file. Leader parameters plus the follower's
/// initial state. horizon_s, when set, overrides the total rollout length
/// (phases are cut or padded with zero acceleration).
struct SimParams {
  LeaderProfileParams leader;
  Vec x_init;
  std::optional<double> horizon_s;
};

/// In-memory form of a model file. Sections are optional; each command
/// requires the ones it needs.
struct Model {
  std::optional<System> system;  // carries the initial set
  std::optional<Assumptions> assumptions;
  std::optional<Guarantees> guarantees;
  std::optional<SimParams> sim;
};

Model parse_model(const std::string& text, const std::string& origin);
Model load_model(const std::string& path);
std::string serialize_model(const Model& model);
void save_model(const Model& model, const std::string& path);

Contract contract_of(const Model& model, const std::string& origin);

std::string verification_report_to_json(const VerificationReport& report);
VerificationReport verification_report_from_json(const std::string& text);

std::string refinement_report_to_json(const RefinementReport& report);
RefinementReport refinement_report_from_json(const std::string& text);

}  // namespace agc
