// Command-line front end: verify | refine | simulate | check-extendable | cascade.
// Exit codes: 0 the checked property holds, 1 it does not, 2 operational error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agc/compose.hpp"
#include "agc/model_io.hpp"
#include "agc/refine.hpp"
#include "agc/sim.hpp"
#include "agc/verify.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string describe(const agc::OptValue& v) {
  switch (v.status) {
    case agc::OptStatus::PlusInfinity: return "+inf";
    case agc::OptStatus::Infeasible: return "infeasible";
    case agc::OptStatus::Value:
      return v.vacuous ? "-inf (vacuous)" : fmt(v.value);
  }
  return "?";
}

int run_verify(const std::string& path, double tolerance, bool as_json) {
  const agc::Model model = agc::load_model(path);
  if (!model.system) throw agc::ParseError(path + ": system section is missing");
  const agc::Contract con = agc::contract_of(model, path);
  const agc::VerificationReport report = agc::verify_contract(*model.system, con, tolerance);
  if (as_json) {
    std::cout << agc::verification_report_to_json(report);
  } else {
    for (const agc::ThetaValue& t : report.thetas) {
      std::cout << "theta(" << t.n << "," << t.l << ") = " << describe(t.opt) << "\n";
    }
    std::cout << "verified: " << (report.verified ? "yes" : "no") << "  (tolerance "
              << fmt(report.tolerance) << ")\n";
    if (!report.diagnostic.empty()) std::cout << "note: " << report.diagnostic << "\n";
  }
  return report.verified ? kExitHolds : kExitFails;
}

int run_refine(const std::string& path1, const std::string& path2, double tolerance,
               bool as_json) {
  const agc::Contract c1 = agc::contract_of(agc::load_model(path1), path1);
  const agc::Contract c2 = agc::contract_of(agc::load_model(path2), path2);
  const agc::RefinementReport report = agc::check_refinement(c1, c2, tolerance);
  if (as_json) {
    std::cout << agc::refinement_report_to_json(report);
  } else {
    std::cout << "psi_D = " << describe(report.psi_d) << "\n";
    std::cout << "psi_Omega = " << describe(report.psi_omega) << "\n";
    std::cout << "refines: " << (report.refines ? "yes" : "no") << "  (tolerance "
              << fmt(report.tolerance) << ")\n";
    if (!report.diagnostic.empty()) std::cout << "note: " << report.diagnostic << "\n";
    std::cout << "note: extendability preconditions were not checked here; "
                 "run check-extendable on both contracts\n";
  }
  return report.refines ? kExitHolds : kExitFails;
}

std::string csv_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int run_simulate(const std::string& path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override) {
  const agc::Model model = agc::load_model(path);
  if (!model.system) throw agc::ParseError(path + ": system section is missing");
  if (!model.sim) throw agc::ParseError(path + ": sim section is missing");
  const agc::System& sys = *model.system;

  agc::SimParams sim = *model.sim;
  if (seed_override) sim.leader.seed = *seed_override;
  const double dt = sim.leader.dt;

  // An explicit horizon reshapes the tail: the sway window stays where the
  // phases put it, anything beyond runs at constant velocity.
  if (sim.horizon_s) {
    const double total = *sim.horizon_s;
    const double p1 = std::min(sim.leader.phase1_s, total);
    const double p2 = std::min(sim.leader.phase2_s, std::max(0.0, total - p1));
    sim.leader.phase1_s = p1;
    sim.leader.phase2_s = p2;
    sim.leader.phase3_s = std::max(0.0, total - p1 - p2);
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw agc::ParseError(out_path + ": cannot open file for writing");
  out << "k,t_s,p2_m,v2_mps,a2_mps2,p1_m,v1_mps,a1_mps2,gap_m,headway_s,guarantee_slack\n";

  if (sim.horizon_s && *sim.horizon_s == 0.0) {
    std::cout << "0 samples, no guarantee evaluations\n";
    return kExitHolds;
  }

  const std::vector<agc::Vec> inputs = agc::leader_profile(sim.leader);
  const agc::Trace trace = agc::simulate(sys, inputs, sim.x_init, dt);
  const agc::Guarantees* gua = model.guarantees ? &*model.guarantees : nullptr;

  const std::size_t last = trace.samples() - 1;
  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  for (std::size_t k = 0; k <= last; ++k) {
    const agc::Vec& d = trace.inputs[k];
    const agc::Vec& y = trace.outputs[k];
    const double a2 = k < last ? (trace.inputs[k + 1][1] - d[1]) / dt : 0.0;
    const double a1 = k < last ? (trace.outputs[k + 1][1] - y[1]) / dt : 0.0;
    const double gap = d[0] - y[0];
    const double headway = gap / y[1];

    double slack = std::numeric_limits<double>::infinity();
    if (gua != nullptr && gua->size() > 0) {
      const std::size_t kk = std::min(k + 1, last);
      const agc::Vec curr = agc::concat(d, y);
      const agc::Vec next = agc::concat(trace.inputs[kk], trace.outputs[kk]);
      for (std::size_t r = 0; r < gua->size(); ++r) {
        double lhs = gua->upper[r];
        for (std::size_t j = 0; j < gua->width(); ++j) {
          lhs -= gua->next_coef(r, j) * next[j] + gua->curr_coef(r, j) * curr[j];
        }
        slack = std::min(slack, lhs);
      }
      if (k < last) {
        if (slack < min_slack) min_slack = slack;
        if (slack < -1e-7) ++violations;
      }
    }

    out << k << ',' << csv_num(static_cast<double>(k) * dt) << ',' << csv_num(d[0]) << ','
        << csv_num(d[1]) << ',' << csv_num(a2) << ',' << csv_num(y[0]) << ',' << csv_num(y[1])
        << ',' << csv_num(a1) << ',' << csv_num(gap) << ',' << csv_num(headway) << ','
        << csv_num(slack) << '\n';
  }
  if (!out) throw agc::ParseError(out_path + ": write failed");

  std::cout << trace.samples() << " samples written to " << out_path << "\n";
  if (gua != nullptr && gua->size() > 0) {
    std::cout << "min guarantee slack = " << fmt(min_slack) << ", violations beyond 1e-7: "
              << violations << "\n";
  } else {
    std::cout << "no guarantees in the model file, slack column is inf\n";
  }
  return kExitHolds;
}

int run_check_extendable(const std::string& path, const std::string& which) {
  const agc::Model model = agc::load_model(path);
  const agc::Matrix* next = nullptr;
  const agc::Matrix* curr = nullptr;
  const agc::Vec* upper = nullptr;
  if (which == "assumptions") {
    if (!model.assumptions) throw agc::ParseError(path + ": assumptions section is missing");
    next = &model.assumptions->next_coef;
    curr = &model.assumptions->curr_coef;
    upper = &model.assumptions->upper;
  } else {
    if (!model.guarantees) throw agc::ParseError(path + ": guarantees section is missing");
    next = &model.guarantees->next_coef;
    curr = &model.guarantees->curr_coef;
    upper = &model.guarantees->upper;
  }
  const agc::ExtendabilityReport report = agc::check_extendable(*next, *curr, *upper);
  std::cout << which << (report.extendable ? " extendable" : " not extendable");
  if (report.vacuous) std::cout << " (vacuously: the constraint set is empty)";
  std::cout << "\n";
  return report.extendable ? kExitHolds : kExitFails;
}

int run_cascade(const std::string& path1, const std::string& path2, const std::string& out_path) {
  const agc::Model m1 = agc::load_model(path1);
  const agc::Model m2 = agc::load_model(path2);
  if (!m1.system) throw agc::ParseError(path1 + ": system section is missing");
  if (!m2.system) throw agc::ParseError(path2 + ": system section is missing");

  agc::Model out;
  out.system = agc::cascade_systems(*m1.system, *m2.system);

  // The first file's contract talks about the composed input, so it carries
  // over whenever the output width still fits.
  if (m1.assumptions) out.assumptions = m1.assumptions;
  if (m1.guarantees &&
      m1.guarantees->width() == out.system->input_dim + out.system->output_dim) {
    out.guarantees = m1.guarantees;
  } else if (m1.guarantees) {
    std::cout << "note: first model's guarantees dropped, width does not match the cascade\n";
  }

  agc::save_model(out, out_path);
  std::cout << "cascade written to " << out_path << "\n";
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assume/guarantee contract verification for discrete-time affine systems"};
  app.require_subcommand(1);

  std::string model_path, second_path, out_path = "trace.csv", which = "assumptions";
  double tolerance = agc::kVerdictTol;
  bool as_json = false;
  std::optional<std::uint64_t> seed;

  CLI::App* verify = app.add_subcommand("verify", "Check that a system satisfies its contract");
  verify->add_option("model", model_path, "model file")->required();
  verify->add_option("--tolerance", tolerance, "verdict tolerance");
  verify->add_flag("--json", as_json, "machine-readable report");

  CLI::App* refine = app.add_subcommand("refine", "Check that contract C1 refines contract C2");
  refine->add_option("c1", model_path, "model file holding C1")->required();
  refine->add_option("c2", second_path, "model file holding C2")->required();
  refine->add_option("--tolerance", tolerance, "verdict tolerance");
  refine->add_flag("--json", as_json, "machine-readable report");

  CLI::App* simulate = app.add_subcommand("simulate", "Run the two-vehicle rollout, emit CSV");
  simulate->add_option("model", model_path, "model file with a sim section")->required();
  simulate->add_option("--out", out_path, "CSV output path");
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt = simulate->add_option("--seed", seed_value, "override the file's seed");

  CLI::App* extend = app.add_subcommand("check-extendable", "Check the extendability side-condition");
  extend->add_option("model", model_path, "model file")->required();
  extend->add_option("--which", which, "assumptions|guarantees")
      ->check(CLI::IsMember({"assumptions", "guarantees"}));

  CLI::App* cascade = app.add_subcommand("cascade", "Compose two systems in series");
  cascade->add_option("s1", model_path, "model file of the first system")->required();
  cascade->add_option("s2", second_path, "model file of the second system")->required();
  cascade->add_option("--out", out_path, "output model path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? kExitHolds : kExitError;
  }

  try {
    if (*verify) return run_verify(model_path, tolerance, as_json);
    if (*refine) return run_refine(model_path, second_path, tolerance, as_json);
    if (*simulate) {
      if (seed_opt->count() > 0) seed = seed_value;
      return run_simulate(model_path, out_path, seed);
    }
    if (*extend) return run_check_extendable(model_path, which);
    if (*cascade) return run_cascade(model_path, second_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
