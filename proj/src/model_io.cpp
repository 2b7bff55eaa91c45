#include "agc/model_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace agc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ParseError(origin + ": " + what);
}

const json& field(const json& obj, const std::string& origin, const std::string& path,
                  const std::string& name) {
  const auto it = obj.find(name);
  if (it == obj.end()) fail(origin, path + "." + name + " is missing");
  return *it;
}

double number_at(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_number()) fail(origin, where + " is not a number");
  return j.get<double>();
}

Vec vector_at(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_array()) fail(origin, where + " is not an array");
  Vec out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::ostringstream os;
    os << where << "[" << i << "]";
    out.push_back(number_at(j[i], origin, os.str()));
  }
  return out;
}

// Nested array of numbers. `width_hint` disambiguates a zero-row matrix.
Matrix matrix_at(const json& j, const std::string& origin, const std::string& where,
                 std::size_t width_hint = 0) {
  if (!j.is_array()) fail(origin, where + " is not an array of rows");
  Matrix m(0, 0);
  if (j.empty()) return Matrix(0, width_hint);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::ostringstream os;
    os << where << "[" << i << "]";
    if (!j[i].is_array()) fail(origin, os.str() + " is not an array");
    try {
      m.append_row(vector_at(j[i], origin, os.str()));
    } catch (const DimensionError&) {
      fail(origin, os.str() + " has a different length than the first row");
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

InitialSet parse_initial_set(const json& j, const std::string& origin) {
  Matrix fx = matrix_at(field(j, origin, "initial_set", "Fx"), origin, "initial_set.Fx");
  Matrix fd = matrix_at(field(j, origin, "initial_set", "Fd"), origin, "initial_set.Fd");
  Vec f = vector_at(field(j, origin, "initial_set", "f"), origin, "initial_set.f");
  return build_x0(std::move(fx), std::move(fd), std::move(f));
}

System parse_system(const json& sys_j, const json* x0_j, const std::string& origin) {
  Matrix a = matrix_at(field(sys_j, origin, "system", "A"), origin, "system.A");
  Matrix b = matrix_at(field(sys_j, origin, "system", "B"), origin, "system.B");
  Matrix c = matrix_at(field(sys_j, origin, "system", "C"), origin, "system.C");
  Matrix d = matrix_at(field(sys_j, origin, "system", "D"), origin, "system.D");
  Vec w = sys_j.contains("w") ? vector_at(sys_j["w"], origin, "system.w") : Vec(a.rows(), 0.0);
  Vec v = sys_j.contains("v") ? vector_at(sys_j["v"], origin, "system.v") : Vec(c.rows(), 0.0);
  InitialSet x0;  // absent section means an unconstrained initial state
  if (x0_j != nullptr) x0 = parse_initial_set(*x0_j, origin);
  try {
    return build_system(std::move(a), std::move(b), std::move(c), std::move(d), std::move(w),
                        std::move(v), std::move(x0));
  } catch (const DimensionError& e) {
    fail(origin, e.what());
  }
}

SimParams parse_sim(const json& j, const std::string& origin) {
  SimParams sim;
  LeaderProfileParams& lp = sim.leader;
  lp.dt = number_at(field(j, origin, "sim", "dt"), origin, "sim.dt");
  lp.phase1_s = number_at(field(j, origin, "sim", "phase1_s"), origin, "sim.phase1_s");
  lp.phase2_s = number_at(field(j, origin, "sim", "phase2_s"), origin, "sim.phase2_s");
  lp.phase3_s = number_at(field(j, origin, "sim", "phase3_s"), origin, "sim.phase3_s");
  lp.v_init = number_at(field(j, origin, "sim", "v_init_mps"), origin, "sim.v_init_mps");
  lp.v_low = number_at(field(j, origin, "sim", "v_low_mps"), origin, "sim.v_low_mps");
  lp.v_high = number_at(field(j, origin, "sim", "v_high_mps"), origin, "sim.v_high_mps");
  lp.a_mag = number_at(field(j, origin, "sim", "a_mag_mps2"), origin, "sim.a_mag_mps2");
  lp.p_init = j.contains("p2_init_m") ? number_at(j["p2_init_m"], origin, "sim.p2_init_m") : 0.0;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) fail(origin, "sim.seed is not an integer");
    lp.seed = j["seed"].get<std::uint64_t>();
  }
  sim.x_init = vector_at(field(j, origin, "sim", "x_init"), origin, "sim.x_init");
  if (j.contains("horizon_s")) {
    sim.horizon_s = number_at(j["horizon_s"], origin, "sim.horizon_s");
  }
  return sim;
}

std::size_t width_hint_of(const json& j) {
  if (j.contains("width") && j["width"].is_number_unsigned()) {
    return j["width"].get<std::size_t>();
  }
  return 0;
}

}  // namespace

Model parse_model(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, e.what());
  }
  if (!doc.is_object()) fail(origin, "top level is not an object");

  Model model;
  if (doc.contains("assumptions")) {
    const json& a = doc["assumptions"];
    const std::size_t hint = width_hint_of(a);
    Matrix next = matrix_at(field(a, origin, "assumptions", "A1"), origin, "assumptions.A1", hint);
    Matrix curr = matrix_at(field(a, origin, "assumptions", "A0"), origin, "assumptions.A0", hint);
    Vec upper = vector_at(field(a, origin, "assumptions", "a0"), origin, "assumptions.a0");
    try {
      model.assumptions = build_assumptions(std::move(next), std::move(curr), std::move(upper));
    } catch (const DimensionError& e) {
      fail(origin, e.what());
    }
  }
  if (doc.contains("guarantees")) {
    const json& g = doc["guarantees"];
    const std::size_t hint = width_hint_of(g);
    Matrix next = matrix_at(field(g, origin, "guarantees", "G1"), origin, "guarantees.G1", hint);
    Matrix curr = matrix_at(field(g, origin, "guarantees", "G0"), origin, "guarantees.G0", hint);
    Vec upper = vector_at(field(g, origin, "guarantees", "g0"), origin, "guarantees.g0");
    try {
      model.guarantees = build_guarantees(std::move(next), std::move(curr), std::move(upper));
    } catch (const DimensionError& e) {
      fail(origin, e.what());
    }
  }
  if (doc.contains("system")) {
    const json* x0 = doc.contains("initial_set") ? &doc["initial_set"] : nullptr;
    model.system = parse_system(doc["system"], x0, origin);
  } else if (doc.contains("initial_set")) {
    fail(origin, "initial_set given without a system section");
  }
  if (doc.contains("sim")) {
    model.sim = parse_sim(doc["sim"], origin);
  }
  return model;
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), path);
}

std::string serialize_model(const Model& model) {
  json doc = json::object();
  if (model.system) {
    const System& s = *model.system;
    doc["system"] = {{"A", matrix_to_json(s.A)}, {"B", matrix_to_json(s.B)},
                     {"C", matrix_to_json(s.C)}, {"D", matrix_to_json(s.D)},
                     {"w", s.w},                 {"v", s.v}};
    doc["initial_set"] = {{"Fx", matrix_to_json(s.initial_set.state_coef)},
                          {"Fd", matrix_to_json(s.initial_set.input_coef)},
                          {"f", s.initial_set.upper}};
  }
  if (model.assumptions) {
    const Assumptions& a = *model.assumptions;
    doc["assumptions"] = {{"A1", matrix_to_json(a.next_coef)},
                          {"A0", matrix_to_json(a.curr_coef)},
                          {"a0", a.upper}};
    if (a.size() == 0) doc["assumptions"]["width"] = a.input_dim();
  }
  if (model.guarantees) {
    const Guarantees& g = *model.guarantees;
    doc["guarantees"] = {{"G1", matrix_to_json(g.next_coef)},
                         {"G0", matrix_to_json(g.curr_coef)},
                         {"g0", g.upper}};
    if (g.size() == 0) doc["guarantees"]["width"] = g.width();
  }
  if (model.sim) {
    const SimParams& sim = *model.sim;
    json j = {{"dt", sim.leader.dt},
              {"phase1_s", sim.leader.phase1_s},
              {"phase2_s", sim.leader.phase2_s},
              {"phase3_s", sim.leader.phase3_s},
              {"v_init_mps", sim.leader.v_init},
              {"v_low_mps", sim.leader.v_low},
              {"v_high_mps", sim.leader.v_high},
              {"a_mag_mps2", sim.leader.a_mag},
              {"p2_init_m", sim.leader.p_init},
              {"seed", sim.leader.seed},
              {"x_init", sim.x_init}};
    if (sim.horizon_s) j["horizon_s"] = *sim.horizon_s;
    doc["sim"] = std::move(j);
  }
  return doc.dump(2) + "\n";
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << serialize_model(model);
  if (!out) throw ParseError(path + ": write failed");
}

Contract contract_of(const Model& model, const std::string& origin) {
  if (!model.assumptions) fail(origin, "assumptions section is missing");
  if (!model.guarantees) fail(origin, "guarantees section is missing");
  try {
    return make_contract(*model.assumptions, *model.guarantees);
  } catch (const DimensionError& e) {
    fail(origin, e.what());
  }
}

namespace {

const char* status_name(OptStatus s) {
  switch (s) {
    case OptStatus::Value: return "value";
    case OptStatus::PlusInfinity: return "plus_infinity";
    case OptStatus::Infeasible: return "infeasible";
  }
  return "value";
}

OptStatus status_of(const std::string& name, const std::string& where) {
  if (name == "value") return OptStatus::Value;
  if (name == "plus_infinity") return OptStatus::PlusInfinity;
  if (name == "infeasible") return OptStatus::Infeasible;
  throw ParseError(where + ": unknown status '" + name + "'");
}

json opt_to_json(const OptValue& v) {
  json j = {{"status", status_name(v.status)}, {"vacuous", v.vacuous}};
  if (v.status == OptStatus::Value && std::isfinite(v.value)) j["value"] = v.value;
  return j;
}

OptValue opt_from_json(const json& j, const std::string& where) {
  OptValue v;
  v.status = status_of(j.at("status").get<std::string>(), where);
  v.vacuous = j.value("vacuous", false);
  if (j.contains("value")) {
    v.value = j["value"].get<double>();
  } else if (v.status == OptStatus::Value) {
    v.value = -std::numeric_limits<double>::infinity();
  }
  return v;
}

}  // namespace

std::string verification_report_to_json(const VerificationReport& report) {
  json thetas = json::array();
  for (const ThetaValue& t : report.thetas) {
    json j = opt_to_json(t.opt);
    j["n"] = t.n;
    j["l"] = t.l;
    thetas.push_back(std::move(j));
  }
  const json doc = {{"command", "verify"},
                    {"verified", report.verified},
                    {"tolerance", report.tolerance},
                    {"thetas", std::move(thetas)},
                    {"diagnostic", report.diagnostic}};
  return doc.dump(2) + "\n";
}

VerificationReport verification_report_from_json(const std::string& text) {
  const json doc = json::parse(text);
  VerificationReport report;
  report.verified = doc.at("verified").get<bool>();
  report.tolerance = doc.at("tolerance").get<double>();
  report.diagnostic = doc.value("diagnostic", "");
  for (const json& j : doc.at("thetas")) {
    ThetaValue t;
    t.n = j.at("n").get<std::size_t>();
    t.l = j.at("l").get<std::size_t>();
    t.opt = opt_from_json(j, "thetas");
    report.thetas.push_back(std::move(t));
  }
  return report;
}

std::string refinement_report_to_json(const RefinementReport& report) {
  const json doc = {{"command", "refine"},
                    {"refines", report.refines},
                    {"tolerance", report.tolerance},
                    {"psi_d", opt_to_json(report.psi_d)},
                    {"psi_omega", opt_to_json(report.psi_omega)},
                    {"diagnostic", report.diagnostic}};
  return doc.dump(2) + "\n";
}

RefinementReport refinement_report_from_json(const std::string& text) {
  const json doc = json::parse(text);
  RefinementReport report;
  report.refines = doc.at("refines").get<bool>();
  report.tolerance = doc.at("tolerance").get<double>();
  report.diagnostic = doc.value("diagnostic", "");
  report.psi_d = opt_from_json(doc.at("psi_d"), "psi_d");
  report.psi_omega = opt_from_json(doc.at("psi_omega"), "psi_omega");
  return report;
}

}  // namespace agc
