#include "boxlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace boxlab {

Json rational_json(const Rational& q) { return to_string(q); }

Json float_json(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json table_json(const SingleTable& t) {
  Json rows = Json::array();
  for (int s = 0; s < 2; ++s) rows.push_back({rational_json(t(s, 0)), rational_json(t(s, 1))});
  return rows;
}

Json box_json(const Box222& box) {
  Json rows = Json::array();
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      Json row = Json::array();
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) row.push_back(rational_json(box(x, y, a, b)));
      rows.push_back(row);
    }
  return Json{{"entries", rows}};
}

namespace {

Rational cell_rational(const Json& c) {
  if (c.is_string()) return parse_rational(c.get<std::string>());
  if (c.is_number_integer()) return Rational(c.get<long long>());
  if (c.is_number()) return parse_rational(c.dump());
  throw ParseError("box cell must be a string or number, got " + c.dump());
}

}  // namespace

Box222 box_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("entries")) throw ParseError("box JSON needs an \"entries\" field");
  const Json& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != 4) throw ParseError("\"entries\" must hold 4 rows");
  std::array<Rational, 16> e;
  for (int r = 0; r < 4; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 4) throw ParseError("each row must hold 4 cells");
    for (int c = 0; c < 4; ++c) e[4 * r + c] = cell_rational(rows[r][c]);
  }
  return make_box(e);
}

Json model_json(const LhvLhsModel& model) {
  Json terms = Json::array();
  for (int l = 0; l < model.size(); ++l) {
    Json t{{"weight", rational_json(model.weights[l])},
           {"alice", table_json(model.alice_tables[l])},
           {"bob", table_json(model.bob_tables[l])}};
    if (!model.bob_states.empty()) {
      const auto& s = model.bob_states[l];
      t["state"] = Json{{"amp0", float_json(s.amp0)},
                        {"amp1", float_json(s.amp1)},
                        {"cos_phi", float_json(s.phase_cos)},
                        {"cos_phi_squared", rational_json(s.phase_cos_sq)},
                        {"basis_state", s.degenerate}};
    }
    terms.push_back(t);
  }
  return Json{{"dimension", model.dimension()}, {"terms", terms}};
}

Json certificate_json(const Certificate& c) {
  Json j{{"verdict", c.verdict == Verdict::Feasible ? "feasible" : "infeasible"},
         {"summary", c.summary},
         {"variables", c.variables},
         {"equations", c.equations},
         {"rank", c.rank},
         {"augmented_rank", c.augmented_rank},
         {"free_parameters", c.free_parameters},
         {"derivation", c.derivation}};
  if (c.witness) j["witness"] = model_json(*c.witness);
  if (c.forced_zero >= 0) j["forced_zero"] = c.forced_zero;
  if (c.farkas) {
    Json y = Json::array();
    for (int i = 0; i < c.farkas->y.size(); ++i) y.push_back(rational_json(c.farkas->y(i)));
    j["farkas"] = Json{{"y", y}, {"verified", c.relaxation && verify_farkas(*c.relaxation, *c.farkas)}};
  }
  if (c.trace) {
    Json root = Json::array();
    for (const auto& [lo, hi] : c.trace->root) root.push_back({rational_json(lo), rational_json(hi)});
    j["subdivision"] = Json{{"root", root},
                            {"leaves", c.trace->leaves.size()},
                            {"nodes", c.trace->nodes},
                            {"max_depth", c.trace->max_depth},
                            {"verified", c.disc_problem && verify_trace(*c.disc_problem, *c.trace)}};
  }
  return j;
}

namespace {

Json assignment_json(const AliceAssignment& a) {
  Json s = Json::array();
  for (auto d : a.strategies) s.push_back(strategy_label(d));
  return s;
}

}  // namespace

Json instance_json(const InstanceRecord& r) {
  Json j{{"strategies", assignment_json(r.assignment)},
         {"grouping", r.grouping.group_of},
         {"dimension", r.dimension},
         {"status", to_string(r.status)},
         {"note", r.note}};
  if (r.certificate) j["certificate"] = certificate_json(*r.certificate);
  return j;
}

Json report_json(const DimensionReport& rep, bool with_instances) {
  Json j{{"model", rep.kind == ModelKind::LhvLhs ? "lhvlhs" : "lhv"},
         {"verdict", rep.verdict},
         {"min_dim", rep.min_dim ? Json(*rep.min_dim) : Json(nullptr)},
         {"exact", rep.exact},
         {"explored", rep.explored}};
  if (rep.witness) {
    j["witness"] = model_json(*rep.witness);
    j["witness_strategies"] = assignment_json(rep.witness_assignment);
    j["witness_grouping"] = rep.witness_grouping.group_of;
  } else {
    j["witness"] = nullptr;
  }
  Json counts = Json::object();
  for (const auto& r : rep.instances) {
    const std::string k = std::to_string(r.dimension);
    if (!counts.contains(k)) counts[k] = Json::object();
    const std::string s = to_string(r.status);
    counts[k][s] = counts[k].value(s, 0) + 1;
  }
  j["per_dimension"] = counts;
  if (with_instances) {
    Json inst = Json::array();
    for (const auto& r : rep.instances) inst.push_back(instance_json(r));
    j["instances"] = inst;
  }
  return j;
}

QState state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rho")) throw ParseError("state JSON needs a \"rho\" field");
  const int dA = j.value("dimA", 0), dB = j.value("dimB", 0);
  const Json& rows = j.at("rho");
  if (!rows.is_array() || rows.empty()) throw ParseError("\"rho\" must be a nonempty matrix");
  const int n = static_cast<int>(rows.size());
  ComplexMatrix rho(n, n);
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n) throw ParseError("\"rho\" must be square");
    for (int c = 0; c < n; ++c) {
      const Json& z = rows[r][c];
      if (z.is_number()) {
        rho(r, c) = {z.get<double>(), 0.0};
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        rho(r, c) = {z[0].get<double>(), z[1].get<double>()};
      } else {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
    }
  }
  return make_state(rho, dA, dB);
}

Json state_json(const QState& s) {
  Json rows = Json::array();
  for (int r = 0; r < s.rho.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < s.rho.cols(); ++c) row.push_back({float_json(s.rho(r, c).real()), float_json(s.rho(r, c).imag())});
    rows.push_back(row);
  }
  return Json{{"dimA", s.dimA}, {"dimB", s.dimB}, {"rho", rows}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace boxlab
