#include "boxlab/commands.hpp"

#include "boxlab/inequalities.hpp"

#include <cmath>
#include <ostream>

namespace boxlab {

namespace {

Rational parse_v(const std::optional<std::string>& text, const Rational& fallback) {
  const Rational V = text ? parse_rational(*text) : fallback;
  if (V <= 0 || V > 1) throw DomainError("V must lie in (0, 1], got " + to_string(V));
  return V;
}

MeasurementPair pair_zx(bool negate_z = false) {
  return qubit_pair(Eigen::Vector3d(0, 0, negate_z ? -1 : 1), Eigen::Vector3d(1, 0, 0));
}

MeasurementPair pair_xz() { return qubit_pair(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 0, 1)); }

// Reference tables, written out entry by entry.
Box222 expected_bb84(const Rational& V) {
  const Rational p = (1 + V) / 4, m = (1 - V) / 4, q = Rational(1, 4);
  return make_box({p, m, m, p, q, q, q, q, q, q, q, q, m, p, p, m});
}

Box222 expected_example2() {
  const Rational e(1, 8), f(5, 8), h(1, 2), q(1, 4), z(0);
  return make_box({f, e, e, e, h, q, q, z, h, q, q, z, f, e, e, e});
}

std::vector<std::string> box_diff(const Box222& got, const Box222& want) {
  std::vector<std::string> out;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (got(x, y, a, b) != want(x, y, a, b))
            out.push_back("p(" + std::to_string(a) + std::to_string(b) + "|" + std::to_string(x) + std::to_string(y) +
                          "): got " + to_string(got(x, y, a, b)) + ", expected " + to_string(want(x, y, a, b)));
  return out;
}

class Checks {
public:
  void add(const std::string& name, bool pass, Json detail = nullptr) {
    Json c{{"name", name}, {"pass", pass}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    list_.push_back(std::move(c));
    if (!pass) diff_.push_back(name);
  }
  void box(const std::string& name, const Box222& got, const Box222& want) {
    auto d = box_diff(got, want);
    add(name, d.empty(), d.empty() ? Json(nullptr) : Json(d));
  }
  // Runs f; an exception counts as a failed check.
  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  }
  bool ok() const { return diff_.empty(); }
  const Json& list() const { return list_; }
  const std::vector<std::string>& failed() const { return diff_; }

private:
  Json list_ = Json::array();
  std::vector<std::string> diff_;
};

Box222 born_from_state_json(const Json& j, QState& state) {
  state = state_from_json(j);
  auto axes = [&](const char* key) {
    if (!j.contains(key)) return pair_zx();
    const Json& a = j.at(key);
    if (!a.is_array() || a.size() != 2) throw ParseError(std::string(key) + " must hold two axes");
    auto vec = [](const Json& v) {
      if (!v.is_array() || v.size() != 3) throw ParseError("axes are 3-vectors");
      return Eigen::Vector3d(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    };
    return qubit_pair(vec(a[0]), vec(a[1]));
  };
  return born_box(state, axes("alice_axes"), axes("bob_axes"));
}

std::optional<std::string> named_value(const std::string& input, const std::string& prefix) {
  if (input.rfind(prefix, 0) != 0) return std::nullopt;
  return input.substr(prefix.size());
}

}  // namespace

ResolvedInput resolve_input(const std::string& input) {
  ResolvedInput r;
  if (auto v = named_value(input, "werner:V=")) {
    const Rational V = parse_v(*v, 0);
    r.box = born_box(werner_state(to_double(V)), pair_zx(true), pair_zx());
    r.descriptor = Json{{"kind", "state"}, {"name", "werner"}, {"V", to_string(V)}};
    r.dimA = 2;
    r.dimB = 2;
  } else if (auto v = named_value(input, "erasure:V=")) {
    const Rational V = parse_v(*v, 0);
    r.box = born_box(erasure_state(to_double(V)), erasure_povms(), pair_zx());
    r.descriptor = Json{{"kind", "state"}, {"name", "erasure"}, {"V", to_string(V)}};
    r.dimA = 3;
    r.dimB = 2;
  } else if (auto v = named_value(input, "bb84:V=")) {
    const Rational V = parse_v(*v, 0);
    r.box = bb84_box(V);
    r.descriptor = Json{{"kind", "box"}, {"name", "bb84"}, {"V", to_string(V)}};
  } else if (input == "example2") {
    r.box = born_box(example2_state(), pair_xz(), pair_xz());
    r.descriptor = Json{{"kind", "state"}, {"name", "example2"}};
    r.dimA = 2;
    r.dimB = 2;
  } else {
    const Json j = read_json_file(input);
    if (j.is_object() && j.contains("entries")) {
      r.box = box_from_json(j);
      r.descriptor = Json{{"kind", "box-file"}, {"path", input}};
    } else if (j.is_object() && j.contains("rho")) {
      QState s;
      r.box = born_from_state_json(j, s);
      r.descriptor = Json{{"kind", "state-file"}, {"path", input}};
      r.dimA = s.dimA;
      r.dimB = s.dimB;
    } else {
      throw ParseError(input + ": expected a box (\"entries\") or a state (\"rho\")");
    }
  }
  return r;
}

std::string classification_tag(const DimensionReport& rep, int dimA) {
  if (rep.verdict == "steerable") return "steerable";
  if (!rep.min_dim) return "inconclusive";
  if (*rep.min_dim > dimA) return "super-unsteerable:min-dim-" + std::to_string(*rep.min_dim);
  return "not-super-unsteerable";
}

CommandResult run_analyze(const AnalyzeOptions& opts, std::ostream& diag) {
  ResolvedInput in = resolve_input(opts.input);
  int dimA = 2, dimB = 2;
  if (opts.dimA) {
    dimA = *opts.dimA;
  } else if (in.dimA) {
    dimA = *in.dimA;
  } else {
    diag << "note: dimA not given, using 2\n";
  }
  if (opts.dimB) dimB = *opts.dimB;
  else if (in.dimB) dimB = *in.dimB;
  if (dimA < 2 || dimB < 2) throw DimensionError("dimA and dimB must be at least 2");
  if (!is_no_signalling(in.box)) throw SignallingError("box is signalling");

  const BellLocalResult local = is_bell_local_lp(in.box);
  const bool unsteerable = is_unsteerable_mub(in.box);
  const DimensionReport lhv = min_dim_lhv(in.box, opts.search);
  const DimensionReport lhs = min_dim_lhvlhs(in.box, opts.search);
  const std::string tag = classification_tag(lhs, dimA);

  Json out{{"command", "analyze"},
           {"input", in.descriptor},
           {"dimA", dimA},
           {"dimB", dimB},
           {"box", box_json(in.box)},
           {"no_signalling", true},
           {"bell_local", local.local},
           {"unsteerable_mub", unsteerable},
           {"chsh_max", rational_json(chsh_max(in.box))},
           {"steering_value", float_json(steering_functional(in.box))},
           {"min_dim_lhv", lhv.min_dim ? Json(*lhv.min_dim) : Json(nullptr)},
           {"min_dim_lhvlhs", lhs.min_dim ? Json(*lhs.min_dim) : Json(nullptr)},
           {"super_unsteerable", Json{{std::to_string(dimA), lhs.min_dim && *lhs.min_dim > dimA}}},
           {"superlocal", lhv.min_dim && *lhv.min_dim > std::min(dimA, dimB)},
           {"classification", tag},
           {"lhv", report_json(lhv)},
           {"lhvlhs", report_json(lhs)}};
  return {out, 0};
}

CommandResult run_mindim(const std::string& input, const std::string& model, const SearchOptions& search,
                         std::ostream&) {
  if (model != "lhv" && model != "lhvlhs") throw ParseError("--model must be lhv or lhvlhs");
  ResolvedInput in = resolve_input(input);
  const DimensionReport rep = model == "lhv" ? min_dim_lhv(in.box, search) : min_dim_lhvlhs(in.box, search);
  Json out = report_json(rep, true);
  out["command"] = "mindim";
  out["input"] = in.descriptor;
  return {out, 0};
}

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> t{"bb84",       "example2",   "werner-born", "erasure-born", "eq25-model",
                                          "eq31-model", "thm1-enum", "thm2-enum",   "appendixA-enum"};
  return t;
}

namespace {

Json status_counts(const std::vector<InstanceRecord>& recs) {
  Json c = Json::object();
  for (const auto& r : recs) {
    const std::string s = to_string(r.status);
    c[s] = c.value(s, 0) + 1;
  }
  return c;
}

bool none_feasible(const std::vector<InstanceRecord>& recs) {
  for (const auto& r : recs)
    if (r.status != InstanceStatus::Infeasible && r.status != InstanceStatus::Degenerate &&
        r.status != InstanceStatus::Pruned)
      return false;
  return true;
}

Json feasible_list(const std::vector<InstanceRecord>& recs) {
  Json out = Json::array();
  for (const auto& r : recs)
    if (r.status == InstanceStatus::Feasible) out.push_back(instance_json(r));
  return out;
}

void reproduce_bb84(const Rational& V, Checks& ck, Json& res) {
  const Box222 box = bb84_box(V);
  res["box"] = box_json(box);
  ck.box("table matches the reference", box, expected_bb84(V));
  const SingleTable half = SingleTable::from_zero(Rational(1, 2), Rational(1, 2));
  ck.add("Alice marginal uniform", marginal_alice(box) == half);
  ck.add("Bob marginal uniform", marginal_bob(box) == half);

  const Box222 pn = maximally_mixed_box();
  ck.add("maximally mixed box has all entries 1/4", pn == make_box({Rational(1, 4), Rational(1, 4), Rational(1, 4),
                                                                    Rational(1, 4), Rational(1, 4), Rational(1, 4),
                                                                    Rational(1, 4), Rational(1, 4), Rational(1, 4),
                                                                    Rational(1, 4), Rational(1, 4), Rational(1, 4),
                                                                    Rational(1, 4), Rational(1, 4), Rational(1, 4),
                                                                    Rational(1, 4)}));
  std::vector<Box222> dets;
  for (int i = 0; i < 16; ++i) dets.push_back(deterministic_box(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1));
  ck.add("uniform mixture of the 16 deterministic boxes is maximally mixed",
         mix(dets, std::vector<Rational>(16, Rational(1, 16))) == pn);
  const Box222 pr_half = mix({pr_box(0, 0, 0), pr_box(1, 1, 0)}, {Rational(1, 2), Rational(1, 2)});
  ck.box("V-weighted PR mixture plus white noise", mix({pr_half, pn}, {V, 1 - V}), box);

  const BellLocalResult local = is_bell_local_lp(box);
  ck.add("Bell local", local.local);
  if (local.local) {
    std::vector<Rational> w(local.weights.begin(), local.weights.end());
    ck.box("deterministic decomposition recomposes", mix(dets, w), box);
  }
  const bool unsteerable = is_unsteerable_mub(box);
  const bool expect_unsteerable = 2 * V * V <= 1;
  ck.add("unsteerable iff 2V^2 <= 1", unsteerable == expect_unsteerable);
  const double sv = steering_functional(box);
  ck.add("steering value equals 2 sqrt(2) V", std::abs(sv - 2 * std::sqrt(2.0) * to_double(V)) < 1e-12,
         float_json(sv));
  const SingleTable bob0 = SingleTable::from_zero((1 + V) / 2, (1 - V) / 2);
  ck.add("disc value of the model's Bob table is 2V^2 - 1", mub_disc(bob0) == 2 * V * V - 1,
         rational_json(mub_disc(bob0)));
  res["chsh_max"] = rational_json(chsh_max(box));
  res["steering_value"] = float_json(sv);
  res["unsteerable_mub"] = unsteerable;
}

void reproduce_example2(Checks& ck, Json& res) {
  const Box222 box = example2_box();
  res["box"] = box_json(box);
  ck.box("table matches the reference", box, expected_example2());
  ck.add("entry p(11|01) is 0", box(0, 1, 1, 1) == 0);
  ck.guarded("Born box from the state", [&] {
    ck.box("Born box from the state", born_box(example2_state(), pair_xz(), pair_xz()), expected_example2());
  });
  ck.add("unsteerable", is_unsteerable_mub(box));
  ck.add("Bell local", is_bell_local_lp(box).local);
  res["steering_value"] = float_json(steering_functional(box));
}

void reproduce_born(const Rational& V, bool erasure, Checks& ck, Json& res) {
  const double v = to_double(V);
  const Box222 box = erasure ? born_box(erasure_state(v), erasure_povms(), pair_zx())
                             : born_box(werner_state(v), pair_zx(true), pair_zx());
  res["box"] = box_json(box);
  ck.box("Born box equals the reference BB84 table", box, expected_bb84(V));
  if (erasure) {
    const MeasurementPair E = erasure_povms();
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << 0.0, 1.0, 0.5;
    ck.add("first POVM, outcome 0 is diag(0, 1, 1/2)", (E.m0.effects[0] - d).norm() < 1e-15);
    ck.add("second POVM, outcome 0 has (0,1) entry 1/2", std::abs(E.m1.effects[0](0, 1) - 0.5) < 1e-15);
  }
}

void reproduce_symmetric_model(const Rational& V, Checks& ck, Json& res) {
  LhvLhsModel M;
  try {
    M = bb84_symmetric_model(V);
  } catch (const NotRealizable& e) {
    ck.add("model states exist (requires 2V^2 <= 1)", false, e.what());
    return;
  }
  res["model"] = model_json(M);
  const VerifyResult v = verify_model(M, expected_bb84(V));
  ck.add("model reproduces the BB84 table", v.ok, v.ok ? Json(nullptr) : Json(v.reason));
  const std::array<int, 4> sign{-1, 1, 1, -1};
  const Rational c2 = V * V / (1 - V * V);
  for (int l = 0; l < 4; ++l) {
    const auto& s = M.bob_states[l];
    const double expect = sign[l] * to_double(V) / std::sqrt(1 - to_double(V * V));
    ck.add("cos phi of state " + std::to_string(l) + " is " + (sign[l] < 0 ? "-" : "+") + "V/sqrt(1-V^2)",
           s.phase_cos_sq == c2 && s.cos_sign == sign[l] && std::abs(s.phase_cos - expect) < 1e-12,
           float_json(s.phase_cos));
  }
  ck.add("Bob tables pairwise distinct (merging keeps 4 values)", merge_equal_bob_tables(M).size() == 4);
  Certificate c = dlhvlhs_feasible(expected_bb84(V), AliceAssignment{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}},
                                   Grouping::singletons(4));
  bool quarter = c.witness.has_value();
  if (quarter)
    for (const auto& w : c.witness->weights) quarter = quarter && w == Rational(1, 4);
  ck.add("solver finds the four-valued model with equal weights", quarter, certificate_json(c));
}

void reproduce_example2_model(Checks& ck, Json& res) {
  const LhvLhsModel M = example2_model();
  res["model"] = model_json(M);
  const VerifyResult v = verify_model(M, expected_example2());
  ck.add("model reproduces the example2 table", v.ok, v.ok ? Json(nullptr) : Json(v.reason));
  const auto& s0 = M.bob_states[0];
  ck.add("state 0: amplitudes sqrt(3)/2, 1/2 and cos phi = 1/sqrt(3)",
         s0.phase_cos_sq == Rational(1, 3) && s0.cos_sign == 1 && std::abs(s0.amp0 - std::sqrt(3.0) / 2) < 1e-12 &&
             std::abs(s0.amp1 - 0.5) < 1e-12);
  const auto& s1 = M.bob_states[1];
  ck.add("state 1 is the first basis vector", s1.degenerate && s1.amp0 == 1.0 && mub_disc(M.bob_tables[1]) == 0);
  const auto& s2 = M.bob_states[2];
  ck.add("state 2: equal amplitudes and cos phi = 1",
         s2.phase_cos_sq == 1 && s2.cos_sign == 1 && std::abs(s2.amp0 - std::sqrt(0.5)) < 1e-12 &&
             std::abs(s2.amp1 - std::sqrt(0.5)) < 1e-12);
  Certificate c =
      dlhvlhs_feasible(expected_example2(), AliceAssignment{{{0, 0}, {1, 0}, {1, 1}}}, Grouping::singletons(3));
  bool match = c.witness && c.witness->weights ==
                                std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  ck.add("solver recovers weights 1/2, 1/4, 1/4 for strategies 00, 10, 11", match, certificate_json(c));
}

void reproduce_thm1(const Rational& V, const SearchOptions& so, Checks& ck, Json& res) {
  const Box222 box = bb84_box(V);
  Json dims = Json::object();
  for (int k = 2; k <= 3; ++k) {
    auto recs = enumerate_dimension(box, k, ModelKind::LhvLhs, so);
    dims[std::to_string(k)] = Json{{"instances", recs.size()}, {"status", status_counts(recs)}};
    ck.add("no model with " + std::to_string(k) + " hidden values", none_feasible(recs), feasible_list(recs));
  }
  Certificate c = dlhvlhs_feasible(box, AliceAssignment{{{0, 0}, {0, 1}}}, Grouping::singletons(2));
  ck.add("strategies 00, 01 alone are infeasible", c.verdict == Verdict::Infeasible, c.summary);
  Certificate c4 =
      dlhvlhs_feasible(box, AliceAssignment{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}}, Grouping::singletons(4));
  ck.add("model with 4 hidden values exists", c4.verdict == Verdict::Feasible, c4.summary);
  const DimensionReport lhv = min_dim_lhv(box, so);
  ck.add("superlocal at dimensions (2, 2)", lhv.min_dim && *lhv.min_dim > 2, report_json(lhv));
  res["dimensions"] = dims;
  res["min_dim_lhv"] = lhv.min_dim ? Json(*lhv.min_dim) : Json(nullptr);
}

void reproduce_thm2(const SearchOptions& so, Checks& ck, Json& res) {
  const Box222 box = example2_box();
  Json dims = Json::object();
  for (int k = 1; k <= 3; ++k) {
    auto recs = enumerate_dimension(box, k, ModelKind::LhvLhs, so);
    dims[std::to_string(k)] = Json{{"instances", recs.size()}, {"status", status_counts(recs)}};
    if (k < 3)
      ck.add("no model with " + std::to_string(k) + " hidden values", none_feasible(recs), feasible_list(recs));
    else
      ck.add("model with 3 hidden values exists", !none_feasible(recs) && feasible_list(recs).size() > 0,
             feasible_list(recs));
  }
  const auto rep = min_dim_lhvlhs(box, so);
  ck.add("minimum dimension is 3", rep.min_dim == 3, report_json(rep));
  ck.add("super-unsteerable for dimA = 2", rep.min_dim && *rep.min_dim > 2);
  res["dimensions"] = dims;
}

void reproduce_appendix_a(Checks& ck, Json& res) {
  const Box222 box = example2_box();
  const AliceAssignment all{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  ck.add("constant Bob table [[1,0],[1,0]] has no qubit realization (disc value 1)",
         mub_disc(SingleTable::from_zero(1, 1)) == 1);
  Json inst{{"strategies", {"00", "01", "10", "11"}}};
  try {
    Certificate c = dlhvlhs_feasible(box, all, Grouping::singletons(4));
    inst["certificate"] = certificate_json(c);
    ck.add("no model with four distinct strategies", c.verdict == Verdict::Infeasible, c.summary);
    ck.add("the infeasibility comes from a weight forced to zero", c.forced_zero >= 0,
           c.forced_zero >= 0 ? Json(c.forced_zero) : Json(nullptr));
  } catch (const DegenerateError& e) {
    inst["degenerate"] = e.what();
    ck.add("no model with four distinct strategies", true, e.what());
  }
  res["instance"] = inst;
}

}  // namespace

CommandResult run_reproduce(const ReproduceOptions& opts, std::ostream& diag) {
  const auto& targets = reproduce_targets();
  if (std::find(targets.begin(), targets.end(), opts.target) == targets.end())
    throw ParseError("unknown target '" + opts.target + "'");
  Checks ck;
  Json res = Json::object();
  Json params = Json::object();
  const std::string& t = opts.target;
  auto V = [&] {
    const Rational v = parse_v(opts.v, Rational(1, 2));
    params["V"] = to_string(v);
    return v;
  };
  if (t == "bb84") reproduce_bb84(V(), ck, res);
  else if (t == "example2") reproduce_example2(ck, res);
  else if (t == "werner-born") reproduce_born(V(), false, ck, res);
  else if (t == "erasure-born") reproduce_born(V(), true, ck, res);
  else if (t == "eq25-model") reproduce_symmetric_model(V(), ck, res);
  else if (t == "eq31-model") reproduce_example2_model(ck, res);
  else if (t == "thm1-enum") reproduce_thm1(V(), opts.search, ck, res);
  else if (t == "thm2-enum") reproduce_thm2(opts.search, ck, res);
  else reproduce_appendix_a(ck, res);

  Json out{{"command", "reproduce"},
           {"target", t},
           {"parameters", params},
           {"pass", ck.ok()},
           {"checks", ck.list()},
           {"result", res}};
  if (!ck.ok()) {
    std::string msg;
    for (const auto& f : ck.failed()) msg += (msg.empty() ? "" : "; ") + f;
    diag << MismatchError(t + ": " + msg).what() << "\n";
  }
  return {out, ck.ok() ? 0 : 1};
}

CommandResult error_result(const std::exception& e, std::ostream& diag) {
  std::string what = e.what();
  std::string kind = "Error";
  if (dynamic_cast<const Error*>(&e)) {
    const auto p = what.find(':');
    if (p != std::string::npos) kind = what.substr(0, p);
  }
  diag << what << "\n";
  return {Json{{"error", kind}, {"message", what}}, 2};
}

}  // namespace boxlab
