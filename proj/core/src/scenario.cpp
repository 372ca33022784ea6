#include "hybridopt/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include <nlohmann/json.hpp>

namespace hybridopt {

using json = nlohmann::ordered_json;

namespace {

void expect_keys(const json& j, const std::string& ctx,
                 std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(ctx + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown key '" + key + "' in " + ctx);
  }
}

Eigen::VectorXd to_vector(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw ConfigError(ctx + " must be an array of numbers");
  Eigen::VectorXd v(j.size());
  int i = 0;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(ctx + " must contain numbers only");
    v[i++] = x.get<double>();
  }
  return v;
}

json from_vector(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ManifoldKind manifold_by_name(const std::string& name) {
  if (name == "circle") return ManifoldKind::circle();
  if (name == "sphere") return ManifoldKind::sphere();
  throw ConfigError("scenario manifold must be 'circle' or 'sphere'");
}

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return {j.get<long long>(), 1};
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() &&
      j[1].is_number_integer())
    return {j[0].get<long long>(), j[1].get<long long>()};
  throw ConfigError("omega_tilde entries must be integers or [num, den] pairs");
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }

  expect_keys(j, "scenario",
              {"name", "manifold", "cost", "family", "dynamics", "disturbance",
               "solver", "initial_conditions", "grid_jitter", "outputs"});
  ScenarioConfig c;
  c.name = j.value("name", std::string{});
  c.manifold = j.at("manifold").get<std::string>();
  manifold_by_name(c.manifold);

  if (j.at("cost").is_string()) {
    c.cost = j.at("cost").get<std::string>();
  } else {
    const json& jc = j.at("cost");
    expect_keys(jc, "cost", {"name", "terms"});
    c.cost = jc.at("name").get<std::string>();
    if (c.cost != "polynomial")
      throw ConfigError("structured cost objects must have name 'polynomial'");
    for (const auto& t : jc.at("terms")) {
      expect_keys(t, "cost.terms[]", {"coef", "powers"});
      PolynomialTerm term;
      term.coef = t.at("coef").get<double>();
      for (const auto& p : t.at("powers")) term.powers.push_back(p.get<int>());
      c.polynomial.push_back(std::move(term));
    }
  }

  {
    const json& jf = j.at("family");
    expect_keys(jf, "family", {"gains", "alpha", "gamma", "delta", "axis"});
    for (const auto& g : jf.at("gains")) c.family.gains.push_back(g.get<double>());
    c.family.alpha = jf.value("alpha", std::string("square"));
    c.family.gamma = jf.at("gamma").get<double>();
    if (jf.contains("delta")) {
      if (jf.at("delta").is_string()) {
        if (jf.at("delta").get<std::string>() != "auto")
          throw ConfigError("family.delta must be a number or \"auto\"");
      } else {
        c.family.delta = jf.at("delta").get<double>();
      }
    }
    if (jf.contains("axis")) {
      const Eigen::VectorXd a = to_vector(jf.at("axis"), "family.axis");
      if (a.size() != 3) throw ConfigError("family.axis must have 3 components");
      c.family.axis = Eigen::Vector3d(a);
    }
  }

  {
    const json& jd = j.at("dynamics");
    expect_keys(jd, "dynamics", {"kind", "initial_modes", "dither"});
    c.dynamics.kind = jd.at("kind").get<std::string>();
    if (c.dynamics.kind != "first_order" && c.dynamics.kind != "zeroth_order" &&
        c.dynamics.kind != "gradient_flow")
      throw ConfigError("dynamics.kind must be first_order, zeroth_order, or "
                        "gradient_flow");
    if (jd.contains("initial_modes") && !jd.at("initial_modes").is_string()) {
      for (const auto& m : jd.at("initial_modes"))
        c.dynamics.initial_modes.push_back(m.get<int>());
    } else if (jd.contains("initial_modes") &&
               jd.at("initial_modes").get<std::string>() != "all") {
      throw ConfigError("dynamics.initial_modes must be \"all\" or a mode list");
    }
    if (jd.contains("dither")) {
      const json& jt = jd.at("dither");
      expect_keys(jt, "dynamics.dither",
                  {"epsilon_a", "epsilon_p", "omega_hat", "omega_tilde", "chi0"});
      DitherConfig d;
      d.epsilon_a = jt.at("epsilon_a").get<double>();
      d.epsilon_p = jt.at("epsilon_p").get<double>();
      d.omega_hat = jt.value("omega_hat", 1.0);
      for (const auto& w : jt.at("omega_tilde")) d.omega_tilde.push_back(parse_rational(w));
      if (jt.contains("chi0")) d.chi0 = to_vector(jt.at("chi0"), "dynamics.dither.chi0");
      c.dynamics.dither = std::move(d);
    }
    if (c.dynamics.kind == "zeroth_order" && !c.dynamics.dither)
      throw ConfigError("zeroth_order dynamics require a dither block");
  }

  {
    const json& jd = j.at("disturbance");
    expect_keys(jd, "disturbance",
                {"kind", "amplitude", "target", "engagement_radius", "channels"});
    c.disturbance.kind = jd.value("kind", std::string("none"));
    if (c.disturbance.kind != "none" && c.disturbance.kind != "constant_tangent" &&
        c.disturbance.kind != "adversarial")
      throw ConfigError("disturbance.kind must be none, constant_tangent, or "
                        "adversarial");
    c.disturbance.amplitude = jd.value("amplitude", 0.0);
    if (jd.contains("target"))
      c.disturbance.target = to_vector(jd.at("target"), "disturbance.target");
    c.disturbance.engagement_radius = jd.value("engagement_radius", 1.0);
    if (jd.contains("channels")) {
      c.disturbance.channels.clear();
      for (const auto& ch : jd.at("channels"))
        c.disturbance.channels.push_back(ch.get<int>());
    }
  }

  {
    const json& js = j.at("solver");
    expect_keys(js, "solver",
                {"step", "max_t", "max_jumps", "boundary_tol", "jump_policy",
                 "record_stride", "seed", "target", "target_tol",
                 "terminate_on_target"});
    c.solver.step = js.at("step").get<double>();
    c.solver.max_t = js.at("max_t").get<double>();
    c.solver.max_jumps = js.value("max_jumps", 50);
    c.solver.boundary_tol = js.value("boundary_tol", 0.0);
    c.solver.jump_policy = js.value("jump_policy", std::string("jump_first"));
    if (c.solver.jump_policy != "jump_first" && c.solver.jump_policy != "flow_first")
      throw ConfigError("solver.jump_policy must be jump_first or flow_first");
    c.solver.record_stride = js.value("record_stride", 1);
    c.solver.seed = js.value("seed", 1ULL);
    if (js.contains("target"))
      c.solver.target = to_vector(js.at("target"), "solver.target");
    c.solver.target_tol = js.value("target_tol", 1e-3);
    c.solver.terminate_on_target = js.value("terminate_on_target", true);
  }

  {
    const json& ji = j.at("initial_conditions");
    if (ji.is_string()) {
      c.initial_conditions = ji.get<std::string>();
      if (c.initial_conditions.rfind("grid:", 0) != 0)
        throw ConfigError("initial_conditions string must look like \"grid:<count>\"");
    } else if (ji.is_array()) {
      c.initial_conditions = "explicit";
      for (const auto& p : ji)
        c.explicit_initial.push_back(to_vector(p, "initial_conditions[]"));
      if (c.explicit_initial.empty())
        throw ConfigError("explicit initial_conditions must not be empty");
    } else {
      throw ConfigError("initial_conditions must be a grid string or a point list");
    }
  }
  c.grid_jitter = j.value("grid_jitter", 0.0);

  if (j.contains("outputs")) {
    const json& jo = j.at("outputs");
    expect_keys(jo, "outputs", {"csv", "json", "svg", "directory"});
    c.outputs.csv = jo.value("csv", true);
    c.outputs.json = jo.value("json", true);
    c.outputs.svg = jo.value("svg", true);
    c.outputs.directory = jo.value("directory", std::string("out"));
  }
  return c;
}

std::string serialize_scenario(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["manifold"] = c.manifold;
  if (c.cost == "polynomial") {
    json terms = json::array();
    for (const auto& t : c.polynomial)
      terms.push_back(json{{"coef", t.coef}, {"powers", t.powers}});
    j["cost"] = json{{"name", "polynomial"}, {"terms", terms}};
  } else {
    j["cost"] = c.cost;
  }

  json jf;
  jf["gains"] = c.family.gains;
  jf["alpha"] = c.family.alpha;
  jf["gamma"] = c.family.gamma;
  if (c.family.delta)
    jf["delta"] = *c.family.delta;
  else
    jf["delta"] = "auto";
  if (c.family.axis) jf["axis"] = from_vector(*c.family.axis);
  j["family"] = jf;

  json jd;
  jd["kind"] = c.dynamics.kind;
  if (c.dynamics.initial_modes.empty())
    jd["initial_modes"] = "all";
  else
    jd["initial_modes"] = c.dynamics.initial_modes;
  if (c.dynamics.dither) {
    json jt;
    jt["epsilon_a"] = c.dynamics.dither->epsilon_a;
    jt["epsilon_p"] = c.dynamics.dither->epsilon_p;
    jt["omega_hat"] = c.dynamics.dither->omega_hat;
    json w = json::array();
    for (const auto& r : c.dynamics.dither->omega_tilde)
      w.push_back(json::array({r.num, r.den}));
    jt["omega_tilde"] = w;
    if (c.dynamics.dither->chi0) jt["chi0"] = from_vector(*c.dynamics.dither->chi0);
    jd["dither"] = jt;
  }
  j["dynamics"] = jd;

  json jq;
  jq["kind"] = c.disturbance.kind;
  jq["amplitude"] = c.disturbance.amplitude;
  if (c.disturbance.target) jq["target"] = from_vector(*c.disturbance.target);
  jq["engagement_radius"] = c.disturbance.engagement_radius;
  jq["channels"] = c.disturbance.channels;
  j["disturbance"] = jq;

  json js;
  js["step"] = c.solver.step;
  js["max_t"] = c.solver.max_t;
  js["max_jumps"] = c.solver.max_jumps;
  js["boundary_tol"] = c.solver.boundary_tol;
  js["jump_policy"] = c.solver.jump_policy;
  js["record_stride"] = c.solver.record_stride;
  js["seed"] = c.solver.seed;
  if (c.solver.target) js["target"] = from_vector(*c.solver.target);
  js["target_tol"] = c.solver.target_tol;
  js["terminate_on_target"] = c.solver.terminate_on_target;
  j["solver"] = js;

  if (c.initial_conditions == "explicit") {
    json pts = json::array();
    for (const auto& p : c.explicit_initial) pts.push_back(from_vector(p));
    j["initial_conditions"] = pts;
  } else {
    j["initial_conditions"] = c.initial_conditions;
  }
  j["grid_jitter"] = c.grid_jitter;

  json jo;
  jo["csv"] = c.outputs.csv;
  jo["json"] = c.outputs.json;
  jo["svg"] = c.outputs.svg;
  jo["directory"] = c.outputs.directory;
  j["outputs"] = jo;

  return j.dump(2) + "\n";
}

std::vector<ManifoldPoint> initial_grid(const ManifoldKind& kind, int count,
                                        double jitter, unsigned long long seed) {
  if (count < 1) throw ConfigError("initial grid count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<ManifoldPoint> pts;
  if (kind.type == ManifoldType::CircleS1) {
    for (int i = 0; i < count; ++i) {
      double th = 2.0 * M_PI * i / count;
      if (jitter > 0.0) th += unit(rng) * jitter * (M_PI / count);
      Eigen::VectorXd c(2);
      c << std::cos(th), std::sin(th);
      pts.push_back({kind, c});
    }
    return pts;
  }
  if (kind.type == ManifoldType::SphereS2) {
    pts = sample_points(kind, count);
    if (jitter > 0.0) {
      const double cell = 2.0 / std::sqrt(double(count));
      for (auto& p : pts) {
        Eigen::VectorXd c = p.coords;
        for (int i = 0; i < 3; ++i) c[i] += unit(rng) * jitter * cell;
        p = project_to_manifold(kind, c);
      }
    }
    return pts;
  }
  throw ConfigError("initial grids are available on the circle and the sphere");
}

namespace {

CostFunction make_cost(const ManifoldKind& kind, const ScenarioConfig& c) {
  if (c.cost == "polynomial") return polynomial_cost(kind, c.polynomial);
  return builtin_cost(kind, c.cost);
}

std::shared_ptr<SynergisticFamily> make_family(const ManifoldKind& kind,
                                               const ScenarioConfig& c) {
  auto family = std::make_shared<SynergisticFamily>();
  family->cost = make_cost(kind, c);
  family->gamma = c.family.gamma;
  family->delta = c.family.delta.value_or(0.0);
  if (c.family.gains.empty()) throw ConfigError("family.gains must not be empty");
  for (double k : c.family.gains) {
    WarpSpec w;
    w.gain = k;
    w.alpha = alpha_by_name(c.family.alpha);
    w.gamma = c.family.gamma;
    if (kind.type == ManifoldType::SphereS2) {
      if (!c.family.axis) throw ConfigError("sphere families need family.axis");
      w.axis = *c.family.axis;
    }
    family->warps.push_back(std::move(w));
  }
  return family;
}

// Certificate for the non-switching comparison flow: critical points and
// the gamma sanity check, but no synergy-gap or delta requirement.
FamilyCertificate certify_single_mode(SynergisticFamily& family) {
  FamilyCertificate cert;
  const auto crit =
      find_critical_points(as_field(family.cost), family.cost.kind(), 64);
  if (crit.points.empty())
    throw ValidationError("no critical points of the cost could be estimated");
  double min_value = std::numeric_limits<double>::infinity();
  for (const auto& cp : crit.points) min_value = std::min(min_value, cp.value);
  cert.min_value = min_value;
  for (const auto& cp : crit.points) {
    if (cp.value <= min_value + 1e-6)
      cert.minimizers.push_back(cp.point);
    else
      cert.nonoptimal_critical_points.emplace_back(0, cp);
  }
  cert.resolved_delta = family.delta;
  return cert;
}

struct Assembled {
  ManifoldKind kind;
  std::shared_ptr<SynergisticFamily> family;
  FamilyCertificate cert;
  std::optional<DitherParams> dither;
};

Assembled assemble(ScenarioConfig& config) {
  Assembled a;
  a.kind = manifold_by_name(config.manifold);
  a.family = make_family(a.kind, config);

  const bool switching = config.dynamics.kind != "gradient_flow";
  if (switching) {
    a.cert = validate_family(*a.family, !config.family.delta.has_value());
    config.family.delta = a.family->delta;
  } else {
    a.family->delta = config.family.delta.value_or(0.2);
    a.cert = certify_single_mode(*a.family);
    config.family.delta = a.family->delta;
  }

  if (config.dynamics.kind == "zeroth_order") {
    const auto& d = *config.dynamics.dither;
    DitherParams p;
    p.epsilon_a = d.epsilon_a;
    p.epsilon_p = d.epsilon_p;
    p.omega_hat = d.omega_hat;
    p.omega_tilde = d.omega_tilde;
    if (d.chi0) p.chi0 = *d.chi0;
    p.validate(a.kind);
    a.dither = std::move(p);
  }
  return a;
}

SolverConfig to_solver_config(const ScenarioConfig& c) {
  SolverConfig s;
  s.step = c.solver.step;
  s.max_t = c.solver.max_t;
  s.max_jumps = c.solver.max_jumps;
  s.boundary_tol = c.solver.boundary_tol;
  s.jump_policy = c.solver.jump_policy == "flow_first" ? JumpPolicy::FlowFirst
                                                       : JumpPolicy::JumpFirst;
  s.record_stride = c.solver.record_stride;
  if (c.solver.target && c.solver.terminate_on_target) {
    s.target = *c.solver.target;
    s.target_tol = c.solver.target_tol;
  }
  return s;
}

std::string run_tag(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "run_%03d", index);
  return buf;
}

}  // namespace

ValidationSummary validate_scenario(ScenarioConfig& config) {
  ScenarioConfig copy = config;
  Assembled a = assemble(copy);
  config.family.delta = copy.family.delta;
  return {a.cert.resolved_delta, a.cert.mu, a.cert.gain_bound, a.cert.min_value};
}

ScenarioReport run_scenario(const ScenarioConfig& config_in) {
  const auto t_start = std::chrono::steady_clock::now();
  ScenarioReport report;
  report.config = config_in;
  Assembled a = assemble(report.config);
  const ScenarioConfig& config = report.config;

  report.resolved_delta = a.cert.resolved_delta;
  report.mu_hat = a.cert.mu;
  report.gain_bound = a.cert.gain_bound;
  report.min_value = a.cert.min_value;

  // Initial conditions and modes.
  std::vector<ManifoldPoint> ics;
  if (config.initial_conditions == "explicit") {
    for (const auto& p : config.explicit_initial)
      ics.push_back(project_to_manifold(a.kind, p));
  } else {
    const int count = std::stoi(config.initial_conditions.substr(5));
    ics = initial_grid(a.kind, count, config.grid_jitter, config.solver.seed);
  }
  std::vector<int> modes = config.dynamics.initial_modes;
  if (modes.empty()) {
    if (config.dynamics.kind == "gradient_flow") {
      modes = {0};
    } else {
      for (int q = 0; q < a.family->num_modes(); ++q) modes.push_back(q);
    }
  }
  for (int q : modes)
    if (q < 0 || q >= a.family->num_modes())
      throw ConfigError("initial mode index out of range");

  // System assembly (gradient_flow pins the mode, so one system per mode).
  const SolverConfig solver_cfg = to_solver_config(config);
  std::vector<HybridSystemDef> systems;
  if (config.dynamics.kind == "first_order") {
    systems.push_back(build_H1(a.family, config.solver.boundary_tol));
  } else if (config.dynamics.kind == "zeroth_order") {
    systems.push_back(build_H0(a.family, *a.dither, solver_cfg,
                               config.solver.boundary_tol));
  } else {
    for (int q : modes) systems.push_back(build_single_mode_flow(a.family, q));
  }

  std::shared_ptr<const DisturbanceProfile> profile;
  if (config.disturbance.kind != "none") {
    const StateLayout& layout = systems.front().layout;
    DisturbanceProfile p;
    if (config.disturbance.kind == "adversarial") {
      if (!config.disturbance.target)
        throw ConfigError("adversarial disturbance needs a target");
      AdversarialSpec spec{project_to_manifold(a.kind, *config.disturbance.target),
                           config.disturbance.amplitude,
                           config.disturbance.engagement_radius};
      p = make_adversarial_profile(spec, layout, config.disturbance.channels);
    } else {
      p = make_constant_tangent_profile(config.disturbance.amplitude, layout,
                                        config.disturbance.channels);
    }
    profile = std::make_shared<DisturbanceProfile>(std::move(p));
    for (auto& sys : systems) sys = perturb_system(sys, profile);
  }

  // Lyapunov certificates only apply where the theory states them: flow
  // descent for first-order flows without disturbances, jump decrease
  // whenever the jump channels are clean.
  const bool disturbed = config.disturbance.kind != "none";
  bool jump_channels_clean = true;
  if (disturbed)
    for (int ch : config.disturbance.channels)
      if (ch >= 4) jump_channels_clean = false;
  const bool check_flow_descent =
      !disturbed && config.dynamics.kind != "zeroth_order";
  const bool check_jump_decrease =
      config.dynamics.kind != "gradient_flow" && jump_channels_clean;

  std::filesystem::create_directories(config.outputs.directory);
  const auto out_path = [&](const std::string& file) {
    return (std::filesystem::path(config.outputs.directory) / file).string();
  };

  std::optional<ManifoldPoint> target;
  if (config.solver.target)
    target = project_to_manifold(a.kind, *config.solver.target);

  int index = 0;
  for (const auto& ic : ics) {
    for (size_t mi = 0; mi < modes.size(); ++mi) {
      const int q = modes[mi];
      const HybridSystemDef& sys =
          config.dynamics.kind == "gradient_flow" ? systems[mi] : systems.front();

      State x0;
      if (config.dynamics.kind == "zeroth_order")
        x0 = pack_zo_state(sys.layout, ic, q, a.dither->initial_chi());
      else
        x0 = pack_fo_state(sys.layout, ic, q);

      const long long oracle_before =
          a.family->cost.counters()->gradient_oracle_calls;
      const HybridArc arc = solve(sys, x0, solver_cfg);
      const long long oracle_during =
          a.family->cost.counters()->gradient_oracle_calls - oracle_before;

      const auto diag =
          lyapunov_diagnostics(*a.family, sys.layout, arc, a.cert.min_value);

      RunResult r;
      r.index = index;
      r.z0 = ic.coords;
      r.q0 = q;
      r.jumps = static_cast<int>(arc.jump_indices.size());
      r.termination = arc.termination;
      r.manifold_violation = arc.max_manifold_violation;
      r.oracle_calls_during_solve = oracle_during;
      if (target) {
        const ManifoldPoint zf = sys.layout.block_point(arc.states.back(), 0);
        r.final_distance = distance(zf, *target);
      }
      if (check_flow_descent)
        r.lyap_flow_violations = diag.flow_violations(arc);
      if (check_jump_decrease)
        r.lyap_jump_violations = diag.jump_violations(a.family->delta);

      report.flow_lyapunov_violations += r.lyap_flow_violations;
      report.jump_decrease_violations += r.lyap_jump_violations;
      if (r.manifold_violation > tol().point_norm)
        ++report.manifold_invariance_violations;

      ArcMetadata meta;
      meta.scenario = config.name;
      meta.dynamics_kind = config.dynamics.kind;
      meta.manifold = a.kind;
      meta.config_json = serialize_scenario(config);
      meta.termination = arc.termination;
      meta.final_distance = r.final_distance;
      if (target) meta.target = target->coords;
      for (const auto& m : a.cert.minimizers) meta.critical_points.push_back(m.coords);
      for (const auto& [mq, cp] : a.cert.nonoptimal_critical_points)
        meta.critical_points.push_back(cp.point.coords);

      const std::string tag = run_tag(index);
      if (config.outputs.csv) {
        const std::string f = out_path(tag + ".csv");
        write_text_file(f, arc_to_csv(arc, sys.layout, diag));
        report.artifact_files.push_back(f);
      }
      if (config.outputs.json) {
        const std::string f = out_path(tag + ".json");
        write_text_file(f, arc_to_json(arc, sys.layout, diag, meta));
        report.artifact_files.push_back(f);
      }
      if (config.outputs.svg) {
        ArcPlotData pd;
        pd.kind = a.kind;
        pd.title = config.name + " " + tag;
        const int zd = a.kind.ambient_dim();
        pd.z.reserve(arc.size());
        for (const auto& s : arc.states) pd.z.push_back(s.segment(0, zd));
        pd.jump_indices = arc.jump_indices;
        if (target) pd.target = target->coords;
        pd.critical_points = meta.critical_points;
        const std::string f = out_path(tag + ".svg");
        write_text_file(f, render_arc_svg(pd));
        report.artifact_files.push_back(f);
      }

      report.runs.push_back(std::move(r));
      ++index;
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  const std::string sf = out_path("summary.json");
  write_text_file(sf, summary_json(report));
  report.artifact_files.push_back(sf);
  return report;
}

std::string summary_json(const ScenarioReport& report) {
  json j;
  j["scenario"] = report.config.name;
  j["dynamics"] = report.config.dynamics.kind;
  j["resolved_delta"] = report.resolved_delta;
  j["mu_hat"] = std::isfinite(report.mu_hat) ? json(report.mu_hat) : json("inf");
  j["gain_bound"] =
      std::isfinite(report.gain_bound) ? json(report.gain_bound) : json("inf");
  j["min_value_estimate"] = report.min_value;
  j["certificates"] = {
      {"manifold_invariance_violations", report.manifold_invariance_violations},
      {"flow_lyapunov_violations", report.flow_lyapunov_violations},
      {"jump_decrease_violations", report.jump_decrease_violations},
  };
  j["wall_seconds"] = report.wall_seconds;
  json runs = json::array();
  for (const auto& r : report.runs) {
    json rr;
    rr["index"] = r.index;
    rr["z0"] = from_vector(r.z0);
    rr["q0"] = r.q0;
    if (r.final_distance) rr["final_distance"] = *r.final_distance;
    rr["jumps"] = r.jumps;
    rr["termination"] = to_string(r.termination);
    rr["lyapunov_flow_violations"] = r.lyap_flow_violations;
    rr["lyapunov_jump_violations"] = r.lyap_jump_violations;
    rr["manifold_violation"] = r.manifold_violation;
    rr["derivative_oracle_calls"] = r.oracle_calls_during_solve;
    runs.push_back(std::move(rr));
  }
  j["runs"] = runs;
  return j.dump(2) + "\n";
}

SweepReport run_sweep(const ScenarioConfig& config, const std::string& axis,
                      const std::vector<double>& values) {
  if (values.size() < 3)
    throw ConfigError("a sweep needs at least 3 axis values");
  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (!(values[i] > values[i + 1]))
      throw ConfigError("sweep values must be strictly decreasing");
  if (axis != "epsilon_a" && axis != "epsilon_p" && axis != "dstar")
    throw ConfigError("sweep axis must be epsilon_a, epsilon_p, or dstar");
  if ((axis == "epsilon_a" || axis == "epsilon_p") &&
      config.dynamics.kind != "zeroth_order")
    throw ConfigError("dither sweeps require zeroth_order dynamics");
  if (axis == "dstar" && config.disturbance.kind == "none")
    throw ConfigError("a dstar sweep requires an active disturbance");
  if (!config.solver.target)
    throw ConfigError("sweeps need solver.target to measure final distances");

  SweepReport report;
  report.axis = axis;
  for (double v : values) {
    ScenarioConfig c = config;
    c.outputs.csv = c.outputs.json = c.outputs.svg = false;
    if (axis == "epsilon_a")
      c.dynamics.dither->epsilon_a = v;
    else if (axis == "epsilon_p")
      c.dynamics.dither->epsilon_p = v;
    else
      c.disturbance.amplitude = v;

    const ScenarioReport run = run_scenario(c);
    SweepRow row;
    row.value = v;
    row.worst_final_distance = 0.0;
    double jump_sum = 0.0;
    for (const auto& r : run.runs) {
      row.worst_final_distance =
          std::max(row.worst_final_distance, r.final_distance.value_or(0.0));
      jump_sum += r.jumps;
    }
    row.mean_jumps = run.runs.empty() ? 0.0 : jump_sum / double(run.runs.size());
    row.wall_seconds = run.wall_seconds;
    report.rows.push_back(row);
  }

  for (size_t i = 0; i + 1 < report.rows.size(); ++i)
    if (report.rows[i + 1].worst_final_distance >
        1.2 * report.rows[i].worst_final_distance)
      report.monotone_within_slack = false;

  std::filesystem::create_directories(config.outputs.directory);
  const auto path = std::filesystem::path(config.outputs.directory) /
                    ("sweep_" + axis + ".csv");
  write_text_file(path.string(), sweep_csv(report));
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "axis,value,worst_final_distance,mean_jumps,runtime_seconds\n";
  char buf[160];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.3f\n",
                  report.axis.c_str(), r.value, r.worst_final_distance,
                  r.mean_jumps, r.wall_seconds);
    out += buf;
  }
  return out;
}

std::vector<std::string> emit_plots(const std::vector<std::string>& arc_json_paths,
                                    const PlotStyle& style, const std::string& out_dir) {
  std::vector<std::string> written;
  for (const auto& path : arc_json_paths) {
    const ArcPlotData data = plot_data_from_arc_json(read_text_file(path));
    std::filesystem::path in(path);
    std::filesystem::path out =
        out_dir.empty() ? in.parent_path() : std::filesystem::path(out_dir);
    if (!out.empty()) std::filesystem::create_directories(out);
    const std::string target = (out / in.stem()).string() + ".svg";
    write_text_file(target, render_arc_svg(data, style));
    written.push_back(target);
  }
  return written;
}

namespace {

const char* kCircleH1 = R"json({
  "name": "circle_h1",
  "manifold": "circle",
  "cost": "circle_1_minus_z1",
  "family": {"gains": [0.5, -0.5], "alpha": "square", "gamma": 1.0, "delta": "auto"},
  "dynamics": {"kind": "first_order", "initial_modes": "all"},
  "disturbance": {"kind": "none"},
  "solver": {"step": 0.01, "max_t": 50.0, "max_jumps": 25, "record_stride": 1,
             "seed": 1, "target": [1.0, 0.0], "target_tol": 0.001,
             "terminate_on_target": true},
  "initial_conditions": "grid:36",
  "outputs": {"csv": true, "json": true, "svg": true, "directory": "out/circle_h1"}
})json";

const char* kSphereH1 = R"json({
  "name": "sphere_h1",
  "manifold": "sphere",
  "cost": "sphere_1_minus_z3",
  "family": {"gains": [0.5, -0.5], "alpha": "square", "gamma": 1.0, "delta": "auto",
             "axis": [0.0, 1.0, 0.0]},
  "dynamics": {"kind": "first_order", "initial_modes": "all"},
  "disturbance": {"kind": "none"},
  "solver": {"step": 0.01, "max_t": 50.0, "max_jumps": 25, "record_stride": 1,
             "seed": 1, "target": [0.0, 0.0, 1.0], "target_tol": 0.001,
             "terminate_on_target": true},
  "initial_conditions": "grid:64",
  "outputs": {"csv": true, "json": true, "svg": true, "directory": "out/sphere_h1"}
})json";

const char* kCircleH0 = R"json({
  "name": "circle_h0",
  "manifold": "circle",
  "cost": "circle_1_minus_z1",
  "family": {"gains": [0.5, -0.5], "alpha": "square", "gamma": 1.0, "delta": "auto"},
  "dynamics": {"kind": "zeroth_order", "initial_modes": "all",
               "dither": {"epsilon_a": 0.05, "epsilon_p": 0.01, "omega_hat": 1.0,
                          "omega_tilde": [[1, 1]]}},
  "disturbance": {"kind": "none"},
  "solver": {"step": 0.002, "max_t": 50.0, "max_jumps": 1000, "record_stride": 10,
             "seed": 1, "target": [1.0, 0.0], "target_tol": 0.001,
             "terminate_on_target": false},
  "initial_conditions": [[-1.0, 0.0]],
  "outputs": {"csv": true, "json": true, "svg": true, "directory": "out/circle_h0"}
})json";

const char* kSphereH0 = R"json({
  "name": "sphere_h0",
  "manifold": "sphere",
  "cost": "sphere_1_minus_z3",
  "family": {"gains": [0.5, -0.5], "alpha": "square", "gamma": 1.0, "delta": "auto",
             "axis": [0.0, 1.0, 0.0]},
  "dynamics": {"kind": "zeroth_order", "initial_modes": "all",
               "dither": {"epsilon_a": 0.05, "epsilon_p": 0.01, "omega_hat": 1.0,
                          "omega_tilde": [[5, 1], [7, 1]]}},
  "disturbance": {"kind": "none"},
  "solver": {"step": 0.0004, "max_t": 50.0, "max_jumps": 1000, "record_stride": 25,
             "seed": 1, "target": [0.0, 0.0, 1.0], "target_tol": 0.001,
             "terminate_on_target": false},
  "initial_conditions": [[0.0, 0.0, -1.0]],
  "outputs": {"csv": true, "json": true, "svg": true, "directory": "out/sphere_h0"}
})json";

const char* kCircleH1Adversarial = R"json({
  "name": "circle_h1_adversarial",
  "manifold": "circle",
  "cost": "circle_1_minus_z1",
  "family": {"gains": [0.5, -0.5], "alpha": "square", "gamma": 1.0, "delta": "auto"},
  "dynamics": {"kind": "first_order", "initial_modes": "all"},
  "disturbance": {"kind": "adversarial", "amplitude": 0.3, "target": [-1.0, 0.0],
                  "engagement_radius": 1.0, "channels": [3]},
  "solver": {"step": 0.01, "max_t": 50.0, "max_jumps": 25, "record_stride": 1,
             "seed": 1, "target": [1.0, 0.0], "target_tol": 0.001,
             "terminate_on_target": true},
  "initial_conditions": [[-0.99500416527802582, 0.099833416646828155]],
  "outputs": {"csv": true, "json": true, "svg": true,
              "directory": "out/circle_h1_adversarial"}
})json";

const char* kCircleGdAdversarial = R"json({
  "name": "circle_gd_adversarial",
  "manifold": "circle",
  "cost": "circle_1_minus_z1",
  "family": {"gains": [0.0, 0.0], "alpha": "square", "gamma": 1.0, "delta": 0.2},
  "dynamics": {"kind": "gradient_flow", "initial_modes": [0]},
  "disturbance": {"kind": "adversarial", "amplitude": 0.3, "target": [-1.0, 0.0],
                  "engagement_radius": 1.0, "channels": [3]},
  "solver": {"step": 0.01, "max_t": 50.0, "max_jumps": 25, "record_stride": 1,
             "seed": 1, "target": [-1.0, 0.0], "target_tol": 0.001,
             "terminate_on_target": false},
  "initial_conditions": [[-0.99500416527802582, 0.099833416646828155]],
  "outputs": {"csv": true, "json": true, "svg": true,
              "directory": "out/circle_gd_adversarial"}
})json";

const char* kCircleH1ConstantD3 = R"json({
  "name": "circle_h1_constant_d3",
  "manifold": "circle",
  "cost": "circle_1_minus_z1",
  "family": {"gains": [0.5, -0.5], "alpha": "square", "gamma": 1.0, "delta": "auto"},
  "dynamics": {"kind": "first_order", "initial_modes": "all"},
  "disturbance": {"kind": "constant_tangent", "amplitude": 0.001, "channels": [3]},
  "solver": {"step": 0.01, "max_t": 50.0, "max_jumps": 25, "record_stride": 1,
             "seed": 1, "target": [1.0, 0.0], "target_tol": 0.001,
             "terminate_on_target": false},
  "initial_conditions": "grid:36",
  "outputs": {"csv": true, "json": true, "svg": true,
              "directory": "out/circle_h1_constant_d3"}
})json";

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"circle_h1",
          "sphere_h1",
          "circle_h0",
          "sphere_h0",
          "circle_h1_adversarial",
          "circle_gd_adversarial",
          "circle_h1_constant_d3"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
  const char* text = nullptr;
  if (name == "circle_h1") text = kCircleH1;
  else if (name == "sphere_h1") text = kSphereH1;
  else if (name == "circle_h0") text = kCircleH0;
  else if (name == "sphere_h0") text = kSphereH0;
  else if (name == "circle_h1_adversarial") text = kCircleH1Adversarial;
  else if (name == "circle_gd_adversarial") text = kCircleGdAdversarial;
  else if (name == "circle_h1_constant_d3") text = kCircleH1ConstantD3;
  if (!text) throw ConfigError("unknown builtin scenario '" + name + "'");
  return parse_scenario(text);
}

}  // namespace hybridopt
