#include "qim/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qim/duality.hpp"
#include "qim/entropy.hpp"
#include "qim/manifold.hpp"
#include "qim/matrix_io.hpp"
#include "qim/perturbation.hpp"
#include "qim/verify.hpp"

namespace qim::cli {

namespace {

using nlohmann::json;

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json num_json(double x) { return std::isfinite(x) ? json(x) : json(num(x)); }

State read_state(const std::string& path) { return State(read_matrix(path)); }

YoungFunction young(const std::string& which, const State& phi) {
  if (which == "phi") return YoungFunction::phi(phi);
  if (which == "phi0") return YoungFunction::phi0(phi);
  if (which == "psi0") return YoungFunction::psi0(phi);
  if (which == "dual") return YoungFunction::conjugate_of(YoungFunction::phi0(phi));
  throw ValidationError("unknown Young function '" + which + "'");
}

struct Options {
  std::string a, b, state, obs, x, v, psi, from, to, kind, out, which = "phi0", profile = "default";
  std::vector<std::string> dims, checks;
  int samples = 100;
  std::uint64_t seed = 1;
  bool serial = false;
};

struct Context {
  const Options& o;
  std::ostream& out;
};

void emit(const Context& c, const json& doc) {
  if (!c.o.out.empty()) write_document(c.o.out, doc);
}

int cmd_entropy(const Context& c) {
  const Hermitian a = read_matrix(c.o.a), b = read_matrix(c.o.b);
  const EntropyValue s = relative_entropy(PositiveFunctional(a), PositiveFunctional(b));
  c.out << (s.infinite ? std::string("inf") : num(s.value)) << "\n";
  emit(c, {{"entropy", num_json(s.as_double())}});
  return kExitOk;
}

int cmd_cumulant(const Context& c) {
  const double v = cumulant(read_state(c.o.state), read_matrix(c.o.obs));
  c.out << num(v) << "\n";
  emit(c, {{"cumulant", v}});
  return kExitOk;
}

int cmd_perturb(const Context& c) {
  const PerturbationResult p = perturb(read_state(c.o.state), read_matrix(c.o.obs));
  c.out << "cumulant " << num(p.c) << "\nmass " << num(p.mass) << "\n";
  emit(c, {{"cumulant", p.c}, {"mass", p.mass}, {"state", matrix_json(p.state.density())}});
  return kExitOk;
}

int cmd_norm(const Context& c) {
  const State phi = read_state(c.o.state);
  const YoungFunction f = young(c.o.which, phi);
  const Hermitian x = read_matrix(c.o.x);
  bool projected = false;
  conform(f, x, &projected);
  const NormValue n = luxemburg_norm(f, x);
  c.out << num(n.value) << "\n";
  if (projected) c.out << "note: input was centered first\n";
  emit(c, {{"function", f.name()},
           {"norm", n.value},
           {"bracket", {n.t_lo, n.t_hi}},
           {"residual", n.residual},
           {"projected", projected}});
  return kExitOk;
}

int cmd_dualnorm(const Context& c) {
  const State phi = read_state(c.o.state);
  const YoungFunction f = young(c.o.which, phi);
  const DualNorm d = dual_norm(f, read_matrix(c.o.v));
  c.out << num(d.value) << "\namemiya " << num(d.amemiya) << (d.flagged ? "\nflagged: methods disagree" : "")
        << "\n";
  emit(c, {{"function", f.name()},
           {"dual_norm", d.value},
           {"amemiya", num_json(d.amemiya)},
           {"flagged", d.flagged},
           {"iterations", d.iterations}});
  return kExitOk;
}

int cmd_conjugate(const Context& c) {
  const State phi = read_state(c.o.state);
  const Hermitian v = read_matrix(c.o.v);
  const ConjugateValue r = c.o.which == "cumulant" ? cumulant_conjugate(phi, DualFunctional(v))
                                                   : conjugate(young(c.o.which, phi), v);
  c.out << num(r.value) << "\n";
  if (!r.infinite) c.out << "gap " << num(r.gap) << "\n";
  emit(c, {{"conjugate", num_json(r.value)},
           {"infinite", r.infinite},
           {"gap", r.gap},
           {"iterations", r.iterations},
           {"maximizer", matrix_json(r.maximizer)}});
  return kExitOk;
}

int cmd_psi(const Context& c) {
  const Decomposition d = psi_decompose(read_state(c.o.state), DualFunctional(read_matrix(c.o.v)));
  c.out << (d.infinite ? std::string("inf") : num(d.psi_value)) << "\n";
  json doc{{"psi", num_json(d.psi_value)}, {"infinite", d.infinite}};
  if (!d.infinite) {
    doc["omega1"] = matrix_json(d.omega1.density());
    doc["omega2"] = matrix_json(d.omega2.density());
    doc["feasibility_residual"] = d.feasibility_residual;
    doc["stationarity"] = d.stationarity;
  }
  emit(c, doc);
  return kExitOk;
}

int cmd_chart(const Context& c) {
  const Chart chart(read_state(c.o.state));
  if (!c.o.obs.empty() == !c.o.psi.empty()) throw CLI::ValidationError("chart needs exactly one of --obs, --psi");
  if (!c.o.obs.empty()) {
    const State s = chart_forward(chart, read_matrix(c.o.obs));
    c.out << "state written\n";
    emit(c, {{"state", matrix_json(s.density())}});
    return kExitOk;
  }
  const ChartPoint p = chart_inverse(chart, read_state(c.o.psi));
  c.out << "norm " << num(p.norm) << (p.in_ball ? "" : "\nnote: outside the unit ball") << "\n";
  emit(c, {{"h", matrix_json(p.h)}, {"norm", p.norm}, {"in_ball", p.in_ball}});
  return kExitOk;
}

int cmd_transition(const Context& c) {
  const TransitionResult t = transition(read_state(c.o.from), read_state(c.o.to), read_matrix(c.o.obs));
  c.out << "source in chart " << t.source_in_chart << "\ntarget in chart " << t.target_in_chart << "\n";
  emit(c, {{"h", matrix_json(t.h)}, {"source_in_chart", t.source_in_chart}, {"target_in_chart", t.target_in_chart}});
  return kExitOk;
}

int cmd_transport(const Context& c) {
  const TransportKind kind = c.o.kind == "mixture" ? TransportKind::mixture : TransportKind::exponential;
  const TransportMap map{kind, read_state(c.o.from), read_state(c.o.to)};
  const Hermitian x = read_matrix(c.o.x);
  const Hermitian y = kind == TransportKind::mixture ? transport(map, DualFunctional(x)).density() : transport(map, x);
  c.out << "transported (" << c.o.kind << ")\n";
  emit(c, {{"kind", c.o.kind}, {"result", matrix_json(y)}});
  return kExitOk;
}

int cmd_verify(const Context& c) {
  VerifyConfig config;
  if (c.o.dims.empty()) {
    config.dims = default_dims();
  } else {
    for (const auto& text : c.o.dims)
      for (auto& d : parse_dims(text)) config.dims.emplace_back(std::move(d));
  }
  config.samples = c.o.samples;
  config.seed = c.o.seed;
  config.tol_profile = c.o.profile;
  config.execution = c.o.serial ? Execution::serial : Execution::parallel;
  config.only = c.o.checks;
  if (!known_profile(config.tol_profile)) {
    throw CLI::ValidationError("--tol-profile", "unknown profile '" + config.tol_profile + "'");
  }

  const Report report = run_suite(config);
  int failed = 0;
  for (const auto& r : report.checks) {
    failed += !r.passed;
    c.out << (r.passed ? "PASS " : "FAIL ") << r.name << "  max_violation " << num(r.max_violation) << " / "
          << num(r.tolerance) << "  (" << r.samples << " samples)";
    if (!r.note.empty()) c.out << "  " << r.note;
    c.out << "\n";
  }
  c.out << report.checks.size() - failed << "/" << report.checks.size() << " checks passed in "
        << report.wall_time_s << " s\n";
  emit(c, report_json(report));
  return report.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::vector<std::vector<int>> parse_dims(const std::string& text) {
  std::vector<std::vector<int>> shapes;
  std::stringstream all(text);
  std::string shape_text;
  while (std::getline(all, shape_text, ';')) {
    std::vector<int> dims;
    std::stringstream ss(shape_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      int d = 0;
      try {
        d = std::stoi(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size() || d < 1) {
        throw CLI::ValidationError("--dims", "'" + item + "' is not a positive block dimension");
      }
      dims.push_back(d);
    }
    if (dims.empty()) throw CLI::ValidationError("--dims", "empty shape in '" + text + "'");
    shapes.push_back(std::move(dims));
  }
  if (shapes.empty()) throw CLI::ValidationError("--dims", "no shape given");
  return shapes;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum information manifold toolkit: entropies, Orlicz norms, conjugates, charts", "qim"};
  app.require_subcommand(1);
  Options o;

  const auto file = [](CLI::App* sub, const char* name, std::string& target, const char* help) {
    return sub->add_option(name, target, help)->required();
  };
  const auto out_opt = [&o](CLI::App* sub) { sub->add_option("--out", o.out, "Write a result document here"); };

  std::vector<std::pair<CLI::App*, std::function<int(const Context&)>>> commands;

  auto* entropy = app.add_subcommand("entropy", "Relative entropy S(a, b)");
  file(entropy, "--a", o.a, "Positive functional (matrix file)");
  file(entropy, "--b", o.b, "Reference functional (matrix file)");
  out_opt(entropy);
  commands.emplace_back(entropy, cmd_entropy);

  auto* cum = app.add_subcommand("cumulant", "Cumulant c_phi(h)");
  file(cum, "--state", o.state, "Faithful state");
  file(cum, "--obs", o.obs, "Observable");
  out_opt(cum);
  commands.emplace_back(cum, cmd_cumulant);

  auto* pert = app.add_subcommand("perturb", "Perturbed state [phi^h]");
  file(pert, "--state", o.state, "Faithful state");
  file(pert, "--obs", o.obs, "Observable");
  out_opt(pert);
  commands.emplace_back(pert, cmd_perturb);

  const std::vector<std::string> young_names{"phi", "phi0", "psi0", "dual"};
  auto* norm = app.add_subcommand("norm", "Luxemburg norm");
  norm->add_option("--which", o.which, "phi | phi0 | psi0 | dual (conjugate of phi0)")
      ->check(CLI::IsMember(young_names));
  file(norm, "--state", o.state, "Reference state");
  file(norm, "--x", o.x, "Argument");
  out_opt(norm);
  commands.emplace_back(norm, cmd_norm);

  auto* dn = app.add_subcommand("dualnorm", "Dual norm sup { v(x) : Phi(x) <= 1 }");
  dn->add_option("--which", o.which, "phi | phi0 | psi0 | dual")->check(CLI::IsMember(young_names));
  file(dn, "--state", o.state, "Reference state");
  file(dn, "--v", o.v, "Functional");
  out_opt(dn);
  commands.emplace_back(dn, cmd_dualnorm);

  auto* conj = app.add_subcommand("conjugate", "Fenchel conjugate");
  conj->add_option("--which", o.which, "phi | phi0 | psi0 | cumulant")
      ->check(CLI::IsMember({"phi", "phi0", "psi0", "cumulant"}));
  file(conj, "--state", o.state, "Reference state");
  file(conj, "--v", o.v, "Functional");
  out_opt(conj);
  commands.emplace_back(conj, cmd_conjugate);

  auto* psi = app.add_subcommand("psi", "Optimal decomposition v = w1 - w2");
  file(psi, "--state", o.state, "Reference state");
  file(psi, "--v", o.v, "Traceless functional");
  out_opt(psi);
  commands.emplace_back(psi, cmd_psi);

  auto* chart = app.add_subcommand("chart", "Chart map (--obs) or its inverse (--psi)");
  file(chart, "--state", o.state, "Chart base");
  chart->add_option("--obs", o.obs, "Centered observable to map to a state");
  chart->add_option("--psi", o.psi, "State to map to coordinates");
  out_opt(chart);
  commands.emplace_back(chart, cmd_chart);

  auto* trans = app.add_subcommand("transition", "Change of chart coordinates");
  file(trans, "--from", o.from, "Source chart base");
  file(trans, "--to", o.to, "Target chart base");
  file(trans, "--obs", o.obs, "Coordinates in the source chart");
  out_opt(trans);
  commands.emplace_back(trans, cmd_transition);

  auto* tport = app.add_subcommand("transport", "Exponential or mixture transport");
  tport->add_option("--kind", o.kind, "exponential | mixture")
      ->required()
      ->check(CLI::IsMember({"exponential", "mixture"}));
  file(tport, "--from", o.from, "Source state");
  file(tport, "--to", o.to, "Target state");
  file(tport, "--x", o.x, "Observable (exponential) or traceless functional (mixture)");
  out_opt(tport);
  commands.emplace_back(tport, cmd_transport);

  auto* ver = app.add_subcommand("verify", "Run the seeded property suite");
  ver->add_option("--dims", o.dims, "Block shape, e.g. 2,2; repeat or separate shapes with ';'");
  ver->add_option("--samples", o.samples, "Samples per shape")->check(CLI::PositiveNumber);
  ver->add_option("--seed", o.seed, "Base seed");
  ver->add_option("--tol-profile", o.profile, "Tolerance profile");
  ver->add_option("--check", o.checks, "Run only the named checks (repeatable)");
  ver->add_flag("--serial", o.serial, "Use the serial reference loop");
  out_opt(ver);
  commands.emplace_back(ver, cmd_verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Context ctx{o, out};
  try {
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(ctx);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (best value " << num(e.best_value()) << ", gap " << num(e.gap()) << ")\n";
    return kExitCheckFailed;
  } catch (const FormatError& e) {
    err << "error: malformed input, field " << e.field() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qim::cli
