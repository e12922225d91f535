#include "oblique/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>

#include "CLI11.hpp"
#include "oblique/battery.hpp"
#include "oblique/error.hpp"
#include "oblique/geodesics.hpp"
#include "oblique/json_io.hpp"
#include "oblique/linalg.hpp"
#include "oblique/phi.hpp"
#include "oblique/polar_retraction.hpp"
#include "oblique/projections.hpp"

namespace oblique::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Report {
 public:
  explicit Report(std::string command) {
    doc_["command"] = std::move(command);
    doc_["inputs"] = Json::object();
    doc_["outputs"] = Json::object();
    doc_["checks"] = Json::array();
  }

  void input(const std::string& name, const std::string& path, const MatrixDocument& m) {
    Json in;
    in["path"] = path;
    in["label"] = m.label;
    in["n"] = m.matrix.size();
    in["fnv1a64"] = hex(m.digest);
    doc_["inputs"][name] = std::move(in);
  }
  void input(const std::string& name, Json value) { doc_["inputs"][name] = std::move(value); }

  void output(const std::string& name, Json value) { doc_["outputs"][name] = std::move(value); }
  void output(const std::string& name, const ComplexMatrix& m) {
    doc_["outputs"][name] = matrix_to_json(m, name);
  }

  void check(const std::string& name, double value, double tolerance, bool pass) {
    Json c;
    c["name"] = name;
    c["value"] = value;
    c["tolerance"] = tolerance;
    c["pass"] = pass;
    doc_["checks"].push_back(std::move(c));
    all_pass_ = all_pass_ && pass;
  }
  // value <= tolerance
  void within(const std::string& name, double value, double tolerance) {
    check(name, value, tolerance, value <= tolerance);
  }

  void error(const std::string& kind, const std::string& message) {
    Json e;
    e["kind"] = kind;
    e["message"] = message;
    doc_["error"] = std::move(e);
  }

  bool all_pass() const noexcept { return all_pass_; }

  std::string dump(int code) {
    doc_["exit_code"] = code;
    return doc_.dump(2) + "\n";
  }

 private:
  Json doc_;
  bool all_pass_ = true;
};

// Postcondition checks decide the exit code of plain computations.
int verdict(const Report& r) { return r.all_pass() ? kSuccess : kFalse; }

struct Inputs {
  std::map<std::string, std::string> paths;

  const std::string& path(const std::string& name) const { return paths.at(name); }
};

MatrixDocument load(Report& r, const Inputs& in, const std::string& name) {
  const std::string& path = in.path(name);
  MatrixDocument doc = read_matrix_file(path);
  r.input(name, path, doc);
  return doc;
}

double idempotent_scale(const ComplexMatrix& q) {
  const double qn = op_norm(q);
  return 1.0 + qn * qn;
}

int cmd_phi(Report& r, const Inputs& in) {
  const OrthProjection p(load(r, in, "p").matrix);
  const PositiveElement a(load(r, in, "a").matrix);
  const Idempotent q = phi(p, a);
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix& pm = p.matrix();
  const double qn = op_norm(qm);
  r.output("q", qm);
  r.output("norm", qn);

  const double atol = Tolerance{}.atol;
  r.within("idempotent", op_norm(qm * qm - qm), atol * idempotent_scale(qm));
  r.within("qp_eq_p", op_norm(qm * pm - pm), atol * (1.0 + qn));
  r.within("pq_eq_q", op_norm(pm * qm - qm), atol * (1.0 + qn));
  r.within("a_selfadjoint", a_selfadjoint_defect(qm, a), atol * a.norm() * (1.0 + qn));
  r.within("norm_bound", qn, 2.0 * a.norm() * a.inv_norm() + atol);
  r.within("block_form_agrees", op_norm(phi_block(p, a).matrix() - qm), 1e-8 * (1.0 + qn));
  r.within("resolvent_form_agrees", op_norm(phi_alt(p, a).matrix() - qm), 1e-8 * (1.0 + qn));
  return verdict(r);
}

int cmd_section(Report& r, const Inputs& in) {
  const Idempotent q(load(r, in, "q").matrix);
  const FiberPoint fp = cross_section(q);
  r.output("p", fp.p.matrix());
  r.output("a", fp.a.matrix());
  const double qn = op_norm(q.matrix());
  r.within("phi_of_section", op_norm(phi(fp.p, fp.a).matrix() - q.matrix()),
           Tolerance{}.atol * (1.0 + qn));
  const bool inside = fiber_contains(q, fp.p, fp.a);
  r.check("in_fiber", inside ? 1.0 : 0.0, 1.0, inside);
  return verdict(r);
}

int cmd_omega(Report& r, const Inputs& in) {
  const Idempotent q(load(r, in, "q").matrix);
  const OmegaDetail d = omega_detailed(q);
  r.output("r", d.r.matrix());
  const double atol = Tolerance{}.atol;
  const double en = op_norm(2.0 * q.matrix() - ComplexMatrix::identity(q.size()));
  r.within("rho_selfadjoint", d.rho_selfadjoint, atol);
  r.within("rho_involution", d.rho_involution, atol);
  r.within("rho_is_polar_factor", d.polar_gap, atol * (1.0 + en));
  r.within("abs_adjoint_is_inverse", d.abs_adjoint_gap, atol * (1.0 + en));
  const ComplexMatrix& qm = q.matrix();
  if (op_norm(qm - qm.adjoint()) <= atol * (1.0 + op_norm(qm))) {
    r.within("fixes_projections", op_norm(d.r.matrix() - qm), atol);
  }
  return verdict(r);
}

int cmd_omega_inv(Report& r, const Inputs& in) {
  const OrthProjection target(load(r, in, "r").matrix);
  const PositiveElement a(load(r, in, "a").matrix);
  const Idempotent q = omega_a_inverse(target, a);
  const ComplexMatrix& qm = q.matrix();
  r.output("q", qm);
  const double atol = Tolerance{}.atol;
  r.within("idempotent", op_norm(qm * qm - qm), atol * idempotent_scale(qm));
  r.within("a_selfadjoint", a_selfadjoint_defect(qm, a), atol * a.norm() * (1.0 + op_norm(qm)));
  r.within("round_trip", op_norm(omega_a(q, a).matrix() - target.matrix()), 1e-8);
  return verdict(r);
}

int cmd_move(Report& r, const Inputs& in) {
  const OrthProjection p(load(r, in, "p").matrix);
  const PositiveElement a(load(r, in, "a").matrix);
  const Movement m = omega_phi_move(p, a);
  r.output("r", m.r.matrix());
  const double dist = op_norm(m.r.matrix() - p.matrix());
  r.output("distance", dist);
  r.within("forms_agree", m.forms_gap, Tolerance{}.atol);
  r.within("equals_omega_phi", m.omega_gap, Tolerance{}.atol);
  r.check("norm_lt_sqrt2_over_2", dist, kHalfSqrt2, dist < kHalfSqrt2);
  return verdict(r);
}

int cmd_orbit(Report& r, const Inputs& in) {
  const OrthProjection p(load(r, in, "p").matrix);
  const OrthProjection target(load(r, in, "r").matrix);
  require_same_size(p.matrix(), target.matrix());
  const double dist = op_norm(p.matrix() - target.matrix());
  const bool member = orbit_contains(p, target);
  r.output("distance", dist);
  r.output("member", member);
  if (member) r.output("note", "member (no witness constructed)");
  r.check("norm_lt_sqrt2_over_2", dist, kHalfSqrt2, member);
  return member ? kSuccess : kFalse;
}

int cmd_geodesic(Report& r, const Inputs& in, std::size_t samples) {
  if (samples < 2) throw DomainError(ErrorKind::InvalidArgument, "--samples must be >= 2");
  const OrthProjection p(load(r, in, "p").matrix);
  const Idempotent q(load(r, in, "q").matrix);
  const Connection c = connect(p, q);
  const Geodesic g(TangentVector(p.as_idempotent(), c.velocity()));

  Json curve = Json::array();
  double worst = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(samples - 1);
    const Idempotent point = g.eval(t);
    const ComplexMatrix& m = point.matrix();
    worst = std::max(worst, op_norm(m * m - m) / idempotent_scale(m));
    Json s;
    s["t"] = t;
    s["point"] = matrix_to_json(m);
    curve.push_back(std::move(s));
  }
  r.output("velocity", c.velocity());
  r.output("length", geodesic_length(g, 0.0, 1.0));
  r.output("samples", std::move(curve));
  const double qn = op_norm(q.matrix());
  r.within("idempotent_along_curve", worst, Tolerance{}.atol);
  r.within("reaches_q", op_norm(g.eval(1.0).matrix() - q.matrix()), 1e-8 * (1.0 + qn));
  return verdict(r);
}

int cmd_connect(Report& r, const Inputs& in) {
  const OrthProjection p(load(r, in, "p").matrix);
  const Idempotent q(load(r, in, "q").matrix);
  const Connection c = connect(p, q);
  const ComplexMatrix& x = c.generator.matrix();
  r.output("X", x);
  r.output("velocity", c.velocity());
  r.output("distance", c.distance);
  const double qn = op_norm(q.matrix());
  const BlockView b = blocks(x, p);
  r.within("tangent", std::max(op_norm(b.x11), op_norm(b.x22)),
           Tolerance{}.scaled(op_norm(x)));
  r.within("norm_identity", c.norm_gap, Tolerance{}.atol);
  r.within("log_forms_agree", c.forms_gap, 1e-8 * (1.0 + qn));
  r.within("reproduces_q", c.reproduction_error, 1e-8 * (1.0 + qn));
  return verdict(r);
}

int cmd_compat(Report& r, const Inputs& in, std::uint64_t seed, bool flip) {
  const OrthProjection p(load(r, in, "p").matrix);
  const Idempotent q(load(r, in, "q").matrix);
  r.input("seed", seed);
  r.input("flip", flip);
  const CompatibilityVerdict v = flip ? omega_fiber_star(p, q, seed) : compatible_star(p, q, seed);
  r.output("status", std::string(to_string(v.status)));
  r.output("certificate", v.certificate);
  r.output("exact_certificate", v.exact_certificate);
  r.output("nullspace_dim", v.nullspace_dim);
  r.output("restarts_used", v.restarts_used);
  r.output("X", v.generator);

  if (v.status == Feasibility::Feasible) {
    const ComplexMatrix& a = v.witness->matrix();
    r.output("witness", a);
    r.output("b", p.matrix() * a * p.matrix());
    r.output("c", corner_inverse(a, p.complement()));
    r.within("constraint", v.constraint_residual, 1e-8);
    r.within("block_diagonal", v.block_residual, 1e-8);
    r.within("p_a_selfadjoint", v.p_selfadjoint_defect, 1e-8);
    if (!flip) r.within("q_a_selfadjoint", v.q_selfadjoint_defect, 1e-8);
    r.within("condition3", v.condition3_residual, 1e-8);
    if (flip) r.within("retraction", v.retraction_residual, 1e-7);
    return r.all_pass() ? kSuccess : kFalse;
  }
  if (v.status == Feasibility::Infeasible) {
    r.check("infeasibility_certificate", v.certificate, FeasibilityOptions{}.infeasible_threshold,
            true);
    return kFalse;
  }
  r.check("search_inconclusive", v.certificate, FeasibilityOptions{}.feasible_threshold, true);
  return kIndeterminate;
}

int cmd_expect(Report& r, const Inputs& in) {
  const ComplexMatrix x = load(r, in, "x").matrix;
  const OrthProjection p(load(r, in, "p").matrix);
  require_same_size(x, p.matrix());
  const ComplexMatrix e = cond_expectation(x, p);
  r.output("E", e);
  const double xn = op_norm(x);
  const double atol = Tolerance{}.atol;
  r.within("star_compatible", op_norm(cond_expectation(x.adjoint(), p) - e.adjoint()),
           atol * (1.0 + xn));
  r.within("idempotent_map", op_norm(cond_expectation(e, p) - e), atol * (1.0 + xn));
  r.within("commutes_with_p", op_norm(p.matrix() * e - e * p.matrix()), atol * (1.0 + xn));
  r.check("contractive", op_norm(e), xn + atol * (1.0 + xn), op_norm(e) <= xn + atol * (1.0 + xn));
  return verdict(r);
}

int cmd_check_suite(Report& r, std::size_t n, std::uint64_t seed, std::size_t cases,
                    bool serial) {
  if (n < 2) throw DomainError(ErrorKind::InvalidArgument, "--n must be >= 2");
  r.input("n", n);
  r.input("seed", seed);
  r.input("cases", cases);
  const auto reports = serial ? battery::run_serial(n, seed, cases) : battery::run(n, seed, cases);
  const battery::Summary s = battery::summarize(reports);

  Json failed = Json::array();
  for (const auto& rep : reports) {
    for (const auto& c : rep.checks) {
      if (c.pass) continue;
      Json f;
      f["case"] = rep.index;
      f["name"] = c.name;
      f["value"] = c.value;
      f["tolerance"] = c.tolerance;
      failed.push_back(std::move(f));
    }
  }
  r.output("failures", s.failures);
  r.output("failed", std::move(failed));
  r.output("compat_feasible_rate", s.compat_feasible_rate);
  r.output("fiber_feasible_rate", s.fiber_feasible_rate);
  for (const auto& c : s.checks) r.check(c.name, c.value, c.tolerance, c.pass);
  if (cases > 0) {
    r.check("compat_feasible_rate", s.compat_feasible_rate, battery::kFeasibleRate,
            s.compat_feasible_rate >= battery::kFeasibleRate);
    r.check("fiber_feasible_rate", s.fiber_feasible_rate, battery::kFeasibleRate,
            s.fiber_feasible_rate >= battery::kFeasibleRate);
  }
  return s.pass ? kSuccess : kFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oblique projections, a-adjoints and the polar retraction"};
  app.require_subcommand(1);

  Inputs in;
  auto file = [&](CLI::App* sub, const std::string& name) {
    sub->add_option("--" + name, in.paths[name], "matrix document")->required();
  };

  std::map<std::string, std::function<int(Report&)>> handlers;
  auto* phi_cmd = app.add_subcommand("phi", "phi(p, a)");
  file(phi_cmd, "p");
  file(phi_cmd, "a");
  handlers["phi"] = [&](Report& r) { return cmd_phi(r, in); };

  auto* section = app.add_subcommand("section", "cross section of q");
  file(section, "q");
  handlers["section"] = [&](Report& r) { return cmd_section(r, in); };

  auto* omega_cmd = app.add_subcommand("omega", "polar retraction of q");
  file(omega_cmd, "q");
  handlers["omega"] = [&](Report& r) { return cmd_omega(r, in); };

  auto* omega_inv = app.add_subcommand("omega-inv", "inverse of omega_a");
  file(omega_inv, "r");
  file(omega_inv, "a");
  handlers["omega-inv"] = [&](Report& r) { return cmd_omega_inv(r, in); };

  auto* move = app.add_subcommand("move", "omega(phi(p, a))");
  file(move, "p");
  file(move, "a");
  handlers["move"] = [&](Report& r) { return cmd_move(r, in); };

  auto* orbit = app.add_subcommand("orbit", "|p - r| < sqrt(2)/2");
  file(orbit, "p");
  file(orbit, "r");
  handlers["orbit"] = [&](Report& r) { return cmd_orbit(r, in); };

  std::size_t samples = 5;
  auto* geo = app.add_subcommand("geodesic", "geodesic from p to q");
  file(geo, "p");
  file(geo, "q");
  geo->add_option("--samples", samples, "points along the curve")->capture_default_str();
  handlers["geodesic"] = [&](Report& r) { return cmd_geodesic(r, in, samples); };

  auto* conn = app.add_subcommand("connect", "tangent joining p to q");
  file(conn, "p");
  file(conn, "q");
  handlers["connect"] = [&](Report& r) { return cmd_connect(r, in); };

  std::uint64_t seed = 0;
  bool flip = false;
  auto* compat = app.add_subcommand("compat", "compatible positive element");
  file(compat, "p");
  file(compat, "q");
  compat->add_option("--seed", seed, "search seed")->capture_default_str();
  compat->add_flag("--flip", flip, "fiber variant");
  handlers["compat"] = [&](Report& r) { return cmd_compat(r, in, seed, flip); };

  auto* omega_compat = app.add_subcommand("omega-compat", "compat --flip");
  file(omega_compat, "p");
  file(omega_compat, "q");
  omega_compat->add_option("--seed", seed, "search seed")->capture_default_str();
  handlers["omega-compat"] = [&](Report& r) { return cmd_compat(r, in, seed, true); };

  auto* expect = app.add_subcommand("expect", "E_p(x)");
  file(expect, "x");
  file(expect, "p");
  handlers["expect"] = [&](Report& r) { return cmd_expect(r, in); };

  std::size_t n = 4, cases = 100;
  std::uint64_t suite_seed = 0;
  bool serial = false;
  auto* suite = app.add_subcommand("check-suite", "seeded invariant battery");
  suite->add_option("--n", n, "dimension")->capture_default_str();
  suite->add_option("--seed", suite_seed, "seed")->capture_default_str();
  suite->add_option("--cases", cases, "number of cases")->capture_default_str();
  suite->add_flag("--serial", serial, "run cases one after another");
  handlers["check-suite"] = [&](Report& r) {
    return cmd_check_suite(r, n, suite_seed, cases, serial);
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    Report r("help");
    out << r.dump(kSuccess);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    Report r(args.empty() ? "" : args.front());
    r.error("usage", e.what());
    out << r.dump(kDomainError);
    return kDomainError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Report r(name);
  int code = kDomainError;
  try {
    code = handlers.at(name)(r);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    r.error(std::string(error_string(e.kind())), e.what());
    code = kDomainError;
  }
  out << r.dump(code);
  return code;
}

}  // namespace oblique::cli
