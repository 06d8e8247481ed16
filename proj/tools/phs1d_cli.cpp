#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <phs1d/audit.hpp>
#include <phs1d/config.hpp>
#include <phs1d/errors.hpp>
#include <phs1d/integrator.hpp>
#include <phs1d/io.hpp>
#include <phs1d/models.hpp>
#include <phs1d/tolerances.hpp>
#include <phs1d/transforms.hpp>

namespace {

using namespace phs1d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ModelCase {
  std::string label;
  PHDescriptor d;
};

// Nine descriptors; draw 0 keeps the default material constants, later draws
// scale every constant by an independent factor in [0.5, 2].
std::vector<ModelCase> all_models(const SbpOps& s, unsigned seed, int draw) {
  std::mt19937_64 rng(seed + static_cast<unsigned>(draw) * 1000003u);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  auto f = [&]() { return draw == 0 ? 1.0 : u(rng); };

  DzektserParams dz;
  dz.alpha_s *= f();
  dz.beta_s *= f();
  dz.eps_nl *= f();
  NanorodParams nr;
  nr.k_f *= f();
  nr.rhoA *= f();
  nr.mu_nl *= f();
  nr.e_mod *= f();
  nr.a_sec *= f();
  nr.b_damp *= f();
  nr.tau_d *= f();
  BeamParams bm;
  bm.rho *= f();
  bm.a_sec *= f();
  bm.i_mom *= f();
  bm.e_mod *= f();
  bm.t0 *= f();
  bm.kappaG *= f();

  std::vector<ModelCase> out;
  out.push_back({"dzektser", dzektser_explicit(s, dz, Mode::free_ends)});
  out.push_back({"nanorod_explicit", nanorod_explicit(s, nr, Mode::free_ends)});
  out.push_back({"nanorod_implicit", nanorod_implicit(s, nr, Mode::free_ends)});
  out.push_back({"timoshenko_explicit", timoshenko_explicit(s, bm, Mode::free_ends)});
  out.push_back({"timoshenko_implicit", timoshenko_implicit(s, bm, Mode::free_ends)});
  out.push_back({"eb_explicit_dae", eb_explicit_dae(s, bm, Mode::free_ends)});
  out.push_back({"eb_explicit_reduced", eb_explicit_reduced(s, bm, Mode::free_ends)});
  out.push_back({"eb_implicit_dae", eb_implicit_dae(s, bm, Mode::free_ends)});
  out.push_back({"eb_implicit_reduced", eb_implicit_reduced(s, bm, Mode::free_ends)});
  return out;
}

VectorXd gaussian_profile(const Grid& g, double center, double width, double amp) {
  VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double r = (g.x[i] - center) / width;
    v[i] = amp * std::exp(-0.5 * r * r);
  }
  return v;
}

VectorXd audit_state(const PHDescriptor& d, const Grid& g) {
  const int nb = d.n / static_cast<int>(field_names(d.name).size());
  VectorXd z0 = VectorXd::Zero(d.n);
  z0.segment(0, nb) = gaussian_profile(g, 0.5, 0.12, 1.0);
  if (d.n > nb) z0.segment(nb, nb) = gaussian_profile(g, 0.4, 0.1, 0.5);
  if (d.consistent_init) z0 = d.consistent_init(z0);
  return z0;
}

void maybe_write(const std::string& out_dir, const std::string& name,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  write_csv(out_dir + "/" + name, header, rows);
}

int cmd_simulate(const std::string& config_path) {
  ScenarioConfig cfg = parse_scenario(config_path);
  BuiltScenario sc = build_scenario(cfg);
  RunResult run = run_midpoint(sc.desc, sc.z0, sc.dt, sc.steps, false);
  if (!cfg.ledger_path.empty()) write_ledger_csv(cfg.ledger_path, run.ledger);

  const double tol = tolerance::scaled(tolerance::ledger);
  std::printf("model %s  n %d  dt %.6g  steps %d\n", sc.desc.name.c_str(), cfg.n, sc.dt,
              sc.steps);
  std::printf("H(0) %.12g  H(T) %.12g  max ledger residual %.3e  tolerance %.3e\n",
              sc.desc.hamiltonian(sc.z0), sc.desc.hamiltonian(run.final_state),
              run.max_residual, tol);
  if (run.max_residual > tol) {
    std::fprintf(stderr, "energy ledger residual exceeds tolerance\n");
    throw SolverError("energy ledger residual exceeds tolerance");
  }
  return 0;
}

bool run_structure_suite(const SbpOps& s, unsigned seed, const std::string& out_dir) {
  bool ok = true;
  std::vector<std::vector<double>> table;
  std::vector<std::vector<double>> audit_table;
  const double tol = tolerance::scaled(tolerance::assembly);
  const double audit_tol = tolerance::scaled(tolerance::runtime);

  for (int draw = 0; draw < 3; ++draw) {
    for (auto& mc : all_models(s, seed, draw)) {
      StructureReport rep = check_structure(mc.d, 16, seed, tol);
      std::printf("structure %-20s draw %d  worst %.3e  %s\n", mc.label.c_str(), draw, rep.worst,
                  rep.ok ? "pass" : "FAIL");
      ok = ok && rep.ok;
      table.push_back({static_cast<double>(draw), rep.j_skew, rep.lagrange, rep.energy_split,
                       rep.r_min, rep.m_min, rep.worst});

      BalanceAudit ba = rederive_balance(mc.d, nullptr, audit_state(mc.d, s.grid), 1e-3, 50,
                                         audit_tol);
      std::printf("audit     %-20s draw %d  ports %.3e  %s\n", mc.label.c_str(), draw,
                  ba.ledger_vs_ports, ba.ok ? "pass" : "FAIL");
      ok = ok && ba.ok;
      audit_table.push_back(
          {static_cast<double>(draw), ba.ledger_vs_ports, ba.decomposition});
    }
  }

  // The seepage rate decomposition has named monomials; certify their sum too.
  DzektserParams dz;
  BalanceTerms terms = dzektser_power_balance_terms(s, dz);
  PHDescriptor d = dzektser_explicit(s, dz, Mode::free_ends);
  BalanceAudit ba = rederive_balance(d, &terms, audit_state(d, s.grid), 1e-3, 100, audit_tol);
  std::printf("audit     %-20s decomposition %.3e  %s\n", "dzektser", ba.decomposition,
              ba.ok ? "pass" : "FAIL");
  ok = ok && ba.ok;

  maybe_write(out_dir, "structure.csv",
              {"draw", "j_skew", "lagrange", "energy_split", "r_min", "m_min", "worst"}, table);
  maybe_write(out_dir, "audit.csv", {"draw", "ledger_vs_ports", "decomposition"}, audit_table);
  return ok;
}

bool run_transform_suite(const SbpOps& s, unsigned seed, const std::string& out_dir) {
  const double tol = tolerance::scaled(tolerance::transform);
  TransformReport tr = verify_transform_identities(s, 3, seed, tol);
  std::printf("transforms: antiderivative %.3e  j-conjugation %.3e  s-conjugation %.3e\n",
              tr.antider_identity, tr.j_conjugation, tr.s_conjugation);
  std::printf("transforms: reduced-j %.3e  round-trip %.3e  adjoint %.3e  intertwine %.3e  %s\n",
              tr.reduced_j, tr.fg_identity, tr.adjoint_identity, tr.projector_intertwine,
              tr.ok ? "pass" : "FAIL");

  EquivalenceReport eq =
      verify_equivalence(s, BeamParams{}, 1e-3, 100, tolerance::scaled(tolerance::equivalence));
  std::printf("equivalence: explicit pair %.3e  implicit pair %.3e  %s\n", eq.explicit_pair,
              eq.implicit_pair, eq.ok ? "pass" : "FAIL");

  maybe_write(out_dir, "transforms.csv",
              {"antiderivative", "j_conjugation", "s_conjugation", "reduced_j", "round_trip",
               "adjoint", "intertwine"},
              {{tr.antider_identity, tr.j_conjugation, tr.s_conjugation, tr.reduced_j,
                tr.fg_identity, tr.adjoint_identity, tr.projector_intertwine}});
  maybe_write(out_dir, "equivalence.csv", {"explicit_pair", "implicit_pair"},
              {{eq.explicit_pair, eq.implicit_pair}});
  return tr.ok && eq.ok;
}

bool run_diagram_suite(const SbpOps& s, const std::string& out_dir) {
  DiagramReport dg = run_diagram(s, BeamParams{}, 1e-3, 50,
                                 tolerance::scaled(tolerance::diagram));
  std::printf("diagram: forward %.3e / %.3e  inverse %.3e / %.3e  commutation %.3e  %s\n",
              dg.max_timo_fwd, dg.max_eb_fwd, dg.max_timo_inv, dg.max_eb_inv, dg.max_commute,
              dg.ok ? "pass" : "FAIL");
  std::vector<std::vector<double>> rows;
  rows.reserve(dg.rows.size());
  for (const auto& r : dg.rows) {
    rows.push_back({r.t, r.d_timo_fwd, r.d_timo_inv, r.d_eb_fwd, r.d_eb_inv, r.d_commute});
  }
  maybe_write(out_dir, "diagram.csv",
              {"t", "d_timo_fwd", "d_timo_inv", "d_eb_fwd", "d_eb_inv", "d_commute"}, rows);
  return dg.ok;
}

bool run_variational_suite(const SbpOps& s, unsigned seed, const std::string& out_dir) {
  bool ok = true;
  std::vector<std::vector<double>> table;
  const double tol = tolerance::scaled(tolerance::variational);
  int idx = 0;
  for (auto& mc : all_models(s, seed, 0)) {
    VariationalReport vr = variational_check(mc.d, 50, seed + static_cast<unsigned>(idx), 1e-4,
                                             tol);
    std::printf("variational %-20s worst %.3e  %s\n", mc.label.c_str(), vr.worst,
                vr.ok ? "pass" : "FAIL");
    ok = ok && vr.ok;
    table.push_back({static_cast<double>(idx), vr.worst});
    ++idx;
  }

  // Rayleigh quotients of one sine mode against the continuum values.
  SbpOps sq = build_sbp(build_grid(401));
  VectorXd sv(sq.grid.n);
  for (int i = 0; i < sq.grid.n; ++i) sv[i] = std::sin(std::numbers::pi * sq.grid.x[i]);
  const double denom = inner(sq, sv, sv);
  const MatrixXd DD = sq.d1 * sq.d1;
  const double q2 = inner(sq, sv, VectorXd(-(DD * sv))) / denom;
  const double q4 = inner(sq, sv, VectorXd(DD * (DD * sv))) / denom;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double e2 = std::abs(q2 - pi2) / pi2;
  const double e4 = std::abs(q4 - pi2 * pi2) / (pi2 * pi2);
  const bool q_ok = e2 <= tolerance::scaled(tolerance::quadrature_second) &&
                    e4 <= tolerance::scaled(tolerance::quadrature_fourth);
  std::printf("quadrature: second-derivative quotient rel err %.3e  fourth %.3e  %s\n", e2, e4,
              q_ok ? "pass" : "FAIL");
  ok = ok && q_ok;

  maybe_write(out_dir, "variational.csv", {"model_index", "worst"}, table);
  maybe_write(out_dir, "quadrature.csv", {"second_rel_err", "fourth_rel_err"}, {{e2, e4}});
  return ok;
}

int cmd_verify(const std::string& suite, int n, unsigned seed, const std::string& out_dir) {
  SbpOps s = build_sbp(build_grid(n));
  std::printf("verify suite %s  n %d  seed %u\n", suite.c_str(), n, seed);

  bool ok = true;
  if (suite == "structure" || suite == "all") ok = run_structure_suite(s, seed, out_dir) && ok;
  if (suite == "transforms" || suite == "all") ok = run_transform_suite(s, seed, out_dir) && ok;
  if (suite == "diagram" || suite == "all") ok = run_diagram_suite(s, out_dir) && ok;
  if (suite == "variational" || suite == "all") {
    ok = run_variational_suite(s, seed, out_dir) && ok;
  }
  std::printf("verify %s: %s\n", suite.c_str(), ok ? "pass" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_dump(const std::string& config_path, const std::string& dir) {
  ScenarioConfig cfg = parse_scenario(config_path);
  BuiltScenario sc = build_scenario(cfg);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());

  std::vector<std::pair<std::string, const MatrixXd*>> ops = {
      {"E", &sc.desc.E}, {"A", &sc.desc.A}, {"M", &sc.desc.ham.M}};
  if (sc.desc.Hblk.size() > 0) ops.push_back({"Hblk", &sc.desc.Hblk});
  if (sc.desc.Jop.size() > 0) ops.push_back({"J", &sc.desc.Jop});
  if (sc.desc.Sop.size() > 0) ops.push_back({"S", &sc.desc.Sop});
  if (sc.desc.Pop.size() > 0) ops.push_back({"P", &sc.desc.Pop});
  if (sc.desc.Hsub.size() > 0) ops.push_back({"Hsub", &sc.desc.Hsub});
  if (sc.desc.Rquad.size() > 0) ops.push_back({"R", &sc.desc.Rquad});

  for (const auto& [name, m] : ops) {
    const std::string path = dir + "/" + name + ".mat";
    write_matrix(path, name, *m);
    NamedMatrix back = read_matrix(path);
    if (back.name != name || back.m.rows() != m->rows() || back.m.cols() != m->cols() ||
        std::memcmp(back.m.data(), m->data(),
                    sizeof(double) * static_cast<size_t>(m->size())) != 0) {
      throw IoError("round-trip mismatch for operator '" + name + "'");
    }
    std::printf("wrote %s (%ld x %ld), round-trip exact\n", path.c_str(),
                static_cast<long>(m->rows()), static_cast<long>(m->cols()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure-preserving 1d port-based simulation"};
  app.require_subcommand(1);

  std::string config_path, dump_dir, suite, out_dir;
  int n = 101;
  unsigned seed = 0x5bb1u;

  CLI::App* sim = app.add_subcommand("simulate", "run one scenario and write its energy ledger");
  sim->add_option("config", config_path, "scenario file")->required();

  CLI::App* ver = app.add_subcommand("verify", "run a certificate suite");
  ver->add_option("suite", suite, "structure | transforms | diagram | variational | all")
      ->required()
      ->check(CLI::IsMember({"structure", "transforms", "diagram", "variational", "all"}));
  ver->add_option("--n", n, "grid size")->check(CLI::PositiveNumber);
  ver->add_option("--seed", seed, "sweep seed");
  ver->add_option("--out", out_dir, "directory for residual tables");

  CLI::App* dump = app.add_subcommand("dump-operators", "write the assembled operators");
  dump->add_option("config", config_path, "scenario file")->required();
  dump->add_option("dir", dump_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return cmd_simulate(config_path);
    if (ver->parsed()) return cmd_verify(suite, n, seed, out_dir);
    return cmd_dump(config_path, dump_dir);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const StructureError& e) {
    std::fprintf(stderr, "structure error: %s\n", e.what());
    return 3;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
