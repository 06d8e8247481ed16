#include "phs1d/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "phs1d/errors.hpp"
#include "phs1d/integrator.hpp"
#include "model_util.hpp"

namespace phs1d {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using detail::seg;
using detail::set_block;

namespace {

MatrixXd mean_projector(const SbpOps& s) {
  const int n = s.grid.n;
  const double total = s.grid.w.sum();
  return VectorXd::Ones(n) * (s.grid.w.transpose() / total);
}

// Max abs entry of m over interior rows and columns, skipping `cut` nodes at
// each end of every field block.
double interior_max(const MatrixXd& m, int n, int row_fields, int col_fields, int cut = 4) {
  double worst = 0.0;
  for (int fr = 0; fr < row_fields; ++fr) {
    for (int i = fr * n + cut; i < (fr + 1) * n - cut; ++i) {
      for (int fc = 0; fc < col_fields; ++fc) {
        for (int j = fc * n + cut; j < (fc + 1) * n - cut; ++j) {
          worst = std::max(worst, std::abs(m(i, j)));
        }
      }
    }
  }
  return worst;
}

VectorXd gaussian_profile(const Grid& g, double center, double width, double amp) {
  VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double r = (g.x[i] - center) / width;
    v[i] = amp * std::exp(-0.5 * r * r);
  }
  return v;
}

BeamParams params_from_coeffs(double t0, double ra, double tb, double ri, double ts) {
  BeamParams p;
  p.rho = 1.0;
  p.a_sec = ra;
  p.i_mom = ri;
  p.e_mod = tb / ri;
  p.kappaG = ts / ra;
  p.t0 = t0;
  return p;
}

}  // namespace

BeamTransforms build_beam_transforms(const SbpOps& s) {
  const int n = s.grid.n;
  const double h = s.grid.h;
  const MatrixXd& D = s.d1;
  const MatrixXd DD = D * D;
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd Hw = s.grid.w.asDiagonal();
  const MatrixXd Pmean = mean_projector(s);

  BeamTransforms t;
  t.n = n;

  t.antider = MatrixXd::Zero(n, n);
  const double wsum = s.grid.w.sum();
  VectorXd col(n);
  for (int j = 0; j < n; ++j) {
    col.setZero();
    if (j == 0) col[1] = h;
    for (int i = 1; i < n - 1; ++i) {
      const double u = (i == j) ? 1.0 : 0.0;
      col[i + 1] = col[i - 1] + 2.0 * h * u;
    }
    col.array() -= s.grid.w.dot(col) / wsum;
    t.antider.col(j) = col;
  }

  t.G = MatrixXd::Zero(5 * n, 4 * n);
  set_block(t.G, n, 0, 0, D);
  set_block(t.G, n, 1, 1, I);
  set_block(t.G, n, 2, 2, D);
  set_block(t.G, n, 3, 3, I);
  set_block(t.G, n, 4, 0, D);
  t.G.block(4 * n, 2 * n, n, n) = -I;

  t.F = MatrixXd::Zero(4 * n, 5 * n);
  set_block(t.F, n, 0, 0, t.antider);
  set_block(t.F, n, 1, 1, I);
  set_block(t.F, n, 2, 0, I);
  t.F.block(2 * n, 4 * n, n, n) = -I;
  set_block(t.F, n, 3, 3, I);

  t.Gdag = MatrixXd::Zero(4 * n, 5 * n);
  set_block(t.Gdag, n, 0, 0, -D);
  t.Gdag.block(0, 4 * n, n, n) = -D;
  set_block(t.Gdag, n, 1, 1, I);
  set_block(t.Gdag, n, 2, 2, -D);
  t.Gdag.block(2 * n, 4 * n, n, n) = -I;
  set_block(t.Gdag, n, 3, 3, I);

  const MatrixXd apd = Hw.inverse() * t.antider.transpose() * Hw;
  t.Fdag = MatrixXd::Zero(5 * n, 4 * n);
  set_block(t.Fdag, n, 0, 0, apd);
  t.Fdag.block(0, 2 * n, n, n) = I;
  set_block(t.Fdag, n, 1, 1, I);
  set_block(t.Fdag, n, 3, 3, I);
  t.Fdag.block(4 * n, 2 * n, n, n) = -I;

  t.Gr = MatrixXd::Zero(3 * n, 2 * n);
  set_block(t.Gr, n, 0, 0, D);
  set_block(t.Gr, n, 1, 0, DD);
  set_block(t.Gr, n, 2, 1, I);

  t.Grdag = MatrixXd::Zero(2 * n, 3 * n);
  set_block(t.Grdag, n, 0, 0, -D);
  set_block(t.Grdag, n, 0, 1, DD);
  t.Grdag.block(n, 2 * n, n, n) = I;

  t.PiE = MatrixXd::Zero(5 * n, 5 * n);
  for (int i = 0; i < 3; ++i) set_block(t.PiE, n, i, i, I);

  t.PiI = MatrixXd::Zero(4 * n, 4 * n);
  set_block(t.PiI, n, 0, 0, I);
  set_block(t.PiI, n, 1, 1, I);
  set_block(t.PiI, n, 2, 0, D);

  t.Zdom = MatrixXd::Identity(4 * n, 4 * n);
  t.Zdom.block(0, 0, n, n) = I - Pmean;

  return t;
}

TransformReport verify_transform_identities(const SbpOps& s, int n_draws, unsigned seed,
                                            double tolerance) {
  const int n = s.grid.n;
  const BeamTransforms t = build_beam_transforms(s);
  const MatrixXd Pmean = mean_projector(s);
  const MatrixXd I = MatrixXd::Identity(n, n);

  TransformReport rep;
  rep.antider_identity = (t.antider * s.d1 - (I - Pmean)).cwiseAbs().maxCoeff();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(0.1, 10.0);
  for (int draw = 0; draw < std::max(1, n_draws); ++draw) {
    BeamParams p;
    if (draw > 0) {
      p = params_from_coeffs(coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng));
    }
    PHDescriptor de = timoshenko_explicit(s, p, Mode::free_ends);
    PHDescriptor di = timoshenko_implicit(s, p, Mode::free_ends);
    rep.j_conjugation = std::max(rep.j_conjugation,
                                 (t.G * di.Jop * t.Gdag - de.Jop).cwiseAbs().maxCoeff());
    const double s_scale = di.Sop.cwiseAbs().maxCoeff();
    rep.s_conjugation =
        std::max(rep.s_conjugation,
                 (t.Gdag * de.Sop * t.G - di.Sop).cwiseAbs().maxCoeff() / s_scale);
  }

  PHDescriptor dr = eb_explicit_reduced(s, BeamParams{}, Mode::free_ends);
  MatrixXd jr_impl = MatrixXd::Zero(2 * n, 2 * n);
  jr_impl.block(0, n, n, n) = I;
  jr_impl.block(n, 0, n, n) = -I;
  rep.reduced_j = (t.Gr * jr_impl * t.Grdag - dr.Jop).cwiseAbs().maxCoeff();

  rep.fg_identity = (t.F * t.G - t.Zdom).cwiseAbs().maxCoeff();
  rep.adjoint_identity = interior_max(
      (t.Gdag * t.Fdag - MatrixXd::Identity(4 * n, 4 * n)) * t.Zdom, n, 4, 4);
  rep.projector_intertwine = interior_max((t.F * t.PiE * t.G - t.PiI) * t.Zdom, n, 4, 4);

  rep.worst = std::max({rep.antider_identity, rep.j_conjugation, rep.s_conjugation,
                        rep.reduced_j, rep.fg_identity, rep.adjoint_identity,
                        rep.projector_intertwine});
  rep.ok = rep.worst <= tolerance;
  return rep;
}

DiagramReport run_diagram(const SbpOps& s, const BeamParams& p, double dt, int steps,
                          double tolerance) {
  const int n = s.grid.n;
  const BeamTransforms t = build_beam_transforms(s);
  const MatrixXd& D = s.d1;
  const MatrixXd DD = D * D;
  const MatrixXd Pmean = mean_projector(s);
  const MatrixXd Icen = MatrixXd::Identity(n, n) - Pmean;

  PHDescriptor de = timoshenko_explicit(s, p, Mode::free_ends);
  PHDescriptor di = timoshenko_implicit(s, p, Mode::free_ends);
  PHDescriptor dec = eb_explicit_dae(s, p, Mode::free_ends);
  PHDescriptor dic = eb_implicit_dae(s, p, Mode::free_ends);

  VectorXd w0 = gaussian_profile(s.grid, 0.45, 0.14, 1.0);
  w0.array() -= s.grid.w.dot(w0) / s.grid.w.sum();
  VectorXd p0 = gaussian_profile(s.grid, 0.6, 0.1, 0.5);
  VectorXd zi0(4 * n);
  zi0 << w0, p0, D * w0, p.rhoI() * (D * VectorXd(p0 / p.rhoA()));
  VectorXd ze0 = t.G * zi0;
  const double sc = ze0.cwiseAbs().maxCoeff();

  RunResult ri = run_midpoint(di, zi0, dt, steps, true);
  RunResult re = run_midpoint(de, ze0, dt, steps, true);

  VectorXd zec0 = dec.consistent_init(VectorXd(t.PiE * ze0));
  VectorXd zic0 = dic.consistent_init(VectorXd(t.PiI * zi0));
  RunResult rec = run_midpoint(dec, zec0, dt, steps, true);
  RunResult ric = run_midpoint(dic, zic0, dt, steps, true);

  DiagramReport rep;
  rep.rows.reserve(ri.states.size());
  for (size_t k = 0; k < ri.states.size(); ++k) {
    const VectorXd& a = ri.states[k];
    const VectorXd& b = re.states[k];
    const VectorXd& ac = ric.states[k];
    const VectorXd& bc = rec.states[k];

    DiagramRow row;
    row.t = ri.times[k];
    row.d_timo_fwd = (t.G * a - b).cwiseAbs().maxCoeff() / sc;
    row.d_timo_inv = (t.F * b - t.Zdom * a).cwiseAbs().maxCoeff() / sc;

    VectorXd wv = seg(ac, n, 0), pv = seg(ac, n, 1);
    VectorXd ew = seg(bc, n, 0), pp = seg(bc, n, 1), ep = seg(bc, n, 2);
    row.d_eb_fwd = std::max({(D * wv - ew).cwiseAbs().maxCoeff(),
                             (DD * wv - ep).cwiseAbs().maxCoeff(),
                             (pv - pp).cwiseAbs().maxCoeff()}) /
                   sc;
    row.d_eb_inv = std::max((t.antider * ew - Icen * wv).cwiseAbs().maxCoeff(),
                            (pp - pv).cwiseAbs().maxCoeff()) /
                   sc;
    row.d_commute =
        (t.F * (t.PiE * b) - t.Zdom * (t.PiI * a)).cwiseAbs().maxCoeff() / sc;

    rep.max_timo_fwd = std::max(rep.max_timo_fwd, row.d_timo_fwd);
    rep.max_timo_inv = std::max(rep.max_timo_inv, row.d_timo_inv);
    rep.max_eb_fwd = std::max(rep.max_eb_fwd, row.d_eb_fwd);
    rep.max_eb_inv = std::max(rep.max_eb_inv, row.d_eb_inv);
    rep.max_commute = std::max(rep.max_commute, row.d_commute);
    rep.rows.push_back(row);
  }

  rep.worst = std::max({rep.max_timo_fwd, rep.max_timo_inv, rep.max_eb_fwd, rep.max_eb_inv,
                        rep.max_commute});
  rep.ok = rep.worst <= tolerance;
  return rep;
}

EquivalenceReport verify_equivalence(const SbpOps& s, const BeamParams& p, double dt, int steps,
                                     double tolerance) {
  const int n = s.grid.n;
  const BeamTransforms t = build_beam_transforms(s);
  const MatrixXd& D = s.d1;

  PHDescriptor dec = eb_explicit_dae(s, p, Mode::free_ends);
  PHDescriptor der = eb_explicit_reduced(s, p, Mode::free_ends);
  PHDescriptor dic = eb_implicit_dae(s, p, Mode::free_ends);
  PHDescriptor dir = eb_implicit_reduced(s, p, Mode::free_ends);

  VectorXd w0 = gaussian_profile(s.grid, 0.45, 0.14, 1.0);
  w0.array() -= s.grid.w.dot(w0) / s.grid.w.sum();
  VectorXd p0 = gaussian_profile(s.grid, 0.6, 0.1, 0.5);
  VectorXd zi0(4 * n);
  zi0 << w0, p0, D * w0, p.rhoI() * (D * VectorXd(p0 / p.rhoA()));
  VectorXd ze0 = t.G * zi0;
  const double sc = ze0.cwiseAbs().maxCoeff();

  VectorXd zec0 = dec.consistent_init(VectorXd(t.PiE * ze0));
  VectorXd zic0 = dic.consistent_init(VectorXd(t.PiI * zi0));

  VectorXd zr0(3 * n);
  zr0 << seg(zec0, n, 0), seg(zec0, n, 2), seg(zec0, n, 1);
  VectorXd z20(2 * n);
  z20 << seg(zic0, n, 0), seg(zic0, n, 1);

  RunResult rec = run_midpoint(dec, zec0, dt, steps, true);
  RunResult rrr = run_midpoint(der, zr0, dt, steps, true);
  RunResult ric = run_midpoint(dic, zic0, dt, steps, true);
  RunResult rr2 = run_midpoint(dir, z20, dt, steps, true);

  EquivalenceReport rep;
  for (size_t k = 0; k < rec.states.size(); ++k) {
    const VectorXd& a = rrr.states[k];
    const VectorXd& b = rec.states[k];
    rep.explicit_pair = std::max(
        {rep.explicit_pair, (seg(b, n, 0) - seg(a, n, 0)).cwiseAbs().maxCoeff() / sc,
         (seg(b, n, 2) - seg(a, n, 1)).cwiseAbs().maxCoeff() / sc,
         (seg(b, n, 1) - seg(a, n, 2)).cwiseAbs().maxCoeff() / sc});
    const VectorXd& a2 = rr2.states[k];
    const VectorXd& b2 = ric.states[k];
    rep.implicit_pair = std::max(
        {rep.implicit_pair, (seg(b2, n, 0) - seg(a2, n, 0)).cwiseAbs().maxCoeff() / sc,
         (seg(b2, n, 1) - seg(a2, n, 1)).cwiseAbs().maxCoeff() / sc});
  }

  rep.worst = std::max(rep.explicit_pair, rep.implicit_pair);
  rep.ok = rep.worst <= tolerance;
  return rep;
}

}  // namespace phs1d
