#include "axisym/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "axisym/errors.hpp"
#include "axisym/filters.hpp"

namespace axisym {

namespace {

constexpr double kVelocityFloor = 1e-30;

void axpy_into(FieldGrid& out, const FieldGrid& a, double s, const FieldGrid& b) {
  auto& o = out.values();
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = av[k] + s * bv[k];
}

double relative_change(double before, double after) {
  return before > 0.0 ? std::abs(after / before - 1.0) : 0.0;
}

}  // namespace

DiffusionSpec RunConfig::diffusion() const {
  DiffusionSpec d;
  switch (case_id) {
    case 2:
      d.variant = Viscosity::Constant;
      d.mu = mu;
      break;
    case 3:
      d.variant = Viscosity::Inviscid;
      break;
    default:
      d.variant = Viscosity::Degenerate;
  }
  return d;
}

void RunConfig::validate() const {
  if (case_id < 1 || case_id > 4) throw ConfigError(0, "case must be 1, 2, 3 or 4");
  if (n < 8 || m < 8) throw ConfigError(0, "mesh must be at least 8 x 8");
  if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError(0, "cfl must lie in (0, 1)");
  if (!(t_end >= 0.0)) throw ConfigError(0, "t_end must be >= 0");
  if (case_id == 2 && !(mu >= 0.0)) throw ConfigError(0, "mu must be >= 0");
  if (rlpf_k < 0) throw ConfigError(0, "rlpf_k must be >= 0");
  if (diag_every < 1) throw ConfigError(0, "diag_every must be >= 1");
}

DtChoice compute_dt(const Velocity& vel, const NuFields& nu, const Mesh& mesh,
                    double cfl) {
  int n = mesh.n(), m = mesh.m();
  const auto& Jr = mesh.r.jac_nodes();
  const auto& Jz = mesh.z.jac_nodes();
  double hr = 1.0 / n, hz = 1.0 / m;
  double conv = std::numeric_limits<double>::infinity();
  double diff = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    double dr = hr * Jr[i];
    for (int j = 0; j <= m; ++j) {
      double dz = hz * Jz[j];
      conv = std::min(conv, dr / std::max(std::abs(vel.ur(i, j)), kVelocityFloor));
      conv = std::min(conv, dz / std::max(std::abs(vel.uz(i, j)), kVelocityFloor));
      if (!nu.zero) {
        if (nu.nr(i, j) > 0.0) diff = std::min(diff, dr * dr / nu.nr(i, j));
        if (nu.nz(i, j) > 0.0) diff = std::min(diff, dz * dz / nu.nz(i, j));
      }
    }
  }
  DtChoice c;
  c.dt_convective = cfl * conv;
  c.dt_diffusive = cfl * diff;
  c.branch = c.dt_diffusive < c.dt_convective ? CflBranch::Diffusive : CflBranch::Convective;
  c.dt = std::min(c.dt_convective, c.dt_diffusive);
  return c;
}

double omega_theta_max(const FieldGrid& w1, const Mesh& mesh) {
  double s = 0.0;
  for (int i = 0; i <= w1.n(); ++i) {
    double r = mesh.r.node(i);
    const double* row = w1.row(i);
    for (int j = 0; j <= w1.m(); ++j) s = std::max(s, std::abs(r * row[j]));
  }
  return s;
}

NuFields Stepper::nu(const Mesh& mesh, double omax) {
  if (nu_r_id_ != mesh.r.id() || nu_z_id_ != mesh.z.id()) {
    nu_space_ = nu_fields_space(spec_, mesh);
    nu_r_id_ = mesh.r.id();
    nu_z_id_ = mesh.z.id();
  }
  NuFields out = nu_space_;
  if (spec_.variant == Viscosity::Degenerate) add_time_part(out, spec_.time_part(omax));
  return out;
}

Tendencies Stepper::rhs(const SolutionState& s, double omax) {
  const Mesh& mesh = s.mesh;
  FieldGrid u = s.u1, w = s.w1;
  if (plan_.lpf) {
    StrengthFn weak = StrengthFn::uniform(0.1), band = StrengthFn::lshape();
    u = lpf(lpf(u, weak), band);
    w = lpf(lpf(w, weak), band);
  }
  FieldGrid psi = poisson_.solve(w, mesh);
  StrengthFn full = StrengthFn::uniform(1.0);
  if (plan_.lpf) psi = lpf(psi, full);
  FieldGrid psi_r = ddr(psi, mesh), psi_z = ddz(psi, mesh);
  if (plan_.rlpf_k > 0) {
    int N = plan_.rlpf_n > 0 ? plan_.rlpf_n : mesh.m();
    int M = plan_.rlpf_m > 0 ? plan_.rlpf_m : mesh.m();
    Mesh coarse = rlpf_mesh(locate_features(s.u1, mesh), N, M);
    StrengthFn band = StrengthFn::lshape();
    psi_r = rlpf(psi_r, mesh, coarse, plan_.rlpf_k, band);
    psi_z = rlpf(psi_z, mesh, coarse, plan_.rlpf_k, band);
    rlpf_count_ += 2;
  }
  if (plan_.lpf) {
    psi_r = lpf(psi_r, full);
    psi_z = lpf(psi_z, full);
  }
  Tendencies k{FieldGrid(), FieldGrid(), velocity_from_derivatives(psi, psi_r, psi_z, mesh)};

  NuFields nuf = nu(mesh, omax);
  FieldGrid u_r = ddr(u, mesh), u_z = ddz(u, mesh);
  FieldGrid w_r = ddr(w, mesh), w_z = ddz(w, mesh);
  k.du1 = diffusion_u1(u, nuf, mesh);
  k.dw1 = diffusion_w1(w, k.vel, nuf, mesh);
  const auto& ur = k.vel.ur.values();
  const auto& uz = k.vel.uz.values();
  auto& du = k.du1.values();
  auto& dw = k.dw1.values();
  for (std::size_t q = 0; q < du.size(); ++q) {
    double uq = u.values()[q];
    du[q] += -(ur[q] * u_r.values()[q] + uz[q] * u_z.values()[q]) +
             2.0 * uq * psi_z.values()[q];
    dw[q] += -(ur[q] * w_r.values()[q] + uz[q] * w_z.values()[q]) +
             2.0 * uq * u_z.values()[q];
  }
  k.du1.set_parity(s.u1.parity_r(), s.u1.parity_z());
  k.dw1.set_parity(s.w1.parity_r(), s.w1.parity_z());
  if (forcing_) forcing_(s.t, s, k.du1, k.dw1);
  k.du1.zero_odd_rows();
  k.dw1.zero_odd_rows();
  return k;
}

void Stepper::refresh(SolutionState& s) {
  s.psi = poisson_.solve(s.w1, s.mesh);
  enforce_boundary(s.u1, s.w1, s.psi, s.mesh);
}

void Stepper::heun(SolutionState& s, const Tendencies& k1, double dt, double omax) {
  SolutionState mid = s;
  axpy_into(mid.u1, s.u1, dt, k1.du1);
  axpy_into(mid.w1, s.w1, dt, k1.dw1);
  mid.t = s.t + dt;
  refresh(mid);
  Tendencies k2 = rhs(mid, omax);
  auto& u = s.u1.values();
  auto& w = s.w1.values();
  for (std::size_t q = 0; q < u.size(); ++q) {
    u[q] += 0.5 * dt * (k1.du1.values()[q] + k2.du1.values()[q]);
    w[q] += 0.5 * dt * (k1.dw1.values()[q] + k2.dw1.values()[q]);
  }
  s.t += dt;
  if (!s.u1.all_finite() || !s.w1.all_finite())
    throw NonFinite("non-finite values after step to t = " + std::to_string(s.t));
  refresh(s);
  if (!s.psi.all_finite())
    throw NonFinite("non-finite stream function at t = " + std::to_string(s.t));
}

void Stepper::step_rk2(SolutionState& s, double dt) {
  double omax = omega_theta_max(s.w1, s.mesh);
  Tendencies k1 = rhs(s, omax);
  heun(s, k1, dt, omax);
}

StepReport Stepper::advance(SolutionState& s, double cfl, double t_stop) {
  double omax = omega_theta_max(s.w1, s.mesh);
  Tendencies k1 = rhs(s, omax);
  DtChoice c = compute_dt(k1.vel, nu(s.mesh, omax), s.mesh, cfl);
  double dt = c.dt;
  bool land = s.t + dt >= t_stop - 1e-3 * dt;
  if (land) dt = t_stop - s.t;
  if (!(dt > 0.0) || !std::isfinite(dt)) throw NonFinite("invalid time step");
  double u0 = s.u1.sup_norm(), w0 = s.w1.sup_norm();
  heun(s, k1, dt, omax);
  if (land) s.t = t_stop;
  StepReport rep;
  rep.t = s.t;
  rep.dt = dt;
  rep.branch = c.branch;
  rep.growth = std::max(relative_change(u0, s.u1.sup_norm()),
                        relative_change(w0, s.w1.sup_norm()));
  return rep;
}

SolutionState initial_state(const RunConfig& cfg, PoissonSolver& poisson) {
  SolutionState s;
  s.mesh = adaptive_mesh(initial_features(cfg.init), cfg.n, cfg.m);
  auto [u, w] = initial_fields(cfg.init, s.mesh);
  s.u1 = std::move(u);
  s.w1 = std::move(w);
  s.psi = poisson.solve(s.w1, s.mesh);
  return s;
}

std::string to_string(HaltReason r) {
  switch (r) {
    case HaltReason::Completed: return "completed";
    case HaltReason::NonFinite: return "nonfinite";
    case HaltReason::MeshFailure: return "mesh-failure";
    case HaltReason::StepLimit: return "step-limit";
  }
  return "unknown";
}

RunResult run(const RunConfig& cfg, const RunObserver& obs) {
  PoissonSolver tmp;
  return run_from(cfg, initial_state(cfg, tmp), obs);
}

namespace {

// Thresholds for the node-count criteria never exceed half the count a fresh
// mesh provides, and a location criterion already violated on a fresh mesh
// stays off until the next rebuild.
UpdateThresholds effective_thresholds(const UpdateThresholds& base,
                                      const ProfileFeatures& f, const Mesh& mesh) {
  UpdateThresholds th = base;
  th.n_min_r = std::min(base.n_min_r, mesh.r.count_nodes_in(f.Rr, f.R) / 2);
  th.n_min_z = std::min(base.n_min_z, mesh.z.count_nodes_in(0.0, f.Z) / 2);
  for (int reason : {1, 2}) {
    UpdateThresholds only{0, 0, {false, false, false, false}};
    only.enabled[reason - 1] = true;
    if (needs_update(f, mesh, only).update) th.enabled[reason - 1] = false;
  }
  return th;
}

}  // namespace

RunResult run_from(const RunConfig& cfg, SolutionState state, const RunObserver& obs) {
  cfg.validate();
  FilterPlan plan;
  plan.lpf = cfg.filters;
  plan.rlpf_k = cfg.case_id == 4 ? cfg.rlpf_k : 0;
  plan.rlpf_n = cfg.rlpf_n;
  plan.rlpf_m = cfg.rlpf_m;
  Stepper stepper(cfg.diffusion(), plan);

  RunResult res;
  std::vector<double> stops = cfg.output_times;
  stops.push_back(cfg.t_end);
  std::sort(stops.begin(), stops.end());

  auto emit = [&](const SolutionState& s, double dt, bool updated) {
    DiagnosticsRecord rec = record_diagnostics(s.t, s.u1, s.w1, s.psi, s.mesh);
    rec.dt = dt;
    rec.mesh_updated = updated;
    res.records.push_back(rec);
    if (obs.on_record) obs.on_record(rec);
  };

  UpdateThresholds th;
  try {
    th = effective_thresholds(cfg.thresholds, locate_features(state.u1, state.mesh),
                              state.mesh);
  } catch (const DegenerateProfile& e) {
    th = cfg.thresholds;
  }

  emit(state, 0.0, false);
  std::size_t next_stop = 0;
  while (next_stop < stops.size() && stops[next_stop] <= state.t) {
    if (stops[next_stop] == state.t && obs.on_checkpoint && stops[next_stop] != cfg.t_end)
      obs.on_checkpoint(state);
    ++next_stop;
  }

  double last_dt = 0.0;
  bool recorded_last = true;
  try {
    while (state.t < cfg.t_end) {
      if (cfg.max_steps > 0 && res.steps >= cfg.max_steps) {
        res.reason = HaltReason::StepLimit;
        break;
      }
      double t_stop = stops[next_stop];
      StepReport rep = stepper.advance(state, cfg.cfl, t_stop);
      ++res.steps;
      last_dt = rep.dt;

      bool updated = false;
      try {
        ProfileFeatures f = locate_features(state.u1, state.mesh);
        if (needs_update(f, state.mesh, th).update) {
          Mesh fresh = adaptive_mesh(f, cfg.n, cfg.m);
          state.u1 = interpolate_ip4(state.u1, state.mesh, fresh);
          state.w1 = interpolate_ip4(state.w1, state.mesh, fresh);
          state.mesh = fresh;
          stepper.refresh(state);
          th = effective_thresholds(cfg.thresholds, f, state.mesh);
          updated = true;
          ++res.mesh_updates;
          if (obs.on_mesh_update) obs.on_mesh_update(state);
        }
      } catch (const DegenerateProfile& e) {
        res.reason = HaltReason::MeshFailure;
        res.message = e.what();
        break;
      }

      bool at_stop = state.t >= t_stop;
      recorded_last = false;
      if (res.steps % cfg.diag_every == 0 || updated || state.t >= cfg.t_end) {
        emit(state, rep.dt, updated);
        recorded_last = true;
      }
      if (at_stop) {
        if (obs.on_checkpoint && t_stop != cfg.t_end) obs.on_checkpoint(state);
        ++next_stop;
      } else if (cfg.checkpoint_every > 0 && res.steps % cfg.checkpoint_every == 0 &&
                 obs.on_checkpoint) {
        obs.on_checkpoint(state);
      }
    }
  } catch (const NonFinite& e) {
    res.reason = HaltReason::NonFinite;
    res.message = e.what();
  } catch (const SolveFailure& e) {
    res.reason = HaltReason::NonFinite;
    res.message = e.what();
  }
  if (!recorded_last && res.reason != HaltReason::NonFinite) emit(state, last_dt, false);
  if (obs.on_checkpoint && res.reason != HaltReason::NonFinite) obs.on_checkpoint(state);
  res.rlpf_applications = stepper.rlpf_applications();
  res.poisson_assemblies = stepper.poisson().assembly_count();
  res.state = std::move(state);
  return res;
}

}  // namespace axisym
