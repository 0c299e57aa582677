#pragma once

#include <array>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "axisym/diagnostics.hpp"
#include "axisym/fields.hpp"
#include "axisym/meshmap.hpp"
#include "axisym/physics.hpp"
#include "axisym/poisson.hpp"

namespace axisym {

struct SolutionState {
  double t = 0.0;
  Mesh mesh;
  FieldGrid u1, w1, psi;
};

// Case 1: degenerate viscosity; 2: constant mu; 3: inviscid;
// 4: case 1 viscosity plus re-meshed filtering of psi_r, psi_z.
struct RunConfig {
  int case_id = 1;
  double mu = 1e-5;
  int rlpf_k = 0;
  int rlpf_n = 0, rlpf_m = 0;  // coarse filter mesh; 0 means (m, m)
  int n = 256, m = 128;
  double t_end = 1e-5;
  double cfl = 0.1;
  int diag_every = 20;
  int checkpoint_every = 0;           // steps; 0 disables
  std::vector<double> output_times;   // steps land exactly on these
  UpdateThresholds thresholds;
  long max_steps = 0;                 // 0 means unlimited
  bool filters = true;
  InitialDataParams init;

  DiffusionSpec diffusion() const;
  void validate() const;
};

struct FilterPlan {
  bool lpf = true;
  int rlpf_k = 0;
  int rlpf_n = 0, rlpf_m = 0;
};

enum class CflBranch { Convective, Diffusive };

struct DtChoice {
  double dt = 0.0;
  double dt_convective = 0.0, dt_diffusive = 0.0;
  CflBranch branch = CflBranch::Convective;
};

DtChoice compute_dt(const Velocity& vel, const NuFields& nu, const Mesh& mesh,
                    double cfl);

struct Tendencies {
  FieldGrid du1, dw1;
  Velocity vel;
};

struct StepReport {
  double t = 0.0, dt = 0.0;
  CflBranch branch = CflBranch::Convective;
  bool mesh_updated = false;
  double growth = 0.0;  // max relative one-step change of the u1, omega1 sup norms
};

// Extra tendency added after the physical terms (tests and manufactured runs).
using Forcing = std::function<void(double t, const SolutionState& s, FieldGrid& du1,
                                   FieldGrid& dw1)>;

class Stepper {
 public:
  Stepper(DiffusionSpec spec, FilterPlan plan) : spec_(spec), plan_(plan) {}

  void set_forcing(Forcing f) { forcing_ = std::move(f); }

  Tendencies rhs(const SolutionState& s, double omega_theta_max);
  NuFields nu(const Mesh& mesh, double omega_theta_max);

  // Re-solves psi from omega1 and applies the wall conditions.
  void refresh(SolutionState& s);

  // Heun step of size dt.
  void step_rk2(SolutionState& s, double dt);
  // CFL-limited Heun step that does not pass t_stop.
  StepReport advance(SolutionState& s, double cfl, double t_stop);

  PoissonSolver& poisson() { return poisson_; }
  int rlpf_applications() const { return rlpf_count_; }

 private:
  void heun(SolutionState& s, const Tendencies& k1, double dt, double omax);

  DiffusionSpec spec_;
  FilterPlan plan_;
  PoissonSolver poisson_;
  Forcing forcing_;
  std::uint64_t nu_r_id_ = 0, nu_z_id_ = 0;
  NuFields nu_space_;
  int rlpf_count_ = 0;
};

double omega_theta_max(const FieldGrid& w1, const Mesh& mesh);

SolutionState initial_state(const RunConfig& cfg, PoissonSolver& poisson);

enum class HaltReason { Completed, NonFinite, MeshFailure, StepLimit };
std::string to_string(HaltReason r);

struct RunObserver {
  std::function<void(const DiagnosticsRecord&)> on_record;
  // Fired at output times, on the checkpoint cadence and at the end.
  std::function<void(const SolutionState&)> on_checkpoint;
  std::function<void(const SolutionState&)> on_mesh_update;
};

struct RunResult {
  HaltReason reason = HaltReason::Completed;
  std::string message;
  SolutionState state;
  std::vector<DiagnosticsRecord> records;
  long steps = 0;
  int mesh_updates = 0;
  int rlpf_applications = 0;
  int poisson_assemblies = 0;
};

RunResult run(const RunConfig& cfg, const RunObserver& obs = {});
RunResult run_from(const RunConfig& cfg, SolutionState state,
                   const RunObserver& obs = {});

}  // namespace axisym
