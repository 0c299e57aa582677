// Acceptance runner: `acceptance [id ...]` runs the listed criteria (default:
// the fast ones, 1 2 3 7) and prints one PASS/FAIL line per criterion.
// Long runs write their artifacts under ./acceptance_runs and reuse them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axisym/diagnostics.hpp"
#include "axisym/errors.hpp"
#include "axisym/fields.hpp"
#include "axisym/filters.hpp"
#include "axisym/fitting.hpp"
#include "axisym/io.hpp"
#include "axisym/poisson.hpp"
#include "axisym/runner.hpp"
#include "axisym/stepper.hpp"
#include "axisym/study.hpp"
#include "manufactured.hpp"
#include "support.hpp"

using namespace axisym;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const fs::path kRuns = "acceptance_runs";

bool in_band(double ratio) { return ratio >= 3.3 && ratio <= 4.8; }

// 1. Poisson manufactured solution.
void poisson_order(Outcome& o) {
  struct Family {
    const char* name;
    std::function<Mesh(int n, int m)> make;
  };
  Family fams[] = {{"uniform", uniform_mesh}, {"graded", mild_mesh}};
  for (const auto& f : fams) {
    double err[2];
    for (int k = 0; k < 2; ++k) {
      int m = 64 << k;
      Mesh mesh = f.make(2 * m, m);
      PoissonSolver solver;
      FieldGrid w = sample(mesh, poisson_rhs, Parity::Even, Parity::Odd);
      err[k] = max_error(solver.solve(w, mesh), mesh, Stream::psi);
    }
    double ratio = err[0] / err[1];
    o.detail << " " << f.name << " ratio " << ratio;
    o.require(in_band(ratio), std::string(f.name) + " ratio outside [3.3, 4.8]");
  }
}

// 2. Derivative and diffusion kernels against symbolic oracles.
void kernel_order(Outcome& o) {
  using Err = std::function<double(const Mesh&)>;
  auto psi_field = [](const Mesh& mesh) {
    return sample(mesh, Stream::psi, Parity::Even, Parity::Odd);
  };
  DiffusionSpec deg = degenerate();
  const double omax = 1e5;
  auto u_test = [](double r, double z) { return std::cos(kPi * r) * std::sin(2 * kPi * z); };
  auto fu_exact = [&](double r, double z) {
    NuSample v = nu_eval(deg, r, z, omax);
    double S = std::sin(2 * kPi * z), Cz = std::cos(2 * kPi * z);
    double u_r = -kPi * std::sin(kPi * r) * S, u_rr = -kPi * kPi * std::cos(kPi * r) * S;
    double u_r_over_r = r > 0 ? u_r / r : u_rr;
    double u_z = 2 * kPi * std::cos(kPi * r) * Cz, u_zz = -4 * kPi * kPi * u_test(r, z);
    return v.nr * (u_rr + 3 * u_r_over_r) + v.nz * u_zz + v.nr_r_over_r * u_test(r, z) +
           v.nr_r * u_r + v.nz_z * u_z;
  };
  std::vector<std::pair<const char*, Err>> cases = {
      {"ddr", [&](const Mesh& m) { return max_error(ddr(psi_field(m), m), m, [](double r, double z) { return -2 * r * Stream::S(z); }); }},
      {"ddz", [&](const Mesh& m) { return max_error(ddz(psi_field(m), m), m, [](double r, double z) { return 2 * kPi * (1 - r * r) * Stream::C(z); }); }},
      {"d2dr2", [&](const Mesh& m) { return max_error(d2dr2(psi_field(m), m), m, [](double, double z) { return -2 * Stream::S(z); }); }},
      {"d2dz2", [&](const Mesh& m) { return max_error(d2dz2(psi_field(m), m), m, [](double r, double z) { return -4 * kPi * kPi * Stream::psi(r, z); }); }},
      {"velocity", [&](const Mesh& m) {
         Velocity v = velocity_from_stream(psi_field(m), m);
         return std::max(max_error(v.ur, m, Stream::ur), max_error(v.uz, m, Stream::uz));
       }},
      {"diffusion_u1", [&](const Mesh& m) {
         FieldGrid u = sample(m, u_test, Parity::Even, Parity::Odd);
         return max_error(diffusion_u1(u, nu_fields(deg, m, omax), m), m, fu_exact);
       }},
      {"diffusion_w1", [&](const Mesh& m) {
         FieldGrid w = sample(m, Vort::w, Parity::Even, Parity::Odd);
         Velocity v = velocity_from_stream(psi_field(m), m);
         return max_error(diffusion_w1(w, v, nu_fields(deg, m, omax), m), m,
                          [&](double r, double z) { return f_w1_oracle(deg, r, z, omax); }, 1);
       }},
  };
  for (const auto& [name, err] : cases) {
    double e0 = err(graded_r_mesh(32, 32)), e1 = err(graded_r_mesh(64, 64));
    double ratio = e0 / e1;
    o.detail << " " << name << " " << ratio;
    o.require(in_band(ratio), std::string(name) + " ratio outside [3.3, 4.8]");
  }
}

TimeSeries planted(double c, int count, double noise, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  TimeSeries s;
  for (int k = 0; k < count; ++k) {
    double t = 1.6e-4 + 1.5e-5 * k / (count - 1);
    double v = std::pow(1.791e-4 - t, -c);
    if (noise > 0) v *= 1 + noise * nd(gen);
    s.t.push_back(t);
    s.v.push_back(v);
  }
  return s;
}

// 3. Fitting on synthetic data.
void fitting(Outcome& o) {
  for (double c : {0.5, 1.0, 1.5, 2.0}) {
    FitResult r = fit_pipeline(planted(c, 80, 0.0, 0)).model2;
    o.detail << " c=" << c << ": " << r.c << " 1-R2=" << 1 - r.r2;
    o.require(std::abs(r.c - c) <= 2e-3, "noiseless c for " + std::to_string(c));
    o.require(r.r2 > 1 - 1e-8, "noiseless R2 for " + std::to_string(c));
    double worst = 0;
    for (unsigned seed = 1; seed <= 20; ++seed)
      worst = std::max(worst, std::abs(fit_pipeline(planted(c, 80, 0.01, seed)).model2.c - c));
    o.detail << " noisy dev " << worst << ";";
    o.require(worst <= 0.1, "noisy c for " + std::to_string(c));
  }
}

// 4. Short-horizon convergence order of u1.
void pde_convergence(Outcome& o) {
  StudySpec spec;
  spec.p = {2, 3, 4};
  spec.base_n = 256;
  spec.base_m = 128;
  spec.times = {1e-5};
  spec.reference = StudyReference::Finest;
  RunConfig base;
  base.case_id = 1;
  StudyTable t = cmd_study(spec, base, kRuns / "c4");
  const StudyRow& last = t.rows.back();
  o.detail << " e(512x256) " << t.rows.front().e_u1 << " e(768x384) " << last.e_u1
           << " beta " << last.beta_u1;
  o.require(last.beta_u1 >= 2.0, "order below 2");
}

RunResult long_run(const RunConfig& cfg, const std::string& name) {
  return cmd_run(cfg, kRuns / name);
}

// 5. Growth on the (512, 256) mesh.
void growth(Outcome& o) {
  RunConfig cfg;
  cfg.case_id = 1;
  cfg.n = 512;
  cfg.m = 256;
  cfg.t_end = 1.6e-4;
  RunResult r = long_run(cfg, "c5");
  const auto& first = r.records.front();
  const auto& last = r.records.back();
  double au = last.u1_max / first.u1_max, aw = last.omega_max / first.omega_max;
  o.detail << " halt " << to_string(r.reason) << " t " << last.t << " u1 x" << au
           << " omega x" << aw;
  o.require(r.reason == HaltReason::Completed, "run did not complete");
  o.require(au >= 30.0, "u1 amplification below 30");
  o.require(aw >= 500.0, "vorticity amplification below 500");
}

// 6. Constant viscosity stays bounded and decays late.
void viscous_contrast(Outcome& o) {
  RunConfig cfg;
  cfg.case_id = 2;
  cfg.mu = 1e-5;
  cfg.n = 256;
  cfg.m = 128;
  cfg.t_end = 2.5e-4;
  RunResult r = long_run(cfg, "c6");
  double w0 = r.records.front().omega_max;
  double lo = w0, hi = w0;
  bool decreasing = true;
  double prev = -1;
  for (const auto& rec : r.records) {
    lo = std::min(lo, rec.omega_max);
    hi = std::max(hi, rec.omega_max);
    if (rec.t >= 0.8 * cfg.t_end) {
      if (prev >= 0 && rec.omega_max > prev) decreasing = false;
      prev = rec.omega_max;
    }
  }
  o.detail << " halt " << to_string(r.reason) << " omega range [" << lo / w0 << ", "
           << hi / w0 << "] x initial, final " << r.records.back().omega_max / w0;
  o.require(r.reason == HaltReason::Completed, "run did not complete");
  o.require(hi <= 5 * w0 && lo >= w0 / 5, "vorticity left the factor-5 band");
  o.require(decreasing, "vorticity not decreasing over the final 20%");
}

// 7. Property suite.
void properties(Outcome& o) {
  // Stepping invariants from the seed data, cases 1 and 2.
  for (int c : {1, 2}) {
    RunConfig cfg;
    cfg.case_id = c;
    cfg.n = 128;
    cfg.m = 64;
    Stepper st(cfg.diffusion(), FilterPlan{});
    SolutionState s = initial_state(cfg, st.poisson());
    auto energy = [&] { return kinetic_energy(s.u1, velocity_from_stream(s.psi, s.mesh), s.mesh); };
    auto gamma = [&] { return circulation(s.u1, s.mesh).sup_norm(); };
    double e = energy(), g = gamma();
    bool e_ok = true, g_ok = true, parity_ok = true;
    for (int k = 0; k < 20; ++k) {
      st.advance(s, cfg.cfl, 1.0);
      double e1 = energy(), g1 = gamma();
      e_ok = e_ok && e1 <= e * (1 + 1e-6);
      g_ok = g_ok && g1 <= g * (1 + 1e-6);
      e = e1;
      g = g1;
      for (int i = 0; i <= cfg.n; ++i)
        parity_ok = parity_ok && s.u1(i, 0) == 0 && s.u1(i, cfg.m) == 0 && s.w1(i, 0) == 0 &&
                    s.w1(i, cfg.m) == 0;
    }
    o.require(e_ok, "energy increased in case " + std::to_string(c));
    o.require(g_ok, "circulation maximum increased in case " + std::to_string(c));
    o.require(parity_ok, "odd rows lost in case " + std::to_string(c));
  }

  // Filters.
  FieldGrid k(32, 16, Parity::Even, Parity::Even, 2.5);
  double cdev = 0;
  FieldGrid kf = lpf(k, StrengthFn::lshape());
  for (double x : kf.values()) cdev = std::max(cdev, std::abs(x - 2.5));
  o.require(cdev < 1e-13, "lpf changed a constant (" + std::to_string(cdev) + ")");
  FieldGrid nyq(32, 16, Parity::Even, Parity::Even);
  for (int i = 0; i <= 32; ++i)
    for (int j = 0; j <= 16; ++j) nyq(i, j) = i % 2 ? -1.0 : 1.0;
  FieldGrid nf = lpf(nyq, StrengthFn::uniform(1.0));
  double nmax = 0;
  for (int i = 1; i < 32; ++i)
    for (int j = 0; j <= 16; ++j) nmax = std::max(nmax, std::abs(nf(i, j)));
  o.require(nmax == 0.0, "lpf left Nyquist content");

  // IP4 reproduces bicubics in the source computational coordinates.
  auto cubic = [](double x, double y) { return 1 + x - 2 * x * x * x + y * y * y * x * x; };
  Mesh a = mild_mesh(40, 24), b = graded_r_mesh(29, 17);
  FieldGrid src(40, 24);
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 24; ++j) src(i, j) = cubic(i / 40.0, j / 24.0);
  double ip = max_error(interpolate_ip4(src, a, b), b, [&](double r, double z) {
    return cubic(a.r.inverse(r), a.z.inverse(z));
  });
  o.require(ip < 1e-11, "IP4 not exact on cubics");

  // Mesh maps: P(1) = L and positive density.
  bool mesh_ok = true;
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    DensityCoeffs cf{u(gen), 0.1 + u(gen), 3 * u(gen), 3 * u(gen), 60};
    double L = 0.1 + u(gen);
    MeshMap map = MeshMap::build(PhaseKnots::r_default(), cf, L, 64);
    mesh_ok = mesh_ok && std::abs(map.map(1.0) - L) <= 1e-12 * L;
    for (int q = 0; q <= 200; ++q) mesh_ok = mesh_ok && map.density(q / 200.0) > 0;
  }
  o.require(mesh_ok, "mesh map endpoint or density");

  // Model 2 invariances.
  TimeSeries s = planted(1.2, 40, 0.005, 3);
  TimeSeries scaled = s, shifted = s;
  for (double& v : scaled.v) v *= 7.5e3;
  for (double& t : shifted.t) t += 2e-5;
  FitResult f0 = fit_model2(s, FitWindow{}, 1.1);
  o.require(fit_model2(scaled, FitWindow{}, 1.1).c == f0.c, "scale invariance");
  FitResult fs_ = fit_model2(shifted, FitWindow{1.6e-4 + 2e-5, 1.75e-4 + 2e-5}, 1.1);
  o.require(fs_.c == f0.c && std::abs(fs_.T - f0.T - 2e-5) <= 1e-12, "shift covariance");

  // Scaling relations.
  o.require(check_scaling_relations(exponents_from_tuple(1, 2, 0, 1, 0.5)).all_pass(),
            "scaling tuple (1, 2, 0, 1, 0.5)");
  bool perturbed = true;
  for (int which = 0; which < 5; ++which)
    for (double d : {-0.3, 0.3}) {
      double e[5] = {1, 2, 0, 1, 0.5};
      e[which] += d;
      perturbed = perturbed &&
                  !check_scaling_relations(exponents_from_tuple(e[0], e[1], e[2], e[3], e[4]))
                       .all_pass();
    }
  o.require(perturbed, "perturbed tuples passed");
  o.detail << " energy, circulation, parity, lpf, ip4 (" << ip << "), mesh, model 2, scaling";
}

const char* kNames[] = {"", "Poisson manufactured order", "kernel manufactured order",
                        "synthetic fitting", "short-horizon PDE order", "growth at 512x256",
                        "constant-viscosity contrast", "property suite"};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int k = 1; k < argc; ++k) ids.push_back(std::atoi(argv[k]));
  if (ids.empty()) ids = {1, 2, 3, 7};
  std::function<void(Outcome&)> run[] = {nullptr,     poisson_order, kernel_order,     fitting,
                                          pde_convergence, growth, viscous_contrast, properties};
  bool all = true;
  for (int id : ids) {
    if (id < 1 || id > 7) {
      std::printf("criterion %d: FAIL unknown criterion\n", id);
      all = false;
      continue;
    }
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      run[id](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d (%s): %s in %.1f s:%s\n", id, kNames[id], o.pass ? "PASS" : "FAIL",
                secs, o.detail.str().c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
