#pragma once

#include <numbers>
#include <utility>

#include "axisym/grid.hpp"
#include "axisym/meshmap.hpp"

namespace axisym {

struct InitialDataParams {
  double m_u1 = 7.6e3, m_u2 = 50.0, m_w1 = 8.6e7, m_w2 = 50.0;
  double a_z1 = 1.2e-4 * std::numbers::pi, a_z2 = 2.5e-4 * std::numbers::pi;
  double a_r1 = 9e-4, a_r2 = 5e-3;
  double b_z1 = 1e-4 * std::numbers::pi, b_z2 = 1.5e-4 * std::numbers::pi;
  double b_r1 = 9e-4, b_r2 = 3e-3;

  bool operator==(const InitialDataParams&) const = default;
};

// Logistic step of width b centered at a, saturating cleanly for large |x-a|/b.
double soft_cutoff(double x, double a, double b);

// Unnormalized profiles u1^(1), omega1^(1) and the smooth corner factor g.
double u1_profile(const InitialDataParams& p, double r, double z);
double w1_profile(const InitialDataParams& p, double r, double z);
double corner_factor(const InitialDataParams& p, double r, double z);

// Sup norms of the unnormalized profiles over the quarter domain.
struct ProfileNorms {
  double u1 = 0.0, w1 = 0.0;
};
ProfileNorms profile_norms(const InitialDataParams& p);

// Initial u1, omega1 at a point.
double initial_u1(const InitialDataParams& p, double r, double z);
double initial_w1(const InitialDataParams& p, double r, double z);

// Nodal (u1, omega1), even in r and odd in z.
std::pair<FieldGrid, FieldGrid> initial_fields(const InitialDataParams& p,
                                               const Mesh& mesh);

// R, Z, R_r of the initial u1 from dense sampling of the closed form.
ProfileFeatures initial_features(const InitialDataParams& p);

// Viscosities and the derivatives the diffusion terms need. The "_over_r"
// entries are odd-in-r quantities divided by r, finite at the axis.
struct NuSample {
  double nr = 0, nz = 0;
  double nr_r = 0, nr_r_over_r = 0, nr_z = 0, nr_rr = 0, nr_rz = 0,
         nr_rz_over_r = 0;
  double nz_z = 0, nz_r = 0, nz_r_over_r = 0, nz_zz = 0, nz_rz_over_r = 0;
};

enum class Viscosity { Degenerate, Constant, Inviscid };

struct DiffusionSpec {
  Viscosity variant = Viscosity::Degenerate;
  double mu = 0.0;            // Constant variant
  double tdp_scale = 2.5e-2;  // Degenerate variant, time-dependent numerator

  // Space-dependent part only.
  NuSample space_part(double r, double z) const;
  // Time-dependent additive part; throws DivisionByZero on a zero norm.
  double time_part(double omega_theta_max) const;
};

NuSample nu_eval(const DiffusionSpec& spec, double r, double z,
                 double omega_theta_max);

// Gamma = r^2 u1.
FieldGrid circulation(const FieldGrid& u1, const Mesh& mesh);

}  // namespace axisym
