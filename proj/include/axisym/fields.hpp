#pragma once

#include "axisym/grid.hpp"
#include "axisym/meshmap.hpp"
#include "axisym/physics.hpp"

namespace axisym {

// Second-order centered derivatives in mapped coordinates. Ghost values come
// from the field parity, or cubic extrapolation where none is declared and
// always at rho = 1.
FieldGrid ddr(const FieldGrid& f, const Mesh& mesh);
FieldGrid ddz(const FieldGrid& f, const Mesh& mesh);
FieldGrid d2dr2(const FieldGrid& f, const Mesh& mesh);
FieldGrid d2dz2(const FieldGrid& f, const Mesh& mesh);

// Derivatives in the computational coordinates (no metric factors).
FieldGrid d_rho(const FieldGrid& f);
FieldGrid d_eta(const FieldGrid& f);

struct Velocity {
  FieldGrid ur;        // -r psi_z
  FieldGrid uz;        // 2 psi + r psi_r
  FieldGrid ur_over_r; // -psi_z
};

Velocity velocity_from_stream(const FieldGrid& psi, const Mesh& mesh);
// Uses already computed (possibly filtered) psi_r and psi_z.
Velocity velocity_from_derivatives(const FieldGrid& psi, const FieldGrid& psi_r,
                                   const FieldGrid& psi_z, const Mesh& mesh);

// Viscosity fields sampled on the nodes.
struct NuFields {
  bool zero = true;
  FieldGrid nr, nz, nr_r, nr_r_over_r, nr_z, nr_rr, nr_rz, nr_rz_over_r;
  FieldGrid nz_z, nz_r_over_r, nz_zz, nz_rz_over_r;
};

// Space-dependent part only; add_time_part adds the constant term.
NuFields nu_fields_space(const DiffusionSpec& spec, const Mesh& mesh);
void add_time_part(NuFields& nu, double tdp);
NuFields nu_fields(const DiffusionSpec& spec, const Mesh& mesh,
                   double omega_theta_max);

FieldGrid diffusion_u1(const FieldGrid& u1, const NuFields& nu, const Mesh& mesh);
FieldGrid diffusion_w1(const FieldGrid& w1, const Velocity& vel,
                       const NuFields& nu, const Mesh& mesh);

// No-slip wall row: u1 = 0 and omega1 = -psi_rr at r = 1.
void enforce_boundary(FieldGrid& u1, FieldGrid& w1, const FieldGrid& psi,
                      const Mesh& mesh);

// Second radial derivative of psi on the wall row from one-sided differences.
double wall_psi_rr(const FieldGrid& psi, const Mesh& mesh, int j);

}  // namespace axisym
