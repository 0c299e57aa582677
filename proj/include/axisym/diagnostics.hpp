#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "axisym/fields.hpp"
#include "axisym/grid.hpp"
#include "axisym/meshmap.hpp"

namespace axisym {

struct MaxLocation {
  double R = 0.0, Z = 0.0, value = 0.0;
  int i = 0, j = 0;  // nodal argmax
};

// Nodal argmax (first in (i, j) order on ties), refined per coordinate by a
// three-point parabola in the computational coordinate.
MaxLocation max_location(const FieldGrid& u1, const Mesh& mesh);

// R, Z from max_location and R_r from the steepest rise of u1 along the row
// of the maximum, refined the same way.
ProfileFeatures locate_features(const FieldGrid& u1, const Mesh& mesh);

struct VorticityVector {
  FieldGrid theta, r, z;  // r omega1, -r u1_z, 2 u1 + r u1_r
  double theta_max = 0, r_max = 0, z_max = 0, magnitude_max = 0;
};

VorticityVector vorticity_vector(const FieldGrid& u1, const FieldGrid& w1,
                                 const Mesh& mesh);

// 1/2 of the integral of |u|^2 r over the quarter domain (trapezoid rule).
double kinetic_energy(const FieldGrid& u1, const Velocity& vel, const Mesh& mesh);

struct MeshEffectiveness {
  double rho = 0.0, eta = 0.0;
};
// Throws ZeroField when v vanishes identically.
MeshEffectiveness mesh_effectiveness(const FieldGrid& v, const Mesh& mesh);

struct Window {
  double r0 = 0, r1 = 1, z0 = 0, z1 = 0.5;
};
// RMS over window nodes of |grad u x grad w| / (|grad u||grad w| + 1e-300).
double level_set_parallelism(const FieldGrid& u1, const FieldGrid& w1,
                             const Mesh& mesh, const Window& window);

struct RasterBox {
  double xi0 = -2, xi1 = 5, zeta0 = 0, zeta1 = 3.5;
  int nxi = 71, nzeta = 36;
};
struct Raster {
  std::vector<double> xi, zeta;
  std::vector<double> values;  // row-major in xi
};
// Samples f(Z xi + R, Z zeta); throws OutOfDomain when the box leaves the domain.
Raster rescaled_profile(const FieldGrid& f, const Mesh& mesh, double R, double Z,
                        const RasterBox& box);
void write_raster_csv(std::ostream& os, const Raster& raster);

using Vec3 = std::array<double, 3>;
// Cartesian velocity at a Cartesian point, or nullopt outside the domain.
using VelocityFn = std::function<std::optional<Vec3>(const Vec3&)>;

struct Streamline {
  std::vector<Vec3> points;
  bool left_domain = false;
};

Streamline streamline(const VelocityFn& u, const Vec3& start, double s_max, double ds);

// Velocity lifted from (u^r, u^theta = r u1, u^z) on the mesh; the domain is
// r <= 1, 0 <= z <= 1/2.
VelocityFn grid_velocity(const FieldGrid& ur, const FieldGrid& u1,
                         const FieldGrid& uz, const Mesh& mesh);

// Starting point from cylindrical coordinates.
Vec3 cylindrical_point(double r, double theta, double z);

struct DiagnosticsRecord {
  double t = 0;
  double u1_max = 0, w1_max = 0;
  double omega_theta_max = 0, omega_r_max = 0, omega_z_max = 0, omega_max = 0;
  double psi_r_max = 0, psi_z_max = 0, u1_r_max = 0, u1_z_max = 0;
  double R = 0, Z = 0;
  double energy = 0;
  double alignment = 0;    // psi_z / u1 at the u1 maximum
  double circulation = 0;  // r^2 u1 at the u1 maximum
  double me_rho_u1 = 0, me_eta_u1 = 0, me_rho_w1 = 0, me_eta_w1 = 0;
  double dt = 0;
  bool mesh_updated = false;
};

DiagnosticsRecord record_diagnostics(double t, const FieldGrid& u1,
                                     const FieldGrid& w1, const FieldGrid& psi,
                                     const Mesh& mesh);

std::string csv_header();
std::string csv_row(const DiagnosticsRecord& rec);
std::vector<std::string> csv_columns();

}  // namespace axisym
