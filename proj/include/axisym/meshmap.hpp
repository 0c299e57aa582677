#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "axisym/grid.hpp"

namespace axisym {

// Breakpoints of the three mesh phases in the computational coordinate.
struct PhaseKnots {
  double s1 = 0.1, s2 = 0.5, s3 = 0.85;

  void validate() const;
  static PhaseKnots r_default() { return {0.1, 0.5, 0.85}; }
  static PhaseKnots z_default() { return {0.0, 0.3, 0.85}; }
};

struct DensityCoeffs {
  double a0 = 0.0, a1 = 1.0, a2 = 0.0, a3 = 0.0;
  int b = 60;

  void validate() const;
};

// Physical coordinates where the phase breakpoints should land.
struct MeshTargets {
  double y1 = 0.0, y2 = 0.0, y3 = 0.0, L = 1.0;
};

enum class Axis { R, Z };

// Front location (R, Z) of the u1 maximum and R_r, the radius of the
// steepest rise of u1 in r on the row of the maximum.
struct ProfileFeatures {
  double R = 0.0, Z = 0.0, Rr = 0.0;
};

// q_b(x) = (1+x)^b / (1+(1+x)^b). Throws DomainError for |x| > 1.
double eval_q(double x, int b);

// Closed-form density magnitudes putting the knots at the targets for an
// ideal (step) density. Throws NonPositiveDensity if a coefficient is < 0.
DensityCoeffs solve_phase_coeffs(const PhaseKnots& knots,
                                 const MeshTargets& targets, int b = 60);

// Phase targets from the current profile features.
MeshTargets derive_targets(const ProfileFeatures& f, Axis axis,
                           const PhaseKnots& knots);

// Monotone map x in [0,1] -> [0,L] whose derivative is the rescaled density
//   p(s) = a1 + a2 q(s-s2) + a3 q(s-s3) + a0 (q(s1-s) + q(s1+s) - 1).
class MeshMap {
 public:
  MeshMap() = default;

  static MeshMap build(const PhaseKnots& knots, const DensityCoeffs& coeffs,
                       double L, int resolution);
  static MeshMap uniform(double L, int resolution);

  // Unscaled density and its derivative.
  double density(double s) const;
  double density_derivative(double s) const;

  // r(x), r_x(x), r_xx(x).
  double map(double x) const;
  double jacobian(double x) const { return rescale_ * density(x); }
  double jacobian_derivative(double x) const {
    return rescale_ * density_derivative(x);
  }
  double inverse(double y) const;

  int resolution() const { return n_; }
  double h() const { return 1.0 / n_; }
  double extent() const { return L_; }
  double rescale() const { return rescale_; }
  const PhaseKnots& knots() const { return knots_; }
  const DensityCoeffs& coeffs() const { return coeffs_; }
  std::uint64_t id() const { return id_; }

  double node(int i) const { return nodes_[i]; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& jac_nodes() const { return jac_; }
  const std::vector<double>& jac2_nodes() const { return jac2_; }

  // Number of nodes with lo <= x_i <= hi.
  int count_nodes_in(double lo, double hi) const;

  void dump(std::ostream& os) const;
  static MeshMap parse(std::istream& is);

 private:
  double raw_integral(double x) const;

  PhaseKnots knots_;
  DensityCoeffs coeffs_;
  double L_ = 1.0;
  double rescale_ = 1.0;
  int n_ = 0;
  std::uint64_t id_ = 0;
  std::vector<double> cell_lo_;  // quadrature cell starts, plus 1.0
  std::vector<double> cum_;      // raw integral at each cell start
  std::vector<double> nodes_, jac_, jac2_;
};

struct Mesh {
  MeshMap r;  // rho -> r on [0,1]
  MeshMap z;  // eta -> z on [0,1/2]

  int n() const { return r.resolution(); }
  int m() const { return z.resolution(); }
};

Mesh uniform_mesh(int n, int m);
Mesh adaptive_mesh(const ProfileFeatures& f, int n, int m,
                   const PhaseKnots& kr = PhaseKnots::r_default(),
                   const PhaseKnots& kz = PhaseKnots::z_default(), int b = 60);

void dump_mesh(std::ostream& os, const Mesh& mesh);
Mesh parse_mesh(std::istream& is);

struct UpdateThresholds {
  int n_min_r = 16;
  int n_min_z = 16;
  std::array<bool, 4> enabled{true, true, true, true};  // per criterion
};

struct UpdateDecision {
  bool update = false;
  int reason = 0;  // 1..4 for the criteria below, 0 when no update
};

// Criteria: (1) [Rr-d, R+d] leaves [r(s1), r(s2)] with d = R-Rr;
// (2) 1.5 Z passes z(s2); (3) fewer than n_min_r nodes in [Rr, R];
// (4) fewer than n_min_z nodes in [0, Z].
UpdateDecision needs_update(const ProfileFeatures& f, const Mesh& mesh,
                            const UpdateThresholds& th);

// Piecewise-cubic tensor interpolation from src nodes to dst nodes.
// Symmetry ghosts are used where the field parity is known; otherwise the
// stencil is shifted to stay inside the grid.
FieldGrid interpolate_ip4(const FieldGrid& f, const Mesh& src, const Mesh& dst);

// Same scheme evaluated at arbitrary physical points.
class PointInterpolator {
 public:
  PointInterpolator(const FieldGrid& f, const Mesh& mesh)
      : f_(f), mesh_(mesh) {}
  // Throws OutOfDomain outside [0,1] x [0,1/2].
  double operator()(double r, double z) const;

 private:
  const FieldGrid& f_;
  const Mesh& mesh_;
};

}  // namespace axisym
