#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <memory>

#include "axisym/grid.hpp"
#include "axisym/meshmap.hpp"

namespace axisym {

// Cardinal B-spline of order k (degree k-1) supported on [0, k].
double bspline_eval(int k, double x);
double bspline_deriv(int k, double x);

// Symmetrized uniform B-splines: B_i(rho) even at rho = 0 for
// i in [0, n+k/2-1]; B_j(eta) odd at eta = 0 and eta = 1 for j in [1, m-1].
// Radial trial functions carry the weight w(rho) = 1 - rho^2.
class BSplineBasis {
 public:
  BSplineBasis(int k, int n, int m);

  int order() const { return k_; }
  int count_r() const { return n_ + k_ / 2; }
  int count_z() const { return m_ - 1; }

  double radial(int i, double rho) const;
  double radial_deriv(int i, double rho) const;
  double axial(int j, double eta) const;
  double axial_deriv(int j, double eta) const;

  static double weight(double rho) { return 1.0 - rho * rho; }
  static double weight_deriv(double rho) { return -2.0 * rho; }

  // Weighted radial function w B_i and its derivative.
  double trial_r(int i, double rho) const { return weight(rho) * radial(i, rho); }
  double trial_r_deriv(int i, double rho) const {
    return weight_deriv(rho) * radial(i, rho) + weight(rho) * radial_deriv(i, rho);
  }

 private:
  int k_, n_, m_;
};

using SparseMat = Eigen::SparseMatrix<double>;
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A = Kr (x) Mz + Mr (x) Kz with unknown (i, j) at i * count_z + (j - 1).
struct GalerkinSystem {
  int k = 2, n = 0, m = 0;
  std::uint64_t r_id = 0, z_id = 0;
  SparseMat Kr, Mr, Kz, Mz;  // 1-D stiffness and mass factors
  SparseMat Gr, Gz;          // load: trial functions against nodal hats
  SparseMat Er, Ez;          // trial functions at the nodes
  SparseMat A;
  std::shared_ptr<Eigen::SimplicialLLT<SparseMat, Eigen::Lower, Eigen::AMDOrdering<int>>>
      factor;
};

// Builds and factors A. Throws AssemblyFailure if A is not SPD.
GalerkinSystem assemble(const Mesh& mesh, int k = 2, int quad_points = 6);

// Load vector f(phi_ij) from nodal omega (bilinear between nodes).
Eigen::VectorXd load_vector(const GalerkinSystem& sys, const FieldGrid& omega);
Eigen::VectorXd solve_coefficients(const GalerkinSystem& sys,
                                   const Eigen::VectorXd& load);
FieldGrid evaluate_nodes(const GalerkinSystem& sys, const Eigen::VectorXd& coeffs);

FieldGrid solve(const GalerkinSystem& sys, const FieldGrid& omega);

// Keeps one factored system and rebuilds it only when the mesh changes.
class PoissonSolver {
 public:
  explicit PoissonSolver(int k = 2) : k_(k) {}

  FieldGrid solve(const FieldGrid& omega, const Mesh& mesh);
  const GalerkinSystem& system(const Mesh& mesh);
  int assembly_count() const { return assemblies_; }

 private:
  int k_;
  int assemblies_ = 0;
  std::unique_ptr<GalerkinSystem> sys_;
};

}  // namespace axisym
