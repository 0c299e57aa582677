#include "axisym/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "axisym/errors.hpp"
#include "quadrature.hpp"

namespace axisym {

double bspline_eval(int k, double x) {
  if (k < 1) throw DomainError("B-spline order must be >= 1");
  if (x < 0.0 || x >= k) return 0.0;
  if (k == 1) return 1.0;
  return (x * bspline_eval(k - 1, x) + (k - x) * bspline_eval(k - 1, x - 1.0)) /
         (k - 1);
}

double bspline_deriv(int k, double x) {
  if (k < 2) return 0.0;
  return bspline_eval(k - 1, x) - bspline_eval(k - 1, x - 1.0);
}

BSplineBasis::BSplineBasis(int k, int n, int m) : k_(k), n_(n), m_(m) {
  if (k < 2 || k % 2 != 0) throw DomainError("B-spline order must be even");
  if (n < k || m < 2) throw DomainError("grid too coarse for the basis");
}

double BSplineBasis::radial(int i, double rho) const {
  double x = rho * n_, c = 0.5 * k_;
  double v = bspline_eval(k_, x - i + c) + bspline_eval(k_, -x - i + c);
  return i == 0 ? 0.5 * v : v;
}

double BSplineBasis::radial_deriv(int i, double rho) const {
  double x = rho * n_, c = 0.5 * k_;
  double v = (bspline_deriv(k_, x - i + c) - bspline_deriv(k_, -x - i + c)) * n_;
  return i == 0 ? 0.5 * v : v;
}

double BSplineBasis::axial(int j, double eta) const {
  double y = eta * m_, c = 0.5 * k_;
  return bspline_eval(k_, y - j + c) - bspline_eval(k_, -y - j + c) -
         bspline_eval(k_, 2.0 * m_ - y - j + c);
}

double BSplineBasis::axial_deriv(int j, double eta) const {
  double y = eta * m_, c = 0.5 * k_;
  return (bspline_deriv(k_, y - j + c) + bspline_deriv(k_, -y - j + c) +
          bspline_deriv(k_, 2.0 * m_ - y - j + c)) *
         m_;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Basis indices in [first, last] that may be nonzero on cell c of `cells`.
std::vector<int> candidates(int c, int k, int first, int last, int cells) {
  std::vector<int> out;
  auto add = [&](int lo, int hi) {
    for (int i = std::max(lo, first); i <= std::min(hi, last); ++i) out.push_back(i);
  };
  add(c - k, c + k);
  if (c < k) add(first, first + k);
  if (c >= cells - k) add(last - k, last);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct QuadPoint {
  double x, w;  // computational coordinate and weight (incl. cell half-width)
  int cell;
};

std::vector<QuadPoint> cell_rule(int cells) {
  std::vector<QuadPoint> q;
  double h = 1.0 / cells;
  for (int c = 0; c < cells; ++c)
    for (int g = 0; g < detail::kGaussPoints; ++g)
      q.push_back({(c + 0.5 + 0.5 * detail::kGaussX[g]) * h,
                   0.5 * h * detail::kGaussW[g], c});
  return q;
}

// Nodal P1 hat at node a on [0, 1] with `cells` uniform cells.
double hat(int a, double x, int cells) {
  double t = 1.0 - std::abs(x * cells - a);
  return t > 0.0 ? t : 0.0;
}

SparseMat from_triplets(int rows, int cols, const Triplets& t) {
  SparseMat s(rows, cols);
  s.setFromTriplets(t.begin(), t.end());
  s.makeCompressed();
  return s;
}

}  // namespace

GalerkinSystem assemble(const Mesh& mesh, int k, int quad_points) {
  if (quad_points != detail::kGaussPoints)
    throw DomainError("only the 6-point Gauss-Legendre rule is available");
  int n = mesh.n(), m = mesh.m();
  BSplineBasis basis(k, n, m);
  int Nr = basis.count_r(), Nz = basis.count_z();
  GalerkinSystem sys;
  sys.k = k;
  sys.n = n;
  sys.m = m;
  sys.r_id = mesh.r.id();
  sys.z_id = mesh.z.id();

  // Radial factors.
  {
    Triplets kt, mt, gt;
    std::vector<double> phi, dphi;
    for (const QuadPoint& q : cell_rule(n)) {
      double r = mesh.r.map(q.x), J = mesh.r.jacobian(q.x);
      double r3 = r * r * r;
      auto idx = candidates(q.cell, k, 0, Nr - 1, n);
      phi.resize(idx.size());
      dphi.resize(idx.size());
      for (std::size_t a = 0; a < idx.size(); ++a) {
        phi[a] = basis.trial_r(idx[a], q.x);
        dphi[a] = basis.trial_r_deriv(idx[a], q.x);
      }
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
          double kv = q.w * dphi[a] * dphi[b] * r3 / J;
          double mv = q.w * phi[a] * phi[b] * r3 * J;
          if (kv != 0.0) kt.emplace_back(idx[a], idx[b], kv);
          if (mv != 0.0) mt.emplace_back(idx[a], idx[b], mv);
        }
        if (phi[a] == 0.0) continue;
        for (int node : {q.cell, q.cell + 1})
          gt.emplace_back(idx[a], node, q.w * phi[a] * hat(node, q.x, n) * r3 * J);
      }
    }
    sys.Kr = from_triplets(Nr, Nr, kt);
    sys.Mr = from_triplets(Nr, Nr, mt);
    sys.Gr = from_triplets(Nr, n + 1, gt);
  }

  // Axial factors; basis index j maps to row j - 1.
  {
    Triplets kt, mt, gt;
    std::vector<double> phi, dphi;
    for (const QuadPoint& q : cell_rule(m)) {
      double J = mesh.z.jacobian(q.x);
      auto idx = candidates(q.cell, k, 1, m - 1, m);
      phi.resize(idx.size());
      dphi.resize(idx.size());
      for (std::size_t a = 0; a < idx.size(); ++a) {
        phi[a] = basis.axial(idx[a], q.x);
        dphi[a] = basis.axial_deriv(idx[a], q.x);
      }
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
          double kv = q.w * dphi[a] * dphi[b] / J;
          double mv = q.w * phi[a] * phi[b] * J;
          if (kv != 0.0) kt.emplace_back(idx[a] - 1, idx[b] - 1, kv);
          if (mv != 0.0) mt.emplace_back(idx[a] - 1, idx[b] - 1, mv);
        }
        if (phi[a] == 0.0) continue;
        for (int node : {q.cell, q.cell + 1})
          gt.emplace_back(idx[a] - 1, node, q.w * phi[a] * hat(node, q.x, m) * J);
      }
    }
    sys.Kz = from_triplets(Nz, Nz, kt);
    sys.Mz = from_triplets(Nz, Nz, mt);
    sys.Gz = from_triplets(Nz, m + 1, gt);
  }

  // Nodal evaluation.
  {
    Triplets et;
    for (int a = 0; a <= n; ++a) {
      double x = static_cast<double>(a) / n;
      for (int i : candidates(std::min(a, n - 1), k, 0, Nr - 1, n)) {
        double v = basis.trial_r(i, x);
        if (v != 0.0) et.emplace_back(a, i, v);
      }
    }
    sys.Er = from_triplets(n + 1, Nr, et);
    et.clear();
    for (int b = 0; b <= m; ++b) {
      double y = static_cast<double>(b) / m;
      for (int j : candidates(std::min(b, m - 1), k, 1, m - 1, m)) {
        double v = basis.axial(j, y);
        if (v != 0.0) et.emplace_back(b, j - 1, v);
      }
    }
    sys.Ez = from_triplets(m + 1, Nz, et);
  }

  // Tensor-product operator.
  {
    Triplets at;
    at.reserve(static_cast<std::size_t>(sys.Kr.nonZeros()) * sys.Mz.nonZeros() * 2);
    auto kron_add = [&](const SparseMat& P, const SparseMat& Q) {
      for (int c1 = 0; c1 < P.outerSize(); ++c1)
        for (SparseMat::InnerIterator p(P, c1); p; ++p)
          for (int c2 = 0; c2 < Q.outerSize(); ++c2)
            for (SparseMat::InnerIterator q(Q, c2); q; ++q)
              at.emplace_back(p.row() * Nz + q.row(), p.col() * Nz + q.col(),
                              p.value() * q.value());
    };
    kron_add(sys.Kr, sys.Mz);
    kron_add(sys.Mr, sys.Kz);
    sys.A = from_triplets(Nr * Nz, Nr * Nz, at);
  }

  sys.factor = std::make_shared<
      Eigen::SimplicialLLT<SparseMat, Eigen::Lower, Eigen::AMDOrdering<int>>>();
  sys.factor->compute(sys.A);
  if (sys.factor->info() != Eigen::Success)
    throw AssemblyFailure("Galerkin matrix is not symmetric positive definite");
  return sys;
}

Eigen::VectorXd load_vector(const GalerkinSystem& sys, const FieldGrid& omega) {
  if (omega.n() != sys.n || omega.m() != sys.m)
    throw DomainError("load field shape does not match the system");
  Eigen::Map<const RowMat> W(omega.values().data(), sys.n + 1, sys.m + 1);
  RowMat T = W * sys.Gz.transpose();
  RowMat F = sys.Gr * T;
  return Eigen::Map<const Eigen::VectorXd>(F.data(), F.size());
}

Eigen::VectorXd solve_coefficients(const GalerkinSystem& sys,
                                   const Eigen::VectorXd& load) {
  Eigen::VectorXd c = sys.factor->solve(load);
  if (sys.factor->info() != Eigen::Success || !c.allFinite())
    throw SolveFailure("Poisson solve failed");
  return c;
}

FieldGrid evaluate_nodes(const GalerkinSystem& sys, const Eigen::VectorXd& coeffs) {
  int Nr = static_cast<int>(sys.Kr.rows()), Nz = static_cast<int>(sys.Kz.rows());
  Eigen::Map<const RowMat> C(coeffs.data(), Nr, Nz);
  RowMat T = C * sys.Ez.transpose();
  RowMat P = sys.Er * T;
  FieldGrid psi(sys.n, sys.m, Parity::Even, Parity::Odd);
  std::copy(P.data(), P.data() + P.size(), psi.values().begin());
  psi.zero_odd_rows();
  return psi;
}

FieldGrid solve(const GalerkinSystem& sys, const FieldGrid& omega) {
  return evaluate_nodes(sys, solve_coefficients(sys, load_vector(sys, omega)));
}

const GalerkinSystem& PoissonSolver::system(const Mesh& mesh) {
  if (!sys_ || sys_->r_id != mesh.r.id() || sys_->z_id != mesh.z.id() ||
      sys_->n != mesh.n() || sys_->m != mesh.m()) {
    sys_ = std::make_unique<GalerkinSystem>(assemble(mesh, k_));
    ++assemblies_;
  }
  return *sys_;
}

FieldGrid PoissonSolver::solve(const FieldGrid& omega, const Mesh& mesh) {
  return axisym::solve(system(mesh), omega);
}

}  // namespace axisym
