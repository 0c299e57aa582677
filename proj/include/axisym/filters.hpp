#pragma once

#include <vector>

#include "axisym/grid.hpp"
#include "axisym/meshmap.hpp"

namespace axisym {

// 1 - soft_cutoff(x; a, b).
double soft_cutoff_bar(double x, double a, double b);

// L-shaped strength: ~1 in the band between the inner box [0,0.45]^2 and
// 0.8 in either coordinate, ~0 elsewhere.
double strength_cL(double rho, double eta);

class StrengthFn {
 public:
  static StrengthFn uniform(double c) { return StrengthFn(false, c); }
  static StrengthFn lshape() { return StrengthFn(true, 0.0); }

  double operator()(double rho, double eta) const {
    return lshape_ ? strength_cL(rho, eta) : c_;
  }
  bool is_uniform() const { return !lshape_; }
  double constant() const { return c_; }

  // Nodal strengths, row-major like FieldGrid.
  std::vector<double> sample(int n, int m) const;

 private:
  StrengthFn(bool l, double c) : lshape_(l), c_(c) {}
  bool lshape_;
  double c_;
};

// One rho pass then one eta pass of f + c/4 (second difference).
FieldGrid lpf(const FieldGrid& f, const StrengthFn& c);

// Coarse mesh of size (N, M) adapted to the given profile features.
Mesh rlpf_mesh(const ProfileFeatures& features, int N, int M);

// Interpolate to the coarse mesh, apply lpf k times, interpolate back.
FieldGrid rlpf(const FieldGrid& f, const Mesh& fine, const Mesh& coarse, int k,
               const StrengthFn& c);

}  // namespace axisym
