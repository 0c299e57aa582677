#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "axisym/grid.hpp"
#include "axisym/meshmap.hpp"

namespace testing_support {

using axisym::FieldGrid;
using axisym::Mesh;
using axisym::Parity;

constexpr double kPi = std::numbers::pi;

// Smoothly graded maps: broad sigmoids (b = 4) so refinement studies reach
// the asymptotic regime at small sizes.
inline Mesh mild_mesh(int n, int m) {
  axisym::DensityCoeffs cr{0.0, 1.0, 1.5, 0.0, 4};
  axisym::DensityCoeffs cz{0.0, 1.0, 0.8, 0.0, 4};
  return {axisym::MeshMap::build(axisym::PhaseKnots::r_default(), cr, 1.0, n),
          axisym::MeshMap::build(axisym::PhaseKnots::z_default(), cz, 0.5, m)};
}

// Graded in r through the a0 term only, which is even about the axis; the
// broad b = 4 sigmoids of mild_mesh are not flat at the ends, so reflected
// ghosts would sit off-mirror there.
inline Mesh graded_r_mesh(int n, int m) {
  axisym::DensityCoeffs cr{1.5, 1.0, 0.0, 0.0, 4};
  return {axisym::MeshMap::build(axisym::PhaseKnots::r_default(), cr, 1.0, n),
          axisym::MeshMap::uniform(0.5, m)};
}

inline FieldGrid sample(const Mesh& mesh, const std::function<double(double, double)>& f,
                        Parity pr = Parity::None, Parity pz = Parity::None) {
  FieldGrid g(mesh.n(), mesh.m(), pr, pz);
  for (int i = 0; i <= mesh.n(); ++i)
    for (int j = 0; j <= mesh.m(); ++j) g(i, j) = f(mesh.r.node(i), mesh.z.node(j));
  return g;
}

// Max |g - f| over nodes with i in [i0, n - i1] and j in [j0, m - j1].
inline double max_error(const FieldGrid& g, const Mesh& mesh,
                        const std::function<double(double, double)>& f, int i0 = 0,
                        int i1 = 0, int j0 = 0, int j1 = 0) {
  double e = 0.0;
  for (int i = i0; i <= mesh.n() - i1; ++i)
    for (int j = j0; j <= mesh.m() - j1; ++j)
      e = std::max(e, std::abs(g(i, j) - f(mesh.r.node(i), mesh.z.node(j))));
  return e;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng());
}

inline FieldGrid random_field(int n, int m, Parity pr, Parity pz, double amp = 1.0) {
  FieldGrid g(n, m, pr, pz);
  for (double& x : g.values()) x = uniform(-amp, amp);
  if (pz == Parity::Odd)
    for (int i = 0; i <= n; ++i) g(i, 0) = g(i, m) = 0.0;
  return g;
}

}  // namespace testing_support
