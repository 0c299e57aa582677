#include "axisym/filters.hpp"

#include <cmath>

#include "axisym/parallel.hpp"
#include "axisym/physics.hpp"

namespace axisym {

double soft_cutoff_bar(double x, double a, double b) {
  return 1.0 - soft_cutoff(x, a, b);
}

double strength_cL(double rho, double eta) {
  double outer = soft_cutoff_bar(rho, 0.8, 0.05) * soft_cutoff_bar(eta, 0.8, 0.05);
  double inner = soft_cutoff_bar(rho, 0.45, 0.05) * soft_cutoff_bar(eta, 0.45, 0.05);
  return outer * (1.0 - inner);
}

std::vector<double> StrengthFn::sample(int n, int m) const {
  std::vector<double> c(static_cast<std::size_t>(n + 1) * (m + 1), c_);
  if (!lshape_) return c;
  std::vector<double> ro(n + 1), ri(n + 1), eo(m + 1), ei(m + 1);
  for (int i = 0; i <= n; ++i) {
    double x = static_cast<double>(i) / n;
    ro[i] = soft_cutoff_bar(x, 0.8, 0.05);
    ri[i] = soft_cutoff_bar(x, 0.45, 0.05);
  }
  for (int j = 0; j <= m; ++j) {
    double y = static_cast<double>(j) / m;
    eo[j] = soft_cutoff_bar(y, 0.8, 0.05);
    ei[j] = soft_cutoff_bar(y, 0.45, 0.05);
  }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j)
      c[static_cast<std::size_t>(i) * (m + 1) + j] = ro[i] * eo[j] * (1.0 - ri[i] * ei[j]);
  return c;
}

FieldGrid lpf(const FieldGrid& f, const StrengthFn& c) {
  int n = f.n(), m = f.m();
  if (c.is_uniform() && c.constant() == 0.0) return f;
  std::vector<double> cs = c.sample(n, m);

  FieldGrid g(n, m, f.parity_r(), f.parity_z());
  parallel_for(0, n + 1, [&](std::size_t lo, std::size_t hi) {
    for (int i = static_cast<int>(lo); i < static_cast<int>(hi); ++i) {
      const double* cr = cs.data() + static_cast<std::size_t>(i) * (m + 1);
      double* o = g.row(i);
      if (i > 0 && i < n) {
        const double *a = f.row(i - 1), *v = f.row(i), *b = f.row(i + 1);
        for (int j = 0; j <= m; ++j)
          o[j] = v[j] + 0.25 * cr[j] * (a[j] - 2.0 * v[j] + b[j]);
      } else {
        for (int j = 0; j <= m; ++j)
          o[j] = f(i, j) + 0.25 * cr[j] *
                               (f.ghost_r(i - 1, j) - 2.0 * f(i, j) + f.ghost_r(i + 1, j));
      }
    }
  });

  FieldGrid out(n, m, f.parity_r(), f.parity_z());
  parallel_for(0, n + 1, [&](std::size_t lo, std::size_t hi) {
    for (int i = static_cast<int>(lo); i < static_cast<int>(hi); ++i) {
      const double* cr = cs.data() + static_cast<std::size_t>(i) * (m + 1);
      const double* v = g.row(i);
      double* o = out.row(i);
      for (int j = 1; j < m; ++j)
        o[j] = v[j] + 0.25 * cr[j] * (v[j - 1] - 2.0 * v[j] + v[j + 1]);
      for (int j : {0, m})
        o[j] = v[j] + 0.25 * cr[j] *
                          (g.ghost_z(i, j - 1) - 2.0 * v[j] + g.ghost_z(i, j + 1));
    }
  });
  return out;
}

Mesh rlpf_mesh(const ProfileFeatures& features, int N, int M) {
  return adaptive_mesh(features, N, M);
}

FieldGrid rlpf(const FieldGrid& f, const Mesh& fine, const Mesh& coarse, int k,
               const StrengthFn& c) {
  FieldGrid g = interpolate_ip4(f, fine, coarse);
  for (int p = 0; p < k; ++p) g = lpf(g, c);
  return interpolate_ip4(g, coarse, fine);
}

}  // namespace axisym
