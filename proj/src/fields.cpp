#include "axisym/fields.hpp"

#include <cmath>

#include "axisym/errors.hpp"
#include "axisym/parallel.hpp"

namespace axisym {

namespace {

void check_shape(const FieldGrid& f, const Mesh& mesh) {
  if (f.n() != mesh.n() || f.m() != mesh.m())
    throw DomainError("field shape does not match its mesh");
}

// First (order 1) or second (order 2) difference in rho, scaled by 1/h^order.
FieldGrid diff_rho(const FieldGrid& f, int order) {
  int n = f.n(), m = f.m();
  double h = 1.0 / n;
  Parity pr = order == 1 ? flip(f.parity_r()) : f.parity_r();
  FieldGrid out(n, m, pr, f.parity_z());
  double s1 = 0.5 / h, s2 = 1.0 / (h * h);
  parallel_for(0, n + 1, [&](std::size_t lo, std::size_t hi) {
    for (int i = static_cast<int>(lo); i < static_cast<int>(hi); ++i) {
      double* o = out.row(i);
      if (i > 0 && i < n) {
        const double* a = f.row(i - 1);
        const double* c = f.row(i);
        const double* b = f.row(i + 1);
        if (order == 1)
          for (int j = 0; j <= m; ++j) o[j] = (b[j] - a[j]) * s1;
        else
          for (int j = 0; j <= m; ++j) o[j] = (b[j] - 2.0 * c[j] + a[j]) * s2;
      } else {
        for (int j = 0; j <= m; ++j) {
          double a = f.ghost_r(i - 1, j), b = f.ghost_r(i + 1, j);
          o[j] = order == 1 ? (b - a) * s1 : (b - 2.0 * f(i, j) + a) * s2;
        }
      }
    }
  });
  return out;
}

FieldGrid diff_eta(const FieldGrid& f, int order) {
  int n = f.n(), m = f.m();
  double h = 1.0 / m;
  Parity pz = order == 1 ? flip(f.parity_z()) : f.parity_z();
  FieldGrid out(n, m, f.parity_r(), pz);
  double s1 = 0.5 / h, s2 = 1.0 / (h * h);
  parallel_for(0, n + 1, [&](std::size_t lo, std::size_t hi) {
    for (int i = static_cast<int>(lo); i < static_cast<int>(hi); ++i) {
      const double* v = f.row(i);
      double* o = out.row(i);
      for (int j = 1; j < m; ++j)
        o[j] = order == 1 ? (v[j + 1] - v[j - 1]) * s1
                          : (v[j + 1] - 2.0 * v[j] + v[j - 1]) * s2;
      for (int j : {0, m}) {
        double a = f.ghost_z(i, j - 1), b = f.ghost_z(i, j + 1);
        o[j] = order == 1 ? (b - a) * s1 : (b - 2.0 * v[j] + a) * s2;
      }
    }
  });
  return out;
}

FieldGrid zeros_like(const FieldGrid& f) {
  return FieldGrid(f.n(), f.m(), f.parity_r(), f.parity_z());
}

FieldGrid node_grid(const Mesh& mesh, double (NuSample::*member),
                    const std::vector<NuSample>& samples) {
  int n = mesh.n(), m = mesh.m();
  FieldGrid g(n, m);
  for (std::size_t k = 0; k < samples.size(); ++k) g.values()[k] = samples[k].*member;
  return g;
}

}  // namespace

FieldGrid d_rho(const FieldGrid& f) { return diff_rho(f, 1); }
FieldGrid d_eta(const FieldGrid& f) { return diff_eta(f, 1); }

FieldGrid ddr(const FieldGrid& f, const Mesh& mesh) {
  check_shape(f, mesh);
  FieldGrid out = diff_rho(f, 1);
  const auto& J = mesh.r.jac_nodes();
  for (int i = 0; i <= f.n(); ++i) {
    double s = 1.0 / J[i];
    double* o = out.row(i);
    for (int j = 0; j <= f.m(); ++j) o[j] *= s;
  }
  return out;
}

FieldGrid ddz(const FieldGrid& f, const Mesh& mesh) {
  check_shape(f, mesh);
  FieldGrid out = diff_eta(f, 1);
  const auto& J = mesh.z.jac_nodes();
  for (int i = 0; i <= f.n(); ++i) {
    double* o = out.row(i);
    for (int j = 0; j <= f.m(); ++j) o[j] /= J[j];
  }
  return out;
}

FieldGrid d2dr2(const FieldGrid& f, const Mesh& mesh) {
  check_shape(f, mesh);
  FieldGrid d1 = diff_rho(f, 1);
  FieldGrid out = diff_rho(f, 2);
  const auto& J = mesh.r.jac_nodes();
  const auto& J2 = mesh.r.jac2_nodes();
  for (int i = 0; i <= f.n(); ++i) {
    double a = 1.0 / (J[i] * J[i]), b = J2[i] / (J[i] * J[i] * J[i]);
    double* o = out.row(i);
    const double* g = d1.row(i);
    for (int j = 0; j <= f.m(); ++j) o[j] = a * o[j] - b * g[j];
  }
  return out;
}

FieldGrid d2dz2(const FieldGrid& f, const Mesh& mesh) {
  check_shape(f, mesh);
  FieldGrid d1 = diff_eta(f, 1);
  FieldGrid out = diff_eta(f, 2);
  const auto& J = mesh.z.jac_nodes();
  const auto& J2 = mesh.z.jac2_nodes();
  std::vector<double> a(f.m() + 1), b(f.m() + 1);
  for (int j = 0; j <= f.m(); ++j) {
    a[j] = 1.0 / (J[j] * J[j]);
    b[j] = J2[j] / (J[j] * J[j] * J[j]);
  }
  for (int i = 0; i <= f.n(); ++i) {
    double* o = out.row(i);
    const double* g = d1.row(i);
    for (int j = 0; j <= f.m(); ++j) o[j] = a[j] * o[j] - b[j] * g[j];
  }
  return out;
}

Velocity velocity_from_derivatives(const FieldGrid& psi, const FieldGrid& psi_r,
                                   const FieldGrid& psi_z, const Mesh& mesh) {
  check_shape(psi, mesh);
  int n = psi.n(), m = psi.m();
  Velocity v{FieldGrid(n, m, flip(psi.parity_r()), flip(psi.parity_z())),
             FieldGrid(n, m, psi.parity_r(), psi.parity_z()),
             FieldGrid(n, m, psi.parity_r(), flip(psi.parity_z()))};
  for (int i = 0; i <= n; ++i) {
    double r = mesh.r.node(i);
    for (int j = 0; j <= m; ++j) {
      v.ur_over_r(i, j) = -psi_z(i, j);
      v.ur(i, j) = -r * psi_z(i, j);
      v.uz(i, j) = 2.0 * psi(i, j) + r * psi_r(i, j);
    }
  }
  return v;
}

Velocity velocity_from_stream(const FieldGrid& psi, const Mesh& mesh) {
  return velocity_from_derivatives(psi, ddr(psi, mesh), ddz(psi, mesh), mesh);
}

NuFields nu_fields_space(const DiffusionSpec& spec, const Mesh& mesh) {
  NuFields nu;
  if (spec.variant == Viscosity::Inviscid) return nu;
  int n = mesh.n(), m = mesh.m();
  std::vector<NuSample> s(static_cast<std::size_t>(n + 1) * (m + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j)
      s[static_cast<std::size_t>(i) * (m + 1) + j] =
          spec.space_part(mesh.r.node(i), mesh.z.node(j));
  nu.zero = false;
  nu.nr = node_grid(mesh, &NuSample::nr, s);
  nu.nz = node_grid(mesh, &NuSample::nz, s);
  nu.nr_r = node_grid(mesh, &NuSample::nr_r, s);
  nu.nr_r_over_r = node_grid(mesh, &NuSample::nr_r_over_r, s);
  nu.nr_z = node_grid(mesh, &NuSample::nr_z, s);
  nu.nr_rr = node_grid(mesh, &NuSample::nr_rr, s);
  nu.nr_rz = node_grid(mesh, &NuSample::nr_rz, s);
  nu.nr_rz_over_r = node_grid(mesh, &NuSample::nr_rz_over_r, s);
  nu.nz_z = node_grid(mesh, &NuSample::nz_z, s);
  nu.nz_r_over_r = node_grid(mesh, &NuSample::nz_r_over_r, s);
  nu.nz_zz = node_grid(mesh, &NuSample::nz_zz, s);
  nu.nz_rz_over_r = node_grid(mesh, &NuSample::nz_rz_over_r, s);
  return nu;
}

void add_time_part(NuFields& nu, double tdp) {
  if (nu.zero || tdp == 0.0) return;
  for (double& x : nu.nr.values()) x += tdp;
  for (double& x : nu.nz.values()) x += tdp;
}

NuFields nu_fields(const DiffusionSpec& spec, const Mesh& mesh,
                   double omega_theta_max) {
  NuFields nu = nu_fields_space(spec, mesh);
  add_time_part(nu, spec.time_part(omega_theta_max));
  return nu;
}

namespace {

// nr (f_rr + 3 f_r / r) + nz f_zz + (nr_r / r) f + nr_r f_r + nz_z f_z.
FieldGrid principal_part(const FieldGrid& f, const NuFields& nu, const Mesh& mesh) {
  FieldGrid fr = ddr(f, mesh), frr = d2dr2(f, mesh);
  FieldGrid fz = ddz(f, mesh), fzz = d2dz2(f, mesh);
  FieldGrid out = zeros_like(f);
  for (int i = 0; i <= f.n(); ++i) {
    double r = mesh.r.node(i);
    for (int j = 0; j <= f.m(); ++j) {
      double lap_r = i == 0 ? 4.0 * frr(i, j) : frr(i, j) + 3.0 * fr(i, j) / r;
      out(i, j) = nu.nr(i, j) * lap_r + nu.nz(i, j) * fzz(i, j) +
                  nu.nr_r_over_r(i, j) * f(i, j) + nu.nr_r(i, j) * fr(i, j) +
                  nu.nz_z(i, j) * fz(i, j);
    }
  }
  return out;
}

bool all_zero(const FieldGrid& g) {
  for (double x : g.values())
    if (x != 0.0) return false;
  return true;
}

}  // namespace

FieldGrid diffusion_u1(const FieldGrid& u1, const NuFields& nu, const Mesh& mesh) {
  check_shape(u1, mesh);
  if (nu.zero) return zeros_like(u1);
  return principal_part(u1, nu, mesh);
}

FieldGrid diffusion_w1(const FieldGrid& w1, const Velocity& vel,
                       const NuFields& nu, const Mesh& mesh) {
  check_shape(w1, mesh);
  if (nu.zero) return zeros_like(w1);
  FieldGrid out = principal_part(w1, nu, mesh);

  const FieldGrid& b = vel.ur_over_r;
  const FieldGrid& uz = vel.uz;
  FieldGrid b_r = ddr(b, mesh), b_rr = d2dr2(b, mesh);
  FieldGrid b_z = ddz(b, mesh), b_zz = d2dz2(b, mesh);
  FieldGrid uz_r = ddr(uz, mesh), uz_rr = d2dr2(uz, mesh);
  FieldGrid uz_z = ddz(uz, mesh), uz_zz = d2dz2(uz, mesh);
  bool cross_rz = !all_zero(nu.nr_rz) || !all_zero(nu.nr_rz_over_r) ||
                  !all_zero(nu.nz_rz_over_r);

  for (int i = 0; i <= w1.n(); ++i) {
    double r = mesh.r.node(i);
    for (int j = 0; j <= w1.m(); ++j) {
      // Odd-in-r quantities over r take their axis limits at i = 0.
      double br_over_r = i == 0 ? b_rr(i, j) : b_r(i, j) / r;
      double uzr_over_r = i == 0 ? uz_rr(i, j) : uz_r(i, j) / r;
      double t = nu.nr_z(i, j) * (3.0 * br_over_r + b_rr(i, j)) +
                 nu.nz_z(i, j) * b_zz(i, j) -
                 nu.nr_r_over_r(i, j) * (uz_rr(i, j) + uzr_over_r) -
                 nu.nz_r_over_r(i, j) * uz_zz(i, j) +
                 nu.nz_zz(i, j) * b_z(i, j) - nu.nr_rr(i, j) * uzr_over_r;
      if (cross_rz)
        t += nu.nr_rz_over_r(i, j) * b(i, j) + nu.nr_rz(i, j) * b_r(i, j) -
             nu.nz_rz_over_r(i, j) * uz_z(i, j);
      out(i, j) += t;
    }
  }
  return out;
}

double wall_psi_rr(const FieldGrid& psi, const Mesh& mesh, int j) {
  int n = psi.n();
  double h = 1.0 / n;
  double f0 = psi(n, j), f1 = psi(n - 1, j), f2 = psi(n - 2, j), f3 = psi(n - 3, j);
  double d1 = (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h);
  double d2 = (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
  double J = mesh.r.jac_nodes()[n], J2 = mesh.r.jac2_nodes()[n];
  return d2 / (J * J) - J2 * d1 / (J * J * J);
}

void enforce_boundary(FieldGrid& u1, FieldGrid& w1, const FieldGrid& psi,
                      const Mesh& mesh) {
  check_shape(psi, mesh);
  int n = u1.n();
  for (int j = 0; j <= u1.m(); ++j) {
    u1(n, j) = 0.0;
    w1(n, j) = -wall_psi_rr(psi, mesh, j);
  }
}

}  // namespace axisym
