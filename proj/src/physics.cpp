#include "axisym/physics.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <vector>

#include "axisym/errors.hpp"

namespace axisym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSamples = 4096;

double sq(double x) { return x * x; }

double radial_shape(double r, double c1, double c2) {
  double r2 = r * r, r4 = r2 * r2, r8 = r4 * r4;
  return r8 * (1.0 - r2) / (1.0 + std::pow(r / c1, 10) + std::pow(r / c2, 14));
}

double axial_shape(double z, double c1, double c2) {
  double s = std::sin(kPi * z);
  return std::sin(2 * kPi * z) / (1.0 + sq(s / c1) + sq(sq(s / c2)));
}

// Log-spaced samples in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  double a = std::log(lo), b = std::log(hi);
  for (int k = 0; k < count; ++k) g[k] = std::exp(a + (b - a) * k / (count - 1));
  return g;
}

struct Peak {
  double r, z, value;
};

// Shrinking-box search around a coarse maximizer.
Peak zoom(const std::function<double(double, double)>& f, Peak p, double dr,
          double dz) {
  for (int round = 0; round < 14; ++round) {
    Peak best = p;
    for (int a = -10; a <= 10; ++a)
      for (int b = -10; b <= 10; ++b) {
        double r = p.r + dr * a / 10.0, z = p.z + dz * b / 10.0;
        if (r <= 0 || r >= 1 || z <= 0 || z >= 0.5) continue;
        double v = f(r, z);
        if (v > best.value) best = {r, z, v};
      }
    p = best;
    dr *= 0.25;
    dz *= 0.25;
  }
  return p;
}

// Maximizer of f(r,z) = sum_t A_t(r) B_t(z) on the log sampling grid, then zoomed.
Peak separable_peak(const std::vector<std::function<double(double)>>& fr,
                    const std::vector<std::function<double(double)>>& fz,
                    const std::function<double(double, double)>& f) {
  auto rs = log_grid(1e-6, 1.0 - 1e-9, kSamples);
  auto zs = log_grid(1e-7, 0.5 - 1e-9, kSamples);
  std::size_t terms = fr.size();
  std::vector<std::vector<double>> ar(terms, std::vector<double>(kSamples)),
      bz(terms, std::vector<double>(kSamples));
  for (std::size_t t = 0; t < terms; ++t)
    for (int k = 0; k < kSamples; ++k) {
      ar[t][k] = fr[t](rs[k]);
      bz[t][k] = fz[t](zs[k]);
    }
  int bi = 0, bj = 0;
  double best = -1e300;
  for (int i = 0; i < kSamples; ++i)
    for (int j = 0; j < kSamples; ++j) {
      double v = 0.0;
      for (std::size_t t = 0; t < terms; ++t) v += ar[t][i] * bz[t][j];
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  double dr = rs[std::min(bi + 1, kSamples - 1)] - rs[std::max(bi - 1, 0)];
  double dz = zs[std::min(bj + 1, kSamples - 1)] - zs[std::max(bj - 1, 0)];
  return zoom(f, {rs[bi], zs[bj], f(rs[bi], zs[bj])}, dr, dz);
}

// Golden-section maximization of a unimodal function on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1 + std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double soft_cutoff(double x, double a, double b) {
  double t = 2.0 * (x - a) / b;
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

double corner_factor(const InitialDataParams& p, double r, double z) {
  double s = std::sin(kPi * z) / kPi;
  double cr = soft_cutoff(r, p.b_r1 + 0.5 * p.b_z1, p.b_z1);
  double up = soft_cutoff(s, 0.7 * p.b_z1, 0.5 * p.b_z1);
  double dn = soft_cutoff(-s, 0.7 * p.b_z1, 0.5 * p.b_z1);
  return (1.0 - up * cr) * (1.0 - dn * cr);
}

double u1_profile(const InitialDataParams& p, double r, double z) {
  return axial_shape(z, p.a_z1, p.a_z2) * radial_shape(r, p.a_r1, p.a_r2);
}

double w1_profile(const InitialDataParams& p, double r, double z) {
  return corner_factor(p, r, z) * axial_shape(z, p.b_z1, p.b_z2) *
         radial_shape(r, p.b_r1, p.b_r2);
}

ProfileNorms profile_norms(const InitialDataParams& p) {
  static std::mutex mu;
  static bool have = false;
  static InitialDataParams cached_params;
  static ProfileNorms cached;
  std::lock_guard<std::mutex> lock(mu);
  if (have && cached_params == p) return cached;

  ProfileNorms out;
  out.u1 = separable_peak({[&](double r) { return radial_shape(r, p.a_r1, p.a_r2); }},
                          {[&](double z) { return axial_shape(z, p.a_z1, p.a_z2); }},
                          [&](double r, double z) { return u1_profile(p, r, z); })
               .value;
  // g = 1 - (up + dn) cr + up dn cr^2, expanded into separable terms.
  auto cr = [&](double r) { return soft_cutoff(r, p.b_r1 + 0.5 * p.b_z1, p.b_z1); };
  auto up = [&](double z) {
    return soft_cutoff(std::sin(kPi * z) / kPi, 0.7 * p.b_z1, 0.5 * p.b_z1);
  };
  auto dn = [&](double z) {
    return soft_cutoff(-std::sin(kPi * z) / kPi, 0.7 * p.b_z1, 0.5 * p.b_z1);
  };
  auto gr = [&](double r) { return radial_shape(r, p.b_r1, p.b_r2); };
  auto gz = [&](double z) { return axial_shape(z, p.b_z1, p.b_z2); };
  out.w1 = separable_peak(
               {gr, [&](double r) { return -cr(r) * gr(r); },
                [&](double r) { return cr(r) * cr(r) * gr(r); }},
               {gz, [&](double z) { return (up(z) + dn(z)) * gz(z); },
                [&](double z) { return up(z) * dn(z) * gz(z); }},
               [&](double r, double z) { return w1_profile(p, r, z); })
               .value;
  cached = out;
  cached_params = p;
  have = true;
  return out;
}

double initial_u1(const InitialDataParams& p, double r, double z) {
  ProfileNorms nrm = profile_norms(p);
  return p.m_u1 * u1_profile(p, r, z) / nrm.u1 +
         p.m_u2 * std::sin(2 * kPi * z) * r * r * (1 - r * r);
}

double initial_w1(const InitialDataParams& p, double r, double z) {
  ProfileNorms nrm = profile_norms(p);
  return p.m_w1 * w1_profile(p, r, z) / nrm.w1 +
         p.m_w2 * std::sin(2 * kPi * z) * r * r * (1 - r * r);
}

std::pair<FieldGrid, FieldGrid> initial_fields(const InitialDataParams& p,
                                               const Mesh& mesh) {
  int n = mesh.n(), m = mesh.m();
  FieldGrid u(n, m, Parity::Even, Parity::Odd), w(n, m, Parity::Even, Parity::Odd);
  profile_norms(p);
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j < m; ++j) {
      double r = mesh.r.node(i), z = mesh.z.node(j);
      u(i, j) = initial_u1(p, r, z);
      w(i, j) = initial_w1(p, r, z);
    }
  return {std::move(u), std::move(w)};
}

ProfileFeatures initial_features(const InitialDataParams& p) {
  ProfileNorms nrm = profile_norms(p);
  double cu = p.m_u1 / nrm.u1;
  auto u = [&](double r, double z) { return initial_u1(p, r, z); };
  Peak pk = separable_peak(
      {[&](double r) { return cu * radial_shape(r, p.a_r1, p.a_r2); },
       [&](double r) { return p.m_u2 * r * r * (1 - r * r); }},
      {[&](double z) { return axial_shape(z, p.a_z1, p.a_z2); },
       [&](double z) { return std::sin(2 * kPi * z); }},
      u);
  ProfileFeatures f;
  f.R = pk.r;
  f.Z = pk.z;
  // Steepest radial rise on the row of the maximum, inside (0, R).
  auto slope = [&](double r) {
    double h = 1e-4 * r;
    return (u(r + h, f.Z) - u(r - h, f.Z)) / (2 * h);
  };
  auto rs = log_grid(1e-3 * f.R, f.R, kSamples);
  int best = 0;
  for (int k = 1; k < kSamples; ++k)
    if (slope(rs[k]) > slope(rs[best])) best = k;
  f.Rr = golden_max(slope, rs[std::max(best - 1, 0)],
                    rs[std::min(best + 1, kSamples - 1)]);
  return f;
}

NuSample DiffusionSpec::space_part(double r, double z) const {
  NuSample s;
  if (variant == Viscosity::Inviscid) return s;
  if (variant == Viscosity::Constant) {
    s.nr = s.nz = mu;
    return s;
  }
  // A(r) = c r^2/(1+k r^2) with k = 1e8; B(z) = c s^2/(1+k s^2), s = sin(pi z)/pi,
  // with k = 1e11.
  const double kr = 1e8, kz = 1e11;
  double r2 = r * r, dr = 1.0 + kr * r2;
  double a_over_r = 2.0 / (dr * dr);            // A'/(c r)
  double a2 = 2.0 * (1.0 - 3.0 * kr * r2) / (dr * dr * dr);  // A''/c
  double sz = std::sin(kPi * z) / kPi, cz = std::cos(kPi * z);
  double s2 = sz * sz, ds = 1.0 + kz * s2;
  double b0 = s2 / ds;
  double b1 = 2.0 * sz * cz / (ds * ds);
  double b2 = 2.0 * ((cz * cz - kPi * kPi * s2) * ds - 4.0 * kz * s2 * cz * cz) /
              (ds * ds * ds);
  double a0 = r2 / dr;

  const double cr_r = 10.0, cr_z = 1e2, cz_r = 0.1, cz_z = 1e4;
  s.nr = cr_r * a0 + cr_z * b0;
  s.nz = cz_r * a0 + cz_z * b0;
  s.nr_r = cr_r * a_over_r * r;
  s.nr_r_over_r = cr_r * a_over_r;
  s.nr_rr = cr_r * a2;
  s.nr_z = cr_z * b1;
  s.nz_z = cz_z * b1;
  s.nz_zz = cz_z * b2;
  s.nz_r = cz_r * a_over_r * r;
  s.nz_r_over_r = cz_r * a_over_r;
  return s;
}

double DiffusionSpec::time_part(double omega_theta_max) const {
  if (variant != Viscosity::Degenerate) return 0.0;
  if (omega_theta_max == 0.0)
    throw DivisionByZero("time-dependent viscosity needs a nonzero vorticity norm");
  return tdp_scale / omega_theta_max;
}

NuSample nu_eval(const DiffusionSpec& spec, double r, double z,
                 double omega_theta_max) {
  NuSample s = spec.space_part(r, z);
  double t = spec.time_part(omega_theta_max);
  s.nr += t;
  s.nz += t;
  return s;
}

FieldGrid circulation(const FieldGrid& u1, const Mesh& mesh) {
  FieldGrid g(u1.n(), u1.m(), u1.parity_r(), u1.parity_z());
  for (int i = 0; i <= u1.n(); ++i) {
    double r = mesh.r.node(i);
    for (int j = 0; j <= u1.m(); ++j) g(i, j) = r * r * u1(i, j);
  }
  return g;
}

}  // namespace axisym
