#include <cmath>
#include <vector>

#include "axisym/errors.hpp"
#include "axisym/meshmap.hpp"

namespace axisym {

namespace {

struct Stencil {
  int idx[4];
  double w[4];
};

// Cubic Lagrange stencil at fractional index x in [0, n]. Ghost nodes beyond
// an end with known parity are folded onto their mirror images.
Stencil make_stencil(double x, int n, Parity left, Parity right) {
  int k = static_cast<int>(std::floor(x));
  if (k < 0) k = 0;
  if (k > n - 1) k = n - 1;
  int base = k - 1;
  if (base < 0 && left == Parity::None) base = 0;
  if (base + 3 > n && right == Parity::None) base = n - 3;
  double t = x - base;
  double lw[4] = {-(t - 1) * (t - 2) * (t - 3) / 6.0, t * (t - 2) * (t - 3) / 2.0,
                  -t * (t - 1) * (t - 3) / 2.0, t * (t - 1) * (t - 2) / 6.0};
  Stencil s;
  for (int a = 0; a < 4; ++a) {
    int i = base + a;
    double w = lw[a];
    if (i < 0) {
      i = -i;
      if (left == Parity::Odd) w = -w;
    } else if (i > n) {
      i = 2 * n - i;
      if (right == Parity::Odd) w = -w;
    }
    s.idx[a] = i;
    s.w[a] = w;
  }
  return s;
}

double apply(const FieldGrid& f, const Stencil& sr, const Stencil& sz) {
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    const double* row = f.row(sr.idx[a]);
    double inner = 0.0;
    for (int b = 0; b < 4; ++b) inner += sz.w[b] * row[sz.idx[b]];
    acc += sr.w[a] * inner;
  }
  return acc;
}

void check_shape(const FieldGrid& f, const Mesh& mesh) {
  if (f.n() != mesh.n() || f.m() != mesh.m())
    throw DomainError("field shape does not match its mesh");
}

}  // namespace

FieldGrid interpolate_ip4(const FieldGrid& f, const Mesh& src, const Mesh& dst) {
  check_shape(f, src);
  if (src.r.id() == dst.r.id() && src.z.id() == dst.z.id()) return f;
  int n = src.n(), m = src.m();
  std::vector<Stencil> sr(dst.n() + 1), sz(dst.m() + 1);
  for (int i = 0; i <= dst.n(); ++i)
    sr[i] = make_stencil(src.r.inverse(dst.r.node(i)) * n, n, f.parity_r(),
                         Parity::None);
  for (int j = 0; j <= dst.m(); ++j)
    sz[j] = make_stencil(src.z.inverse(dst.z.node(j)) * m, m, f.parity_z(),
                         f.parity_z());
  FieldGrid out(dst.n(), dst.m(), f.parity_r(), f.parity_z());
  for (int i = 0; i <= dst.n(); ++i)
    for (int j = 0; j <= dst.m(); ++j) out(i, j) = apply(f, sr[i], sz[j]);
  return out;
}

double PointInterpolator::operator()(double r, double z) const {
  check_shape(f_, mesh_);
  int n = mesh_.n(), m = mesh_.m();
  Stencil sr = make_stencil(mesh_.r.inverse(r) * n, n, f_.parity_r(), Parity::None);
  Stencil sz = make_stencil(mesh_.z.inverse(z) * m, m, f_.parity_z(), f_.parity_z());
  return apply(f_, sr, sz);
}

}  // namespace axisym
