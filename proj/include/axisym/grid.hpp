#pragma once

#include <cstddef>
#include <vector>

namespace axisym {

// Symmetry of a field across ρ=0 (parity_r) or across η=0 and η=1 (parity_z).
// None means no symmetry is known; ghosts then come from extrapolation.
enum class Parity { Even, Odd, None };

inline Parity flip(Parity p) {
  switch (p) {
    case Parity::Even: return Parity::Odd;
    case Parity::Odd: return Parity::Even;
    default: return Parity::None;
  }
}

inline Parity product(Parity a, Parity b) {
  if (a == Parity::None || b == Parity::None) return Parity::None;
  return a == b ? Parity::Even : Parity::Odd;
}

// Nodal samples on the (n+1) x (m+1) tensor grid, row-major in ρ:
// value (i,j) lives at i*(m+1)+j.
class FieldGrid {
 public:
  FieldGrid() = default;
  FieldGrid(int n, int m, Parity pr = Parity::None, Parity pz = Parity::None,
            double fill = 0.0)
      : n_(n), m_(m), pr_(pr), pz_(pz),
        v_(static_cast<std::size_t>(n + 1) * (m + 1), fill) {}

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return v_.size(); }
  Parity parity_r() const { return pr_; }
  Parity parity_z() const { return pz_; }
  void set_parity(Parity pr, Parity pz) {
    pr_ = pr;
    pz_ = pz;
  }
  // Odd-in-z fields vanish on eta = 0 and eta = 1; clears round-off there.
  void zero_odd_rows() {
    if (pz_ != Parity::Odd) return;
    for (int i = 0; i <= n_; ++i) (*this)(i, 0) = (*this)(i, m_) = 0.0;
  }

  double& operator()(int i, int j) { return v_[idx(i, j)]; }
  double operator()(int i, int j) const { return v_[idx(i, j)]; }
  double* row(int i) { return v_.data() + idx(i, 0); }
  const double* row(int i) const { return v_.data() + idx(i, 0); }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  // Value at i in [-1, n+1] on column j, ghosts included.
  double ghost_r(int i, int j) const {
    if (i >= 0 && i <= n_) return (*this)(i, j);
    if (i == -1) {
      if (pr_ == Parity::Even) return (*this)(1, j);
      if (pr_ == Parity::Odd) return -(*this)(1, j);
      return 4.0 * (*this)(0, j) - 6.0 * (*this)(1, j) + 4.0 * (*this)(2, j) -
             (*this)(3, j);
    }
    // Cubic extrapolation.
    return 4.0 * (*this)(n_, j) - 6.0 * (*this)(n_ - 1, j) +
           4.0 * (*this)(n_ - 2, j) - (*this)(n_ - 3, j);
  }

  // Value at j in [-1, m+1] on row i, ghosts included.
  double ghost_z(int i, int j) const {
    if (j >= 0 && j <= m_) return (*this)(i, j);
    int inner = j < 0 ? 1 : m_ - 1;
    int edge = j < 0 ? 0 : m_;
    if (pz_ == Parity::Even) return (*this)(i, inner);
    if (pz_ == Parity::Odd) return -(*this)(i, inner);
    int dir = j < 0 ? 1 : -1;
    return 4.0 * (*this)(i, edge) - 6.0 * (*this)(i, edge + dir) +
           4.0 * (*this)(i, edge + 2 * dir) - (*this)(i, edge + 3 * dir);
  }

  double sup_norm() const;
  bool all_finite() const;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * (m_ + 1) + j;
  }

  int n_ = 0;
  int m_ = 0;
  Parity pr_ = Parity::None;
  Parity pz_ = Parity::None;
  std::vector<double> v_;
};

inline double FieldGrid::sup_norm() const {
  double s = 0.0;
  for (double x : v_) s = x > s ? x : (-x > s ? -x : s);
  return s;
}

inline bool FieldGrid::all_finite() const {
  for (double x : v_)
    if (!(x - x == 0.0)) return false;
  return true;
}

}  // namespace axisym
