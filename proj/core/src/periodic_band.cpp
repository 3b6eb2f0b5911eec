#include "pintcl/periodic_band.hpp"

#include <lapacke.h>

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace pintcl {

PeriodicBandMatrix PeriodicBandMatrix::identity(int n, int kl, int ku) {
  PeriodicBandMatrix m(n, kl, ku);
  for (int i = 0; i < n; ++i) m.at(i, 0) = 1.0;
  return m;
}

void PeriodicBandMatrix::add_scaled(const PeriodicBandMatrix& other, double c) {
  assert(other.n == n && other.kl <= kl && other.ku <= ku);
  for (int i = 0; i < n; ++i) {
    for (int o = -other.kl; o <= other.ku; ++o) {
      at(i, o) += c * other.at(i, o);
    }
  }
}

void PeriodicBandMatrix::matvec(const CellField& x, CellField& y) const {
  y.resize(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int o = -kl; o <= ku; ++o) {
      acc += at(i, o) * x[wrap(i + o, n)];
    }
    y[i] = acc;
  }
}

std::vector<double> PeriodicBandMatrix::to_dense() const {
  std::vector<double> dense(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int o = -kl; o <= ku; ++o) {
      dense[static_cast<size_t>(i) * n + wrap(i + o, n)] += at(i, o);
    }
  }
  return dense;
}

// ---------------------------------------------------------------------------

struct PeriodicBandLU::Impl {
  int n = 0, kl = 0, ku = 0, rank = 0;
  // LAPACK gbtrf storage of the non-wrapping part B.
  std::vector<double> ab;
  std::vector<lapack_int> ipiv;
  // Woodbury pieces: A = B + U*W with U = unit columns for the wrap rows.
  std::vector<int> rows;      // rows with wrap-around entries (size = rank)
  std::vector<double> w;      // rank x n, row-major: corner content per row
  std::vector<double> z;      // n x rank, column-major: Z = B^{-1} U
  std::vector<double> cap;    // rank x rank factored capacitance I + W*Z
  std::vector<lapack_int> cap_ipiv;

  void band_solve(double* x, int nrhs) const {
    lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, nrhs,
                                     const_cast<double*>(ab.data()), 2 * kl + ku + 1,
                                     const_cast<lapack_int*>(ipiv.data()), x, n);
    if (info != 0) throw std::runtime_error("banded triangular solve failed");
  }
};

PeriodicBandLU::PeriodicBandLU(const PeriodicBandMatrix& a) : impl_(new Impl) {
  Impl& im = *impl_;
  im.n = a.n;
  im.kl = a.kl;
  im.ku = a.ku;
  const int n = a.n;
  if (n < 4 * (a.kl + a.ku)) {
    throw std::invalid_argument("periodic band LU requires n >= 4*(kl+ku)");
  }

  // Split A into the LAPACK band B (entries with 0 <= i+o < n) and the
  // wrap-around corners, which affect the first kl and last ku rows.
  const int ldab = 2 * a.kl + a.ku + 1;
  im.ab.assign(static_cast<size_t>(ldab) * n, 0.0);
  for (int i = 0; i < a.kl; ++i) im.rows.push_back(i);
  for (int i = n - a.ku; i < n; ++i) im.rows.push_back(i);
  im.rank = static_cast<int>(im.rows.size());
  im.w.assign(static_cast<size_t>(im.rank) * n, 0.0);

  for (int i = 0; i < n; ++i) {
    for (int o = -a.kl; o <= a.ku; ++o) {
      double v = a.at(i, o);
      if (v == 0.0) continue;
      int j = i + o;
      if (j >= 0 && j < n) {
        // gbtrf layout: AB(kl+ku+i-j, j) in 0-based col-major storage.
        im.ab[static_cast<size_t>(j) * ldab + (a.kl + a.ku + i - j)] += v;
      } else {
        int jw = wrap(j, n);
        int r = (i < a.kl) ? i : (im.rank - (n - i));
        im.w[static_cast<size_t>(r) * n + jw] += v;
      }
    }
  }

  im.ipiv.resize(n);
  lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, a.kl, a.ku, im.ab.data(), ldab,
                                   im.ipiv.data());
  if (info != 0) throw std::runtime_error("banded LU factorization failed");

  // Z = B^{-1} U, one column per wrap row.
  im.z.assign(static_cast<size_t>(n) * im.rank, 0.0);
  for (int c = 0; c < im.rank; ++c) im.z[static_cast<size_t>(c) * n + im.rows[c]] = 1.0;
  im.band_solve(im.z.data(), im.rank);

  // Capacitance C = I + W Z (rank x rank), factored densely.
  im.cap.assign(static_cast<size_t>(im.rank) * im.rank, 0.0);
  for (int r = 0; r < im.rank; ++r) {
    for (int c = 0; c < im.rank; ++c) {
      double acc = (r == c) ? 1.0 : 0.0;
      const double* wrow = &im.w[static_cast<size_t>(r) * n];
      const double* zcol = &im.z[static_cast<size_t>(c) * n];
      for (int j = 0; j < n; ++j) acc += wrow[j] * zcol[j];
      im.cap[static_cast<size_t>(c) * im.rank + r] = acc;  // col-major for LAPACK
    }
  }
  im.cap_ipiv.resize(im.rank);
  info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, im.rank, im.rank, im.cap.data(), im.rank,
                        im.cap_ipiv.data());
  if (info != 0) throw std::runtime_error("capacitance factorization failed");
}

PeriodicBandLU::~PeriodicBandLU() = default;
PeriodicBandLU::PeriodicBandLU(PeriodicBandLU&&) noexcept = default;
PeriodicBandLU& PeriodicBandLU::operator=(PeriodicBandLU&&) noexcept = default;

void PeriodicBandLU::solve(CellField& x) const {
  const Impl& im = *impl_;
  const int n = im.n;
  assert(static_cast<int>(x.size()) == n);
  // y = B^{-1} x
  im.band_solve(x.data(), 1);
  // s = C^{-1} (W y); x -= Z s
  std::vector<double> s(im.rank);
  for (int r = 0; r < im.rank; ++r) {
    const double* wrow = &im.w[static_cast<size_t>(r) * n];
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += wrow[j] * x[j];
    s[r] = acc;
  }
  lapack_int info = LAPACKE_dgetrs(LAPACK_COL_MAJOR, 'N', im.rank, 1,
                                   const_cast<double*>(im.cap.data()), im.rank,
                                   const_cast<lapack_int*>(im.cap_ipiv.data()), s.data(),
                                   im.rank);
  if (info != 0) throw std::runtime_error("capacitance solve failed");
  for (int c = 0; c < im.rank; ++c) {
    const double* zcol = &im.z[static_cast<size_t>(c) * n];
    for (int j = 0; j < n; ++j) x[j] -= zcol[j] * s[c];
  }
}

// ---------------------------------------------------------------------------

int gmres_solve(const std::function<void(const CellField&, CellField&)>& apply,
                const CellField& rhs, CellField& x, double rel_tol, int max_iters) {
  const int n = static_cast<int>(rhs.size());
  const double bnorm = field_norm({rhs.data(), rhs.size()}, NormKind::two);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    return 0;
  }
  x.resize(n);

  CellField r(n), tmp;
  apply(x, tmp);
  for (int i = 0; i < n; ++i) r[i] = rhs[i] - tmp[i];
  double beta = field_norm({r.data(), r.size()}, NormKind::two);
  if (beta <= rel_tol * bnorm) return 0;

  const int m = max_iters;
  std::vector<CellField> v;
  v.reserve(m + 1);
  v.push_back(r);
  for (int i = 0; i < n; ++i) v[0][i] /= beta;

  // Hessenberg in column-major (m+1) x m, plus Givens rotations.
  std::vector<double> hcol(m + 1), cs(m), sn(m), gvec(m + 1, 0.0);
  std::vector<std::vector<double>> hcols;
  gvec[0] = beta;
  int iters = 0;

  for (int j = 0; j < m; ++j) {
    apply(v[j], tmp);
    for (int i = 0; i <= j; ++i) {
      double dot = 0.0;
      for (int q = 0; q < n; ++q) dot += tmp[q] * v[i][q];
      hcol[i] = dot;
      for (int q = 0; q < n; ++q) tmp[q] -= dot * v[i][q];
    }
    double hnext = field_norm({tmp.data(), tmp.size()}, NormKind::two);
    hcol[j + 1] = hnext;

    // Apply existing rotations, then form the new one.
    for (int i = 0; i < j; ++i) {
      double t = cs[i] * hcol[i] + sn[i] * hcol[i + 1];
      hcol[i + 1] = -sn[i] * hcol[i] + cs[i] * hcol[i + 1];
      hcol[i] = t;
    }
    double denom = std::hypot(hcol[j], hcol[j + 1]);
    cs[j] = (denom == 0.0) ? 1.0 : hcol[j] / denom;
    sn[j] = (denom == 0.0) ? 0.0 : hcol[j + 1] / denom;
    hcol[j] = denom;
    hcol[j + 1] = 0.0;
    gvec[j + 1] = -sn[j] * gvec[j];
    gvec[j] = cs[j] * gvec[j];

    hcols.push_back(std::vector<double>(hcol.begin(), hcol.begin() + j + 1));
    iters = j + 1;

    double res = std::abs(gvec[j + 1]);
    if (res <= rel_tol * bnorm || hnext == 0.0) break;
    CellField vnext = tmp;
    for (int q = 0; q < n; ++q) vnext[q] /= hnext;
    v.push_back(std::move(vnext));
  }

  // Back-substitute the triangular system and update x.
  std::vector<double> y(iters, 0.0);
  for (int i = iters - 1; i >= 0; --i) {
    double acc = gvec[i];
    for (int c = i + 1; c < iters; ++c) acc -= hcols[c][i] * y[c];
    y[i] = acc / hcols[i][i];
  }
  for (int i = 0; i < iters; ++i) {
    for (int q = 0; q < n; ++q) x[q] += y[i] * v[i][q];
  }
  return iters;
}

}  // namespace pintcl
