#include "dgsp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "dgsp/errors.hpp"

namespace dgsp {

namespace {

std::atomic<std::size_t> g_support_cap{0};  // 0 = uninitialized
std::atomic<double> g_atom_merge_tol{1e-12};

std::size_t support_cap_from_env() {
  if (const char* env = std::getenv("DGSP_SUPPORT_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

}  // namespace

std::size_t support_cap() {
  std::size_t cap = g_support_cap.load();
  if (cap == 0) {
    cap = support_cap_from_env();
    g_support_cap.store(cap);
  }
  return cap;
}

void set_support_cap(std::size_t cap) {
  if (cap == 0) throw DomainError("support cap must be positive");
  g_support_cap.store(cap);
}

double atom_merge_tolerance() { return g_atom_merge_tol.load(); }

void set_atom_merge_tolerance(double tol) {
  if (!(tol >= 0.0)) throw DomainError("atom merge tolerance must be nonnegative");
  g_atom_merge_tol.store(tol);
}

void Vector::check_finite() const {
  for (double x : entries_)
    if (!std::isfinite(x)) throw DomainError("vector entry is not finite");
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector dims differ in addition");
  Vector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector dims differ in subtraction");
  Vector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator*(double s, const Vector& v) {
  Vector r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
  return r;
}

bool operator==(const Vector& a, const Vector& b) { return a.entries() == b.entries(); }

double dot(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector dims differ in dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(const Vector& v) { return dot(v, v); }

double norm(const Vector& v) { return std::sqrt(squared_norm(v)); }

double max_abs_diff(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector dims differ in comparison");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw DimensionError("matrix data size mismatch");
  check_finite();
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ > 0 ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  check_finite();
}

void Matrix::check_finite() const {
  for (double x : data_)
    if (!std::isfinite(x)) throw DomainError("matrix entry is not finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.dim(), d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::row(std::size_t i) const {
  Vector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

Vector Matrix::col(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.dim()) throw DimensionError("matrix-vector shape mismatch");
  Vector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix shapes differ in addition");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i)
    r(i / a.cols(), i % a.cols()) = a.data()[i] + b.data()[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix shapes differ in subtraction");
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i)
    r(i / a.cols(), i % a.cols()) = a.data()[i] - b.data()[i];
  return r;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.data() == b.data();
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::fabs(x));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix shapes differ in comparison");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  return m;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack row mismatch");
  Matrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack column mismatch");
  Matrix r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

namespace {

double off_diagonal_frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymEigen sym_eigen(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("eigensolver needs a square matrix");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(a(i, j) - a(j, i)) > 1e-10)
        throw DomainError("eigensolver needs a symmetric matrix");

  // Work on the symmetrized copy so rotations see an exactly symmetric input.
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = 0.5 * (a(i, j) + a(j, i));
  Matrix v = Matrix::identity(n);

  const double scale = std::max(1.0, frobenius_norm(b));
  const double threshold = 1e-12 * scale;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_frobenius(b) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double bpq = b(p, q);
        if (std::fabs(bpq) <= 1e-300) continue;
        double tau = (b(q, q) - b(p, p)) / (2.0 * bpq);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;

        double bpp = b(p, p), bqq = b(q, q);
        b(p, p) = bpp - t * bpq;
        b(q, q) = bqq + t * bpq;
        b(p, q) = 0.0;
        b(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            double brp = b(r, p), brq = b(r, q);
            b(r, p) = b(p, r) = c * brp - s * brq;
            b(r, q) = b(q, r) = s * brp + c * brq;
          }
          double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  // Sort eigenvalues ascending; stable order keeps ties deterministic.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return b(i, i) < b(j, j); });

  Vector values(n);
  Matrix vectors(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = b(idx[k], idx[k]);
    // Canonical sign: largest-magnitude component positive.
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double x = std::fabs(v(r, idx[k]));
      if (x > amax) {
        amax = x;
        imax = r;
      }
    }
    double sign = v(imax, idx[k]) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) vectors(r, k) = sign * v(r, idx[k]);
  }
  return SymEigen{std::move(values), std::move(vectors)};
}

namespace {

// Singular triplets of a via the Gram matrix of the smaller side.
struct Svd {
  std::vector<double> sigma;  // descending, above cutoff
  std::vector<Vector> u;      // columns in R^rows
  std::vector<Vector> v;      // columns in R^cols
};

Svd thin_svd(const Matrix& a, double tol) {
  const std::size_t m = a.rows(), n = a.cols();
  const bool use_cols = n <= m;
  const Matrix at = a.transpose();
  const Matrix gram = use_cols ? at * a : a * at;
  SymEigen eig = sym_eigen(gram);

  const std::size_t k = gram.rows();
  double lambda_max = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    lambda_max = std::max(lambda_max, eig.eigenvalues[i]);

  Svd out;
  if (lambda_max <= 0.0) return out;
  // Rank decisions cut on Gram eigenvalues: their noise floor is near
  // eps * lambda_max, so a cutoff on derived singular values would keep
  // sqrt(eps)-sized junk directions and amplify them by 1/sigma.
  const double cutoff = tol * lambda_max;
  for (std::size_t i = k; i-- > 0;) {  // descending sigma
    if (eig.eigenvalues[i] <= cutoff) continue;
    const double sigma = std::sqrt(eig.eigenvalues[i]);
    Vector w = eig.eigenvectors.col(i);
    if (use_cols) {
      out.v.push_back(w);
      out.u.push_back((1.0 / sigma) * (a * w));
    } else {
      out.u.push_back(w);
      out.v.push_back((1.0 / sigma) * (at * w));
    }
    out.sigma.push_back(sigma);
  }
  return out;
}

}  // namespace

Matrix pseudo_inverse(const Matrix& a, double tol) {
  if (!(tol > 0.0)) throw DomainError("pseudo-inverse tolerance must be positive");
  const std::size_t m = a.rows(), n = a.cols();
  Svd svd = thin_svd(a, tol);
  Matrix pinv(n, m);
  for (std::size_t t = 0; t < svd.sigma.size(); ++t) {
    const double inv = 1.0 / svd.sigma[t];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) pinv(i, j) += inv * svd.v[t][i] * svd.u[t][j];
  }
  return pinv;
}

std::size_t numeric_rank(const Matrix& a, double tol) {
  return thin_svd(a, tol).sigma.size();
}

}  // namespace dgsp
