#include "fatlab/ratlin.hpp"

#include <sstream>
#include <utility>

namespace fatlab {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NotInvertibleInput: return "NotInvertibleInput";
    case ErrorKind::NotCanonicalForm: return "NotCanonicalForm";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::StructureNotVerified: return "StructureNotVerified";
    case ErrorKind::NerveCapExceeded: return "NerveCapExceeded";
    case ErrorKind::DegreeTooLow: return "DegreeTooLow";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::NotMultiplicative: return "NotMultiplicative";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::FiberNotCertified: return "FiberNotCertified";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(std::string_view s) {
  std::string str(s);
  auto bad = [&] { return Error(ErrorKind::Parse, "not a rational: '" + str + "'"); };
  if (str.empty()) throw bad();
  auto slash = str.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = str.substr(0, slash), den = slash == std::string::npos ? "1" : str.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw bad();
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_) throw Error(ErrorKind::ShapeMismatch, "ragged initializer");
    for (const auto& x : row) a_.push_back(x);
  }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, 1); }

Matrix Matrix::scalar(std::size_t n, const Rational& s) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Matrix Matrix::column(const Vector& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(ErrorKind::ShapeMismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > r_ || c0 + nc > c_) throw Error(ErrorKind::ShapeMismatch, "block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw Error(ErrorKind::ShapeMismatch, "set_block out of range");
  for (std::size_t i = 0; i < b.r_; ++i)
    for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Vector Matrix::col(std::size_t j) const {
  Vector v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorKind::ShapeMismatch, "matrix sum");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorKind::ShapeMismatch, "matrix difference");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1; }
Matrix operator*(const Rational& s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::ShapeMismatch, "product " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + " * " +
                                              std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Matrix c(a.rows(), b.cols());
  Rational t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) == 0) continue;
        t = x * b(k, j);
        c(i, j) += t;
      }
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::ShapeMismatch, "matrix-vector product");
  Vector w(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (sgn(a(i, k)) != 0 && sgn(v[k]) != 0) w[i] += a(i, k) * v[k];
  return w;
}

Vector operator+(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector sum");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vector operator-(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector difference");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vector operator*(const Rational& s, Vector v) {
  for (auto& x : v) x *= s;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

std::size_t rank(const Matrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  if (n == 0 || m == 0) return 0;
  // Clear denominators row by row, then run Bareiss over the integers.
  std::vector<mpz_class> z(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m; ++j) z[i * m + j] = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return z[i * m + j]; };
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = r;
    while (p < n && sgn(at(p, c)) == 0) ++p;
    if (p == n) continue;
    if (p != r)
      for (std::size_t j = 0; j < m; ++j) std::swap(at(p, j), at(r, j));
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < m; ++j) {
        at(i, j) = at(r, c) * at(i, j) - at(i, c) * at(r, j);
        mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

std::vector<std::size_t> reduce_rows(Matrix& a, std::size_t ncols) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::vector<Vector> kernel_basis(const Matrix& a) {
  Matrix w = a;
  auto piv = reduce_rows(w, a.cols());
  std::vector<bool> is_piv(a.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    Vector v(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -w(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix inverse(const Matrix& a) {
  if (!a.square()) throw Error(ErrorKind::NonSquare, std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  const std::size_t n = a.rows();
  Matrix w = hstack(a, Matrix::identity(n));
  auto piv = reduce_rows(w, n);
  if (piv.size() != n) throw Error(ErrorKind::NotInvertible, "rank " + std::to_string(piv.size()) + " < " + std::to_string(n));
  return w.block(0, n, n, n);
}

bool invertible(const Matrix& a) { return a.square() && rank(a) == a.rows(); }

Solution solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::ShapeMismatch, "solve right-hand side");
  Matrix w = hstack(a, Matrix::column(b));
  auto piv = reduce_rows(w, a.cols());
  for (std::size_t i = piv.size(); i < a.rows(); ++i)
    if (sgn(w(i, a.cols())) != 0) throw Error(ErrorKind::NoSolution, "inconsistent system");
  Solution s;
  s.x.assign(a.cols(), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) s.x[piv[i]] = w(i, a.cols());
  s.unique = piv.size() == a.cols();
  return s;
}

Matrix solve_matrix(const Matrix& a, const Matrix& b, bool* unique) {
  if (b.rows() != a.rows()) throw Error(ErrorKind::ShapeMismatch, "solve right-hand side");
  Matrix w = hstack(a, b);
  auto piv = reduce_rows(w, a.cols());
  for (std::size_t i = piv.size(); i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (sgn(w(i, a.cols() + j)) != 0) throw Error(ErrorKind::NoSolution, "inconsistent system");
  Matrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = w(i, a.cols() + j);
  if (unique) *unique = piv.size() == a.cols();
  return x;
}

Matrix power(const Matrix& a, unsigned k) {
  if (!a.square()) throw Error(ErrorKind::NonSquare, "power");
  Matrix r = Matrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) r = r * a;
  return r;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace fatlab
