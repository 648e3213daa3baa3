#include "superflag/qlinalg.hpp"

#include <sstream>
#include <stdexcept>

namespace superflag {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      Rational r(text, 10);
      r.canonicalize();
      return r;
    }
    Rational r(text.substr(0, slash) + "/" + text.substr(slash + 1), 10);
    if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("parse_rational: malformed '" + text + "'");
  }
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMatrix QMatrix::mul(const QMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("QMatrix::mul: shape mismatch");
  QMatrix r(rows_, other.cols_);
  Rational scratch;  // hoisted so GMP reuses its limbs across the loops
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (sgn(aik) == 0) continue;
      for (int j = 0; j < other.cols_; ++j) {
        const Rational& bkj = other.at(k, j);
        if (sgn(bkj) == 0) continue;
        Rational& dst = r.at(i, j);
        mpq_mul(scratch.get_mpq_t(), aik.get_mpq_t(), bkj.get_mpq_t());
        mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), scratch.get_mpq_t());
      }
    }
  return r;
}

QMatrix QMatrix::add(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("QMatrix::add: shape mismatch");
  QMatrix r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + other.data_[i];
  return r;
}

QMatrix QMatrix::sub(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("QMatrix::sub: shape mismatch");
  QMatrix r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - other.data_[i];
  return r;
}

QMatrix QMatrix::scaled(const Rational& c) const {
  QMatrix r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
  return r;
}

std::vector<Rational> QMatrix::mul_vec(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("QMatrix::mul_vec: shape mismatch");
  std::vector<Rational> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Rational& aij = at(i, j);
      if (sgn(aij) != 0 && sgn(v[j]) != 0) r[i] += aij * v[j];
    }
  return r;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool QMatrix::operator==(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != other.data_[i]) return false;
  return true;
}

std::vector<int> QMatrix::rref() {
  std::vector<int> pivots;
  Rational inv, f, scratch;
  int lead = 0;
  for (int col = 0; col < cols_ && lead < rows_; ++col) {
    int p = -1;
    for (int i = lead; i < rows_; ++i)
      if (sgn(at(i, col)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != lead)
      for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(lead, j));
    mpq_inv(inv.get_mpq_t(), at(lead, col).get_mpq_t());
    for (int j = col; j < cols_; ++j) {
      Rational& e = at(lead, j);
      if (sgn(e) != 0) mpq_mul(e.get_mpq_t(), e.get_mpq_t(), inv.get_mpq_t());
    }
    for (int i = 0; i < rows_; ++i) {
      if (i == lead) continue;
      if (sgn(at(i, col)) == 0) continue;
      mpq_set(f.get_mpq_t(), at(i, col).get_mpq_t());
      for (int j = col; j < cols_; ++j) {
        const Rational& lead_j = at(lead, j);
        if (sgn(lead_j) == 0) continue;
        Rational& e = at(i, j);
        mpq_mul(scratch.get_mpq_t(), f.get_mpq_t(), lead_j.get_mpq_t());
        mpq_sub(e.get_mpq_t(), e.get_mpq_t(), scratch.get_mpq_t());
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

int QMatrix::rank() const {
  QMatrix copy = *this;
  return static_cast<int>(copy.rref().size());
}

QMatrix QMatrix::nullspace() const {
  QMatrix r = *this;
  std::vector<int> pivots = r.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (int p : pivots) is_pivot[p] = true;
  int nfree = cols_ - static_cast<int>(pivots.size());
  QMatrix basis(cols_, nfree);
  int b = 0;
  for (int col = 0; col < cols_; ++col) {
    if (is_pivot[col]) continue;
    basis.at(col, b) = 1;
    for (size_t row = 0; row < pivots.size(); ++row)
      basis.at(pivots[row], b) = -r.at(static_cast<int>(row), col);
    ++b;
  }
  return basis;
}

std::optional<QMatrix> QMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  QMatrix aug = hstack(*this, identity(rows_));
  std::vector<int> pivots = aug.rref();
  if (static_cast<int>(pivots.size()) != rows_ || pivots.back() >= rows_)
    return std::nullopt;
  QMatrix inv(rows_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, rows_ + j);
  return inv;
}

QMatrix QMatrix::hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
  QMatrix r(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
  }
  return r;
}

QMatrix QMatrix::vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
  QMatrix r(a.rows_ + b.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r.at(a.rows_ + i, j) = b.at(i, j);
  return r;
}

QMatrix QMatrix::columns(const std::vector<int>& idx) const {
  QMatrix r(rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, idx[j]);
  return r;
}

LinearSolver::LinearSolver(const QMatrix& a) : rows_(a.rows()), cols_(a.cols()) {
  QMatrix aug = QMatrix::hstack(a, QMatrix::identity(rows_));
  std::vector<int> pivots = aug.rref();
  // Keep only pivots that land in the A-part; trailing identity pivots mean
  // rows of A were dependent, which is fine.
  for (int p : pivots)
    if (p < cols_) pivot_cols_.push_back(p);
  transform_ = QMatrix(rows_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rows_; ++j) transform_.at(i, j) = aug.at(i, cols_ + j);
  rref_a_ = QMatrix(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) rref_a_.at(i, j) = aug.at(i, j);
}

std::optional<std::vector<Rational>> LinearSolver::solve(
    const std::vector<Rational>& b) const {
  std::vector<Rational> y = transform_.mul_vec(b);
  std::vector<Rational> x(cols_);
  // Rows beyond the pivot count must vanish for consistency. Rows within the
  // pivot count may still involve free columns; the minimal solution sets
  // free coordinates to zero, which requires those rows to have no residue
  // outside the pivot pattern only when A has full column rank. All call
  // sites use bases (full column rank), so back-reading pivots suffices.
  int nr = static_cast<int>(pivot_cols_.size());
  for (int i = nr; i < rows_; ++i)
    if (sgn(y[i]) != 0) return std::nullopt;
  for (int i = 0; i < nr; ++i) x[pivot_cols_[i]] = y[i];
  // Verify exactly (protects against free-column residue on non-basis input).
  std::vector<Rational> check = rref_a_.mul_vec(x);
  for (int i = 0; i < rows_; ++i)
    if (check[i] != y[i]) return std::nullopt;
  return x;
}

QMatrix column_space_canonical(const QMatrix& m) {
  QMatrix t = m.transpose();
  std::vector<int> pivots = t.rref();
  QMatrix canon(m.rows(), static_cast<int>(pivots.size()));
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int i = 0; i < m.rows(); ++i) canon.at(i, static_cast<int>(r)) = t.at(static_cast<int>(r), i);
  return canon;
}

bool subspace_equal(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) return false;
  return column_space_canonical(a) == column_space_canonical(b);
}

bool subspace_contains(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) return false;
  return QMatrix::hstack(a, b).rank() == a.rank();
}

bool subspace_contains_vector(const QMatrix& a, const std::vector<Rational>& v) {
  QMatrix vm(a.rows(), 1);
  for (int i = 0; i < a.rows(); ++i) vm.at(i, 0) = v[i];
  return subspace_contains(a, vm);
}

QMatrix subspace_intersect(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("subspace_intersect: ambient mismatch");
  // Solve a*x = b*y; kernel of [a | -b] projected through a.
  QMatrix stacked = QMatrix::hstack(a, b.scaled(Rational(-1)));
  QMatrix ker = stacked.nullspace();
  QMatrix xs(a.cols(), ker.cols());
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < ker.cols(); ++j) xs.at(i, j) = ker.at(i, j);
  return column_space_canonical(a.mul(xs));
}

QMatrix left_annihilator(const QMatrix& a) {
  return a.transpose().nullspace().transpose();
}

}  // namespace superflag
