#include "superflag/supermatrix.hpp"

#include <sstream>

namespace superflag {

SuperMatrix::SuperMatrix(BlockDims rows, BlockDims cols, int generators,
                         Parity matrix_parity)
    : rows_(rows), cols_(cols), gens_(generators), mparity_(matrix_parity) {
  entries_.assign(static_cast<size_t>(rows.total()) * cols.total(),
                  GrassmannElement(generators));
}

Parity SuperMatrix::required_parity(int i, int j) const {
  Parity pos = (i < rows_.even ? Parity::Even : Parity::Odd) +
               (j < cols_.even ? Parity::Even : Parity::Odd);
  return pos + mparity_;
}

void SuperMatrix::set(int i, int j, GrassmannElement value) {
  if (i < 0 || i >= rows_.total() || j < 0 || j >= cols_.total())
    throw std::invalid_argument("SuperMatrix::set: index out of range");
  if (value.generators() != gens_)
    throw std::invalid_argument("SuperMatrix::set: mismatched generator counts");
  if (!value.has_pure_parity(required_parity(i, j)))
    throw std::invalid_argument("SuperMatrix::set: parity discipline violation");
  mutable_at(i, j) = std::move(value);
}

SuperMatrix SuperMatrix::identity(BlockDims dims, int generators) {
  SuperMatrix m(dims, dims, generators);
  for (int i = 0; i < dims.total(); ++i)
    m.mutable_at(i, i) = GrassmannElement::constant(generators, Rational(1));
  return m;
}

SuperMatrix SuperMatrix::block_swap(BlockDims dims, int generators) {
  if (dims.even != dims.odd)
    throw std::invalid_argument("block_swap: needs even == odd size");
  SuperMatrix m(dims, dims, generators, Parity::Odd);
  for (int i = 0; i < dims.even; ++i) {
    m.mutable_at(i, dims.even + i) = GrassmannElement::constant(generators, Rational(1));
    m.mutable_at(dims.even + i, i) = GrassmannElement::constant(generators, Rational(1));
  }
  return m;
}

SuperMatrix SuperMatrix::from_rational(BlockDims rows, BlockDims cols,
                                       const QMatrix& body, int generators,
                                       Parity matrix_parity) {
  if (body.rows() != rows.total() || body.cols() != cols.total())
    throw std::invalid_argument("from_rational: shape mismatch");
  SuperMatrix m(rows, cols, generators, matrix_parity);
  for (int i = 0; i < body.rows(); ++i)
    for (int j = 0; j < body.cols(); ++j) {
      if (sgn(body.at(i, j)) == 0) continue;
      m.set(i, j, GrassmannElement::constant(generators, body.at(i, j)));
    }
  return m;
}

SuperMatrix SuperMatrix::mul(const SuperMatrix& other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("SuperMatrix::mul: block shape mismatch");
  if (gens_ != other.gens_)
    throw std::invalid_argument("SuperMatrix::mul: mismatched generator counts");
  if (gens_ == 0)  // generator-free matrices are plain rational data
    return from_rational(rows_, other.cols_, body().mul(other.body()), 0,
                         mparity_ + other.mparity_);
  SuperMatrix r(rows_, other.cols_, gens_, mparity_ + other.mparity_);
  std::vector<GrassmannElement::Term> acc;
  for (int i = 0; i < rows_.total(); ++i)
    for (int j = 0; j < other.cols_.total(); ++j) {
      acc.clear();
      for (int k = 0; k < cols_.total(); ++k) {
        const GrassmannElement& aik = at(i, k);
        const GrassmannElement& bkj = other.at(k, j);
        if (aik.is_zero() || bkj.is_zero()) continue;
        GrassmannElement::accumulate_product(acc, aik, bkj);
      }
      if (!acc.empty())
        r.mutable_at(i, j) = GrassmannElement::from_terms(gens_, std::move(acc));
    }
  return r;
}

SuperMatrix SuperMatrix::add(const SuperMatrix& other) const {
  if (!(rows_ == other.rows_) || !(cols_ == other.cols_) || mparity_ != other.mparity_)
    throw std::invalid_argument("SuperMatrix::add: shape/parity mismatch");
  SuperMatrix r(rows_, cols_, gens_, mparity_);
  for (size_t i = 0; i < entries_.size(); ++i)
    r.entries_[i] = entries_[i] + other.entries_[i];
  return r;
}

SuperMatrix SuperMatrix::sub(const SuperMatrix& other) const {
  return add(other.scaled(Rational(-1)));
}

SuperMatrix SuperMatrix::scaled(const Rational& c) const {
  SuperMatrix r(rows_, cols_, gens_, mparity_);
  for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * c;
  return r;
}

SuperMatrix SuperMatrix::scaled_left(const GrassmannElement& c) const {
  bool odd = !c.is_zero() && c.has_pure_parity(Parity::Odd);
  if (!odd && !c.has_pure_parity(Parity::Even))
    throw std::invalid_argument("scaled_left: inhomogeneous scalar");
  SuperMatrix r(rows_, cols_, gens_, odd ? mparity_ + Parity::Odd : mparity_);
  for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = c * entries_[i];
  return r;
}

bool SuperMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

bool SuperMatrix::operator==(const SuperMatrix& other) const {
  if (!(rows_ == other.rows_) || !(cols_ == other.cols_) || gens_ != other.gens_)
    return false;
  for (size_t i = 0; i < entries_.size(); ++i)
    if (!(entries_[i] == other.entries_[i])) return false;
  return true;
}

SuperMatrix SuperMatrix::supertranspose() const {
  SuperMatrix r(cols_, rows_, gens_, mparity_);
  for (int i = 0; i < rows_.total(); ++i)
    for (int j = 0; j < cols_.total(); ++j) {
      const GrassmannElement& e = at(i, j);
      if (e.is_zero()) continue;
      // Upper-right block picks up the sign.
      bool negate = (i < rows_.even) && (j >= cols_.even);
      r.mutable_at(j, i) = negate ? -e : e;
    }
  return r;
}

SuperMatrix SuperMatrix::inverse_even() const {
  if (!(rows_ == cols_))
    throw std::invalid_argument("inverse_even: not square in the block sense");
  if (mparity_ != Parity::Even)
    throw std::invalid_argument("inverse_even: odd matrix");
  QMatrix b = body();
  std::optional<QMatrix> b_inv = b.inverse();
  if (!b_inv) throw SingularBodyError("inverse_even: singular grade-0 part");
  SuperMatrix c0_inv = from_rational(rows_, cols_, *b_inv, gens_);
  // C = C0 + N with N nilpotent: C^{-1} = C0^{-1} * sum_k (-N C0^{-1})^k.
  SuperMatrix n = sub(from_rational(rows_, cols_, b, gens_));
  if (n.is_zero()) return c0_inv;
  SuperMatrix step = n.scaled(Rational(-1)).mul(c0_inv);
  SuperMatrix acc = identity(rows_, gens_);
  SuperMatrix power = step;
  while (!power.is_zero()) {
    acc = acc.add(power);
    power = power.mul(step);
  }
  return c0_inv.mul(acc);
}

QMatrix SuperMatrix::body() const {
  QMatrix b(rows_.total(), cols_.total());
  for (int i = 0; i < rows_.total(); ++i)
    for (int j = 0; j < cols_.total(); ++j) b.at(i, j) = at(i, j).body();
  return b;
}

SuperMatrix SuperMatrix::select_rows(const std::vector<int>& even_rows,
                                     const std::vector<int>& odd_rows) const {
  BlockDims out_rows{static_cast<int>(even_rows.size()),
                     static_cast<int>(odd_rows.size())};
  SuperMatrix r(out_rows, cols_, gens_, mparity_);
  int dst = 0;
  for (int src : even_rows) {
    if (src < 1 || src > rows_.even)
      throw std::invalid_argument("select_rows: even row out of range");
    for (int j = 0; j < cols_.total(); ++j) r.mutable_at(dst, j) = at(src - 1, j);
    ++dst;
  }
  for (int src : odd_rows) {
    if (src < 1 || src > rows_.odd)
      throw std::invalid_argument("select_rows: odd row out of range");
    for (int j = 0; j < cols_.total(); ++j)
      r.mutable_at(dst, j) = at(rows_.even + src - 1, j);
    ++dst;
  }
  return r;
}

std::string SuperMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_.total(); ++i) {
    os << "[";
    for (int j = 0; j < cols_.total(); ++j) {
      if (j) os << ", ";
      os << at(i, j).to_string();
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace superflag
