#include "superflag/superalgebra.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace superflag {

std::string series_name(Series s) {
  switch (s) {
    case Series::GL: return "gl";
    case Series::OSP: return "osp";
    case Series::PISP: return "pisp";
    case Series::Q: return "q";
  }
  return "?";
}

Series parse_series(const std::string& name) {
  if (name == "gl") return Series::GL;
  if (name == "osp") return Series::OSP;
  if (name == "pisp" || name == "πsp") return Series::PISP;
  if (name == "q") return Series::Q;
  throw std::invalid_argument("unknown series '" + name + "'");
}

long Root::evaluate(const std::vector<int>& point) const {
  if (point.size() != coeffs.size())
    throw std::invalid_argument("Root::evaluate: coordinate count mismatch");
  long v = 0;
  for (size_t i = 0; i < coeffs.size(); ++i) v += static_cast<long>(coeffs[i]) * point[i];
  return v;
}

bool Root::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
}

std::string Root::to_string(int num_x) const {
  std::string s;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    int c = coeffs[i];
    if (c == 0) continue;
    std::string var = (static_cast<int>(i) < num_x)
                          ? "x" + std::to_string(i + 1)
                          : "y" + std::to_string(i + 1 - num_x);
    if (c > 0 && !s.empty()) s += "+";
    if (c == -1)
      s += "-";
    else if (c != 1)
      s += std::to_string(c);
    s += var;
  }
  return s.empty() ? "0" : s;
}

int LieSuperAlgebra::dim_even() const {
  return static_cast<int>(std::count(parities.begin(), parities.end(), Parity::Even));
}

int LieSuperAlgebra::dim_odd() const { return dim() - dim_even(); }

std::vector<int> LieSuperAlgebra::indices_of(Parity p) const {
  std::vector<int> idx;
  for (int i = 0; i < dim(); ++i)
    if (parities[i] == p) idx.push_back(i);
  return idx;
}

std::vector<Rational> LieSuperAlgebra::bracket(const std::vector<Rational>& x,
                                               const std::vector<Rational>& y) const {
  if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim())
    throw std::invalid_argument("bracket: coordinate length mismatch");
  std::vector<Rational> out(dim());
  for (int i = 0; i < dim(); ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; j < dim(); ++j) {
      if (is_zero(y[j])) continue;
      const Rational xy = x[i] * y[j];
      for (const auto& [t, c] : bracket_basis(i, j)) out[t] += xy * c;
    }
  }
  return out;
}

QMatrix LieSuperAlgebra::element_matrix(const std::vector<Rational>& coords) const {
  int d = m + n;
  QMatrix out(d, d);
  for (int b = 0; b < dim(); ++b) {
    if (is_zero(coords[b])) continue;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Rational& e = basis[b].at(i, j);
        if (!superflag::is_zero(e)) out.at(i, j) += coords[b] * e;
      }
  }
  return out;
}

QMatrix LieSuperAlgebra::ad_on_odd(int even_idx) const {
  if (parities[even_idx] != Parity::Even)
    throw std::invalid_argument("ad_on_odd: even basis element required");
  std::vector<int> odd = indices_of(Parity::Odd);
  int d1 = static_cast<int>(odd.size());
  QMatrix ad(d1, d1);
  for (int t = 0; t < d1; ++t)
    for (const auto& [u, c] : bracket_basis(even_idx, odd[t])) {
      // [even, odd] stays odd.
      ad.at(odd_pos_[u], t) = c;
    }
  return ad;
}

std::optional<std::vector<Rational>> LieSuperAlgebra::expand(const QMatrix& ambient) const {
  int d = m + n;
  QMatrix flat(d * d, dim());
  for (int b = 0; b < dim(); ++b)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) flat.at(i * d + j, b) = basis[b].at(i, j);
  LinearSolver solver(flat);
  std::vector<Rational> rhs(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rhs[i * d + j] = ambient.at(i, j);
  return solver.solve(rhs);
}

void LieSuperAlgebra::build_table() {
  const int d = dim();
  const int amb = m + n;
  odd_pos_.assign(d, -1);
  {
    int t = 0;
    for (int i = 0; i < d; ++i)
      if (parities[i] == Parity::Odd) odd_pos_[i] = t++;
  }
  QMatrix flat(amb * amb, d);
  for (int b = 0; b < d; ++b)
    for (int i = 0; i < amb; ++i)
      for (int j = 0; j < amb; ++j) flat.at(i * amb + j, b) = basis[b].at(i, j);
  if (flat.rank() != d)
    throw std::logic_error("build_superalgebra: basis matrices not independent");
  LinearSolver solver(flat);

  table_.assign(static_cast<size_t>(d) * d, {});
  std::vector<Rational> rhs(amb * amb);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) {
      bool both_odd = parities[i] == Parity::Odd && parities[j] == Parity::Odd;
      // [X,Y] = XY - (-1)^{p(X)p(Y)} YX
      QMatrix xy = basis[i].mul(basis[j]);
      QMatrix yx = basis[j].mul(basis[i]);
      QMatrix s = both_odd ? xy.add(yx) : xy.sub(yx);
      for (int a = 0; a < amb; ++a)
        for (int b = 0; b < amb; ++b) rhs[a * amb + b] = s.at(a, b);
      auto coords = solver.solve(rhs);
      if (!coords)
        throw std::logic_error(
            "build_superalgebra: bracket of basis elements escapes the span");
      SparseVec sv;
      for (int t = 0; t < d; ++t)
        if (!is_zero((*coords)[t])) sv.emplace_back(t, (*coords)[t]);
      // [Y,X] = -(-1)^{p(X)p(Y)} [X,Y]
      SparseVec sv_flip;
      for (const auto& [t, c] : sv) sv_flip.emplace_back(t, both_odd ? c : -c);
      table_[static_cast<size_t>(i) * d + j] = std::move(sv);
      if (i != j) table_[static_cast<size_t>(j) * d + i] = std::move(sv_flip);
    }
}

namespace {

struct Builder {
  int amb;
  std::vector<QMatrix> basis;
  std::vector<Parity> parities;
  std::vector<std::string> names;

  explicit Builder(int ambient) : amb(ambient) {}

  /// Adds a generator from 1-based (row, col, value) unit entries.
  int add(Parity p, std::string name,
          std::initializer_list<std::tuple<int, int, int>> entries) {
    QMatrix mat(amb, amb);
    for (const auto& [r, c, v] : entries) mat.at(r - 1, c - 1) = v;
    basis.push_back(std::move(mat));
    parities.push_back(p);
    names.push_back(std::move(name));
    return static_cast<int>(basis.size()) - 1;
  }
};

std::string sub2(const std::string& base, int i, int j) {
  return base + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}
std::string sub1(const std::string& base, int i) {
  return base + "(" + std::to_string(i) + ")";
}

void build_gl(LieSuperAlgebra& g) {
  const int m = g.m, n = g.n;
  Builder b(m + n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) b.add(Parity::Even, sub2("E", i, j), {{i, j, 1}});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      b.add(Parity::Even, sub2("F", i, j), {{m + i, m + j, 1}});
  std::vector<int> upper, lower;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      upper.push_back(b.add(Parity::Odd, sub2("U", i, j), {{i, m + j, 1}}));
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= m; ++i)
      lower.push_back(b.add(Parity::Odd, sub2("L", j, i), {{m + j, i, 1}}));
  g.basis = std::move(b.basis);
  g.parities = std::move(b.parities);
  g.names = std::move(b.names);
  for (int i = 1; i <= m; ++i) g.cartan.push_back((i - 1) * m + (i - 1));
  for (int j = 1; j <= n; ++j) g.cartan.push_back(m * m + (j - 1) * n + (j - 1));
  g.num_x = m;
  g.num_y = n;
  if (!upper.empty()) g.odd_summand_indices = {upper, lower};
}

// Ambient basis for osp: (e_0,) e_1..e_p, e_{p+1}..e_{2p}, f_1..f_q, f_{q+1}..f_{2q};
// the bilinear form pairs e_i with e_{p+i} (and e_0 with itself when m is odd)
// and f_j with f_{q+j} symplectically.
void build_osp(LieSuperAlgebra& g) {
  const int m = g.m, n = g.n;
  if (n % 2 != 0) throw std::invalid_argument("osp: odd dimension must be even");
  const int p = m / 2, q = n / 2;
  const bool odd_m = (m % 2 != 0);
  const int shift = odd_m ? 1 : 0;
  auto ea = [&](int i) { return shift + i; };          // first isotropic family
  auto eb = [&](int i) { return shift + p + i; };      // dual family
  auto fc = [&](int j) { return m + j; };              // symplectic first family
  auto fd = [&](int j) { return m + q + j; };          // symplectic dual family
  Builder b(m + n);
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j)
      b.add(Parity::Even, sub2("A", i, j), {{ea(i), ea(j), 1}, {eb(j), eb(i), -1}});
  for (int i = 1; i <= p; ++i)
    for (int j = i + 1; j <= p; ++j) {
      b.add(Parity::Even, sub2("B", i, j), {{ea(i), eb(j), 1}, {ea(j), eb(i), -1}});
      b.add(Parity::Even, sub2("C", i, j), {{eb(i), ea(j), 1}, {eb(j), ea(i), -1}});
    }
  if (odd_m)
    for (int i = 1; i <= p; ++i) {
      b.add(Parity::Even, sub1("u", i), {{ea(i), 1, 1}, {1, eb(i), -1}});
      b.add(Parity::Even, sub1("v", i), {{eb(i), 1, 1}, {1, ea(i), -1}});
    }
  for (int i = 1; i <= q; ++i)
    for (int j = 1; j <= q; ++j)
      b.add(Parity::Even, sub2("Y", i, j), {{fc(i), fc(j), 1}, {fd(j), fd(i), -1}});
  for (int i = 1; i <= q; ++i)
    for (int j = i; j <= q; ++j) {
      if (i == j) {
        b.add(Parity::Even, sub2("Z", i, j), {{fc(i), fd(j), 1}});
        b.add(Parity::Even, sub2("T", i, j), {{fd(i), fc(j), 1}});
      } else {
        b.add(Parity::Even, sub2("Z", i, j), {{fc(i), fd(j), 1}, {fc(j), fd(i), 1}});
        b.add(Parity::Even, sub2("T", i, j), {{fd(i), fc(j), 1}, {fd(j), fc(i), 1}});
      }
    }
  std::vector<int> half_u, half_w;  // exchanged halves, used when m = 2
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= q; ++j) {
      half_u.push_back(
          b.add(Parity::Odd, sub2("U", i, j), {{ea(i), fc(j), 1}, {fd(j), eb(i), -1}}));
      half_u.push_back(
          b.add(Parity::Odd, sub2("U1", i, j), {{ea(i), fd(j), 1}, {fc(j), eb(i), 1}}));
      half_w.push_back(
          b.add(Parity::Odd, sub2("W", i, j), {{eb(i), fc(j), 1}, {fd(j), ea(i), -1}}));
      half_w.push_back(
          b.add(Parity::Odd, sub2("W1", i, j), {{eb(i), fd(j), 1}, {fc(j), ea(i), 1}}));
    }
  if (odd_m)
    for (int j = 1; j <= q; ++j) {
      b.add(Parity::Odd, sub1("w", j), {{1, fc(j), 1}, {fd(j), 1, -1}});
      b.add(Parity::Odd, sub1("w1", j), {{1, fd(j), 1}, {fc(j), 1, 1}});
    }
  g.basis = std::move(b.basis);
  g.parities = std::move(b.parities);
  g.names = std::move(b.names);
  for (int i = 1; i <= p; ++i) {
    auto it = std::find(g.names.begin(), g.names.end(), sub2("A", i, i));
    g.cartan.push_back(static_cast<int>(it - g.names.begin()));
  }
  for (int j = 1; j <= q; ++j) {
    auto it = std::find(g.names.begin(), g.names.end(), sub2("Y", j, j));
    g.cartan.push_back(static_cast<int>(it - g.names.begin()));
  }
  g.num_x = p;
  g.num_y = q;
  if (m == 2 && q > 0)
    g.odd_summand_indices = {half_w, half_u};
  else if (!half_u.empty() || odd_m) {
    std::vector<int> all;
    for (int i = 0; i < static_cast<int>(g.basis.size()); ++i)
      if (g.parities[i] == Parity::Odd) all.push_back(i);
    if (!all.empty()) g.odd_summand_indices = {all};
  }
}

void build_pisp(LieSuperAlgebra& g) {
  const int n = g.n;
  Builder b(2 * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      b.add(Parity::Even, sub2("X", i, j), {{i, j, 1}, {n + j, n + i, -1}});
  std::vector<int> skew, sym;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      skew.push_back(
          b.add(Parity::Odd, sub2("Y", i, j), {{i, n + j, 1}, {j, n + i, -1}}));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      if (i == j)
        sym.push_back(b.add(Parity::Odd, sub2("Z", i, j), {{n + i, j, 1}}));
      else
        sym.push_back(
            b.add(Parity::Odd, sub2("Z", i, j), {{n + i, j, 1}, {n + j, i, 1}}));
    }
  g.basis = std::move(b.basis);
  g.parities = std::move(b.parities);
  g.names = std::move(b.names);
  for (int i = 1; i <= n; ++i) g.cartan.push_back((i - 1) * n + (i - 1));
  g.num_x = n;
  g.num_y = 0;
  if (skew.empty())
    g.odd_summand_indices = {sym};
  else
    g.odd_summand_indices = {sym, skew};
}

// The odd involution is realized concretely as the block swap on the basis
// e_1..e_n, π(e_1)..π(e_n); commuting with it forces the (A B; B A) shape.
// This realization is derived from the required Cartan form
// diag(x_1..x_n, x_1..x_n) and the root data, not from a displayed matrix.
void build_q(LieSuperAlgebra& g) {
  const int n = g.n;
  Builder b(2 * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      b.add(Parity::Even, sub2("A", i, j), {{i, j, 1}, {n + i, n + j, 1}});
  std::vector<int> all;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      all.push_back(
          b.add(Parity::Odd, sub2("B", i, j), {{i, n + j, 1}, {n + i, j, 1}}));
  g.basis = std::move(b.basis);
  g.parities = std::move(b.parities);
  g.names = std::move(b.names);
  for (int i = 1; i <= n; ++i) g.cartan.push_back((i - 1) * n + (i - 1));
  g.num_x = n;
  g.num_y = 0;
  g.odd_summand_indices = {all};
}

}  // namespace

LieSuperAlgebra build_superalgebra(Series s, int m, int n) {
  if (m < 0 || n < 0 || m + n < 1)
    throw std::invalid_argument("build_superalgebra: bad dimensions");
  if ((s == Series::PISP || s == Series::Q) && m != n)
    throw std::invalid_argument("build_superalgebra: series requires m == n");
  if (s == Series::OSP && n % 2 != 0)
    throw std::invalid_argument("build_superalgebra: osp requires even n");
  LieSuperAlgebra g;
  g.series = s;
  g.m = m;
  g.n = n;
  switch (s) {
    case Series::GL: build_gl(g); break;
    case Series::OSP: build_osp(g); break;
    case Series::PISP: build_pisp(g); break;
    case Series::Q: build_q(g); break;
  }
  g.build_table();
  return g;
}

const LieSuperAlgebra& get_algebra(Series s, int m, int n) {
  static std::mutex mu;
  static std::map<std::tuple<Series, int, int>, std::unique_ptr<LieSuperAlgebra>> cache;
  std::scoped_lock lock(mu);
  auto key = std::make_tuple(s, m, n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<LieSuperAlgebra>(build_superalgebra(s, m, n)))
             .first;
  return *it->second;
}

RootSystem root_decomposition(const LieSuperAlgebra& g) {
  const int d = g.dim();
  if (d == 0) {
    RootSystem trivial;
    trivial.cartan_basis = QMatrix(0, 0);
    trivial.zero_odd_basis = QMatrix(0, 0);
    return trivial;
  }
  struct Piece {
    std::vector<int> weight;
    Parity parity;
    QMatrix basis;  // d x k columns
  };
  std::vector<Piece> pieces;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    std::vector<int> idx = g.indices_of(p);
    if (idx.empty()) continue;
    QMatrix b(d, static_cast<int>(idx.size()));
    for (size_t t = 0; t < idx.size(); ++t) b.at(idx[t], static_cast<int>(t)) = 1;
    pieces.push_back({{}, p, std::move(b)});
  }
  for (int coord : g.cartan) {
    std::vector<Rational> h(d);
    h[coord] = 1;
    std::vector<Piece> next;
    for (Piece& piece : pieces) {
      const int k = piece.basis.cols();
      LinearSolver solver(piece.basis);
      QMatrix ad(k, k);
      for (int c = 0; c < k; ++c) {
        std::vector<Rational> v(d);
        for (int i = 0; i < d; ++i) v[i] = piece.basis.at(i, c);
        std::vector<Rational> w = g.bracket(h, v);
        auto coords = solver.solve(w);
        if (!coords)
          throw std::logic_error(
              "root_decomposition: adjoint Cartan action does not preserve an "
              "eigenspace (construction bug)");
        for (int r = 0; r < k; ++r) ad.at(r, c) = (*coords)[r];
      }
      int found = 0;
      for (int lam = -2; lam <= 2; ++lam) {
        QMatrix shifted = ad;
        for (int i = 0; i < k; ++i) shifted.at(i, i) -= lam;
        QMatrix ker = shifted.nullspace();
        if (ker.cols() == 0) continue;
        Piece child;
        child.weight = piece.weight;
        child.weight.push_back(lam);
        child.parity = piece.parity;
        child.basis = piece.basis.mul(ker);
        found += ker.cols();
        next.push_back(std::move(child));
      }
      if (found != k)
        throw std::logic_error(
            "root_decomposition: non-diagonalizable adjoint action "
            "(construction bug)");
    }
    pieces = std::move(next);
  }

  RootSystem rs;
  std::vector<QMatrix> zero_even;
  for (Piece& piece : pieces) {
    bool zero = std::all_of(piece.weight.begin(), piece.weight.end(),
                            [](int w) { return w == 0; });
    if (zero && piece.parity == Parity::Even) {
      zero_even.push_back(std::move(piece.basis));
    } else if (zero) {
      rs.zero_odd_basis = column_space_canonical(piece.basis);
    } else {
      rs.roots.push_back({Root{piece.weight, piece.parity},
                          column_space_canonical(piece.basis)});
    }
  }
  if (zero_even.size() != 1)
    throw std::logic_error("root_decomposition: missing Cartan part");
  rs.cartan_basis = column_space_canonical(zero_even.front());
  // The zero weight space of the even part must be exactly the Cartan.
  QMatrix t(d, static_cast<int>(g.cartan.size()));
  for (size_t i = 0; i < g.cartan.size(); ++i) t.at(g.cartan[i], static_cast<int>(i)) = 1;
  if (!subspace_equal(rs.cartan_basis, t))
    throw std::logic_error(
        "root_decomposition: even centralizer of t exceeds t (construction bug)");
  if (rs.zero_odd_basis.rows() == 0) rs.zero_odd_basis = QMatrix(d, 0);
  std::sort(rs.roots.begin(), rs.roots.end(), [](const RootSpace& a, const RootSpace& b) {
    if (a.root.parity != b.root.parity) return a.root.parity < b.root.parity;
    return a.root.coeffs < b.root.coeffs;
  });
  return rs;
}

const RootSystem& get_root_system(Series s, int m, int n) {
  const LieSuperAlgebra& g = get_algebra(s, m, n);
  static std::mutex mu;
  static std::map<std::tuple<Series, int, int>, std::unique_ptr<RootSystem>> cache;
  std::scoped_lock lock(mu);
  auto key = std::make_tuple(s, m, n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<RootSystem>(root_decomposition(g))).first;
  return *it->second;
}

std::vector<QMatrix> odd_summands(const LieSuperAlgebra& g) {
  std::vector<int> odd = g.indices_of(Parity::Odd);
  std::vector<int> pos(g.dim(), -1);
  for (size_t t = 0; t < odd.size(); ++t) pos[odd[t]] = static_cast<int>(t);
  std::vector<QMatrix> out;
  for (const auto& piece : g.odd_summand_indices) {
    QMatrix b(static_cast<int>(odd.size()), static_cast<int>(piece.size()));
    for (size_t c = 0; c < piece.size(); ++c) b.at(pos[piece[c]], static_cast<int>(c)) = 1;
    out.push_back(std::move(b));
  }
  return out;
}

LieSuperAlgebra gr_superalgebra(const LieSuperAlgebra& g) {
  LieSuperAlgebra out = g;
  out.is_gr = true;
  const int d = g.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (g.parities[i] == Parity::Odd && g.parities[j] == Parity::Odd)
        out.table_[static_cast<size_t>(i) * d + j].clear();
  return out;
}

bool same_bracket_table(const LieSuperAlgebra& a, const LieSuperAlgebra& b) {
  return a.table_ == b.table_;
}

}  // namespace superflag
