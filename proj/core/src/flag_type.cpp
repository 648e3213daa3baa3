#include "superflag/flag_type.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace superflag {

namespace {

void validate(const FlagType& ft) {
  const int r = ft.stages();
  if (r < 1) throw std::invalid_argument("flag type: empty stage list");
  if (ft.l.size() != ft.k.size())
    throw std::invalid_argument("flag type: k and l must have equal length");
  if (ft.m < 0 || ft.n < 0 || ft.m + ft.n < 1)
    throw std::invalid_argument("flag type: bad ambient dimensions");
  for (int s = 0; s < r; ++s)
    if (ft.k[s] < 0 || ft.l[s] < 0)
      throw std::invalid_argument("flag type: negative stage size");
  if (ft.k[0] > ft.m || ft.l[0] > ft.n)
    throw std::invalid_argument("flag type: stage exceeds ambient dimension");
  for (int s = 0; s + 1 < r; ++s)
    if (ft.k[s + 1] > ft.k[s] || ft.l[s + 1] > ft.l[s])
      throw std::invalid_argument("flag type: tuples must be non-increasing");
  for (int s = 0; s < r; ++s) {
    int sum = ft.k[s] + ft.l[s];
    int next = (s + 1 < r) ? ft.k[s + 1] + ft.l[s + 1] : 0;
    if (!(next < sum))
      throw std::invalid_argument("flag type: stage sizes must strictly decrease");
  }
  if (ft.k[0] + ft.l[0] >= ft.m + ft.n)
    throw std::invalid_argument("flag type: first stage must be proper");
  switch (ft.series) {
    case Series::GL:
      break;
    case Series::OSP:
      if (ft.n % 2 != 0) throw std::invalid_argument("osp flag: n must be even");
      if (ft.k[0] > ft.m / 2)
        throw std::invalid_argument("osp flag: k_1 exceeds floor(m/2)");
      if (ft.l[0] > ft.n / 2)
        throw std::invalid_argument("osp flag: l_1 exceeds n/2");
      break;
    case Series::PISP:
      if (ft.m != ft.n) throw std::invalid_argument("pisp flag: m must equal n");
      if (ft.k[0] + ft.l[0] > ft.n)
        throw std::invalid_argument("pisp flag: k_1 + l_1 exceeds n");
      break;
    case Series::Q:
      if (ft.m != ft.n) throw std::invalid_argument("q flag: m must equal n");
      if (ft.k != ft.l) throw std::invalid_argument("q flag: l must equal k");
      break;
  }
}

}  // namespace

FlagType FlagType::make(Series series, int m, int n, std::vector<int> k,
                        std::vector<int> l) {
  FlagType ft{series, m, n, std::move(k), std::move(l)};
  validate(ft);
  return ft;
}

std::string FlagType::to_string() const {
  std::ostringstream os;
  os << series_name(series) << "(" << m << "|" << n << ") (";
  for (size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << "|";
  for (size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
  os << ")";
  return os.str();
}

namespace {

void extend_chains(Series series, int m, int n, int max_r,
                   std::vector<int>& k, std::vector<int>& l,
                   std::vector<FlagType>& out) {
  if (!k.empty()) {
    try {
      out.push_back(FlagType::make(series, m, n, k, l));
    } catch (const std::invalid_argument&) {
      // prefix not a valid flag type on its own; deeper stages may still be
    }
  }
  if (static_cast<int>(k.size()) == max_r) return;
  int prev_k = k.empty() ? m : k.back();
  int prev_l = l.empty() ? n : l.back();
  int prev_sum = k.empty() ? m + n : k.back() + l.back();
  for (int kk = prev_k; kk >= 0; --kk)
    for (int ll = prev_l; ll >= 0; --ll) {
      if (kk + ll >= prev_sum || kk + ll < 1) continue;
      if (series == Series::Q && kk != ll) continue;
      k.push_back(kk);
      l.push_back(ll);
      extend_chains(series, m, n, max_r, k, l, out);
      k.pop_back();
      l.pop_back();
    }
}

}  // namespace

std::vector<FlagType> enumerate_flag_types(Series series, int max_m, int max_n,
                                           int max_r) {
  std::vector<FlagType> out;
  for (int m = 0; m <= max_m; ++m)
    for (int n = 0; n <= max_n; ++n) {
      if (m + n < 1) continue;
      if (series == Series::OSP && n % 2 != 0) continue;
      if ((series == Series::PISP || series == Series::Q) && m != n) continue;
      std::vector<int> k, l;
      std::vector<FlagType> chains;
      extend_chains(series, m, n, max_r, k, l, chains);
      out.insert(out.end(), chains.begin(), chains.end());
    }
  return out;
}

WeightTuple weight_tuple(const FlagType& ft) {
  const int r = ft.stages();
  WeightTuple w;
  auto stage_fill = [&](std::vector<int>& vals, const std::vector<int>& tuple) {
    // Block of stage s (1-based from the coarsest): indices tuple[s]+1 .. tuple[s-1]
    // get value s, counting stages from the deepest as the largest value.
    for (int s = r; s >= 1; --s) {
      int hi = tuple[s - 1];
      int lo = (s == r) ? 0 : tuple[s];
      for (int i = lo + 1; i <= hi; ++i) vals[i - 1] = s;
    }
  };
  switch (ft.series) {
    case Series::GL: {
      w.a.assign(ft.m, 0);
      w.b.assign(ft.n, 0);
      stage_fill(w.a, ft.k);
      stage_fill(w.b, ft.l);
      break;
    }
    case Series::OSP: {
      w.a.assign(ft.m / 2, 0);
      w.b.assign(ft.n / 2, 0);
      stage_fill(w.a, ft.k);
      stage_fill(w.b, ft.l);
      break;
    }
    case Series::PISP: {
      w.a.assign(ft.n, 0);
      stage_fill(w.a, ft.k);
      for (int s = r; s >= 1; --s) {
        int hi = ft.l[s - 1];
        int lo = (s == r) ? 0 : ft.l[s];
        for (int i = lo + 1; i <= hi; ++i) w.a[ft.n - i] = -s;
      }
      break;
    }
    case Series::Q: {
      w.a.assign(ft.n, 0);
      stage_fill(w.a, ft.k);
      break;
    }
  }
  return w;
}

std::vector<int> WeightTuple::cartan_point() const {
  std::vector<int> p = a;
  p.insert(p.end(), b.begin(), b.end());
  return p;
}

std::string WeightTuple::to_string() const {
  std::ostringstream os;
  os << "a=(";
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  if (!b.empty()) {
    os << " b=(";
    for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << ")";
  }
  return os.str();
}

bool Subalgebra::same_subspace(const Subalgebra& other) const {
  return subspace_equal(even_basis, other.even_basis) &&
         subspace_equal(odd_basis, other.odd_basis);
}

bool Subalgebra::bracket_closed() const {
  const int d = parent->dim();
  QMatrix span = QMatrix::hstack(even_basis, odd_basis);
  auto col = [&](const QMatrix& m, int c) {
    std::vector<Rational> v(d);
    for (int i = 0; i < d; ++i) v[i] = m.at(i, c);
    return v;
  };
  for (int i = 0; i < span.cols(); ++i)
    for (int j = 0; j < span.cols(); ++j) {
      std::vector<Rational> br = parent->bracket(col(span, i), col(span, j));
      if (!subspace_contains_vector(span, br)) return false;
    }
  return true;
}

bool Subalgebra::contains_cartan() const {
  const int d = parent->dim();
  for (int c : parent->cartan) {
    std::vector<Rational> v(d);
    v[c] = 1;
    if (!subspace_contains_vector(even_basis, v)) return false;
  }
  return true;
}

Subalgebra parabolic_from_weights(const LieSuperAlgebra& g, const WeightTuple& w) {
  return parabolic_from_roots(g, root_decomposition(g), w);
}

Subalgebra parabolic_from_roots(const LieSuperAlgebra& g, const RootSystem& rs,
                                const WeightTuple& w) {
  std::vector<int> point = w.cartan_point();
  const int d = g.dim();
  std::vector<QMatrix> even_parts{rs.cartan_basis};
  std::vector<QMatrix> odd_parts;
  if (rs.zero_odd_basis.cols() > 0) odd_parts.push_back(rs.zero_odd_basis);
  for (const RootSpace& space : rs.roots) {
    if (space.root.evaluate(point) < 0) continue;
    (space.root.parity == Parity::Even ? even_parts : odd_parts).push_back(space.basis);
  }
  auto join = [&](const std::vector<QMatrix>& parts) {
    QMatrix acc(d, 0);
    for (const QMatrix& p : parts) acc = QMatrix::hstack(acc, p);
    return column_space_canonical(acc);
  };
  return Subalgebra{&g, join(even_parts), join(odd_parts)};
}

std::vector<std::vector<int>> base_point(const FlagType& ft) {
  std::vector<std::vector<int>> flag;
  const int r = ft.stages();
  for (int s = 0; s < r; ++s) {
    std::vector<int> v;
    switch (ft.series) {
      case Series::GL:
        for (int i = 1; i <= ft.k[s]; ++i) v.push_back(i);
        for (int j = 1; j <= ft.l[s]; ++j) v.push_back(ft.m + j);
        break;
      case Series::OSP: {
        // e_1 sits after e_0 when m is odd.
        int shift = (ft.m % 2 != 0) ? 1 : 0;
        for (int i = 1; i <= ft.k[s]; ++i) v.push_back(shift + i);
        for (int j = 1; j <= ft.l[s]; ++j) v.push_back(ft.m + j);
        break;
      }
      case Series::PISP:
        for (int i = 1; i <= ft.k[s]; ++i) v.push_back(i);
        for (int j = ft.n - ft.l[s] + 1; j <= ft.n; ++j) v.push_back(ft.m + j);
        break;
      case Series::Q:
        for (int i = 1; i <= ft.k[s]; ++i) v.push_back(i);
        for (int i = 1; i <= ft.k[s]; ++i) v.push_back(ft.n + i);
        break;
    }
    flag.push_back(std::move(v));
  }
  return flag;
}

Subalgebra stabilizer_direct(const LieSuperAlgebra& g,
                             const std::vector<std::vector<int>>& flag) {
  const int amb = g.m + g.n;
  const int d = g.dim();
  Subalgebra out;
  out.parent = &g;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    std::vector<int> idx = g.indices_of(p);
    // Conditions: for each stage V, each basis vector t in V, each ambient
    // coordinate u outside V, the (u, t) entry of the element must vanish.
    std::vector<std::vector<Rational>> rows;
    for (const auto& v : flag) {
      std::vector<bool> inside(amb + 1, false);
      for (int t : v) inside[t] = true;
      for (int t : v)
        for (int u = 1; u <= amb; ++u) {
          if (inside[u]) continue;
          std::vector<Rational> row(idx.size());
          bool nonzero = false;
          for (size_t c = 0; c < idx.size(); ++c) {
            row[c] = g.basis[idx[c]].at(u - 1, t - 1);
            nonzero = nonzero || !is_zero(row[c]);
          }
          if (nonzero) rows.push_back(std::move(row));
        }
    }
    QMatrix cond(static_cast<int>(rows.size()), static_cast<int>(idx.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j)
        cond.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    QMatrix sol = cond.cols() == 0 ? QMatrix(0, 0) : cond.nullspace();
    // Lift from parity coordinates back to full algebra coordinates.
    QMatrix lifted(d, sol.cols());
    for (size_t c = 0; c < idx.size(); ++c)
      for (int j = 0; j < sol.cols(); ++j)
        lifted.at(idx[c], j) = sol.at(static_cast<int>(c), j);
    (p == Parity::Even ? out.even_basis : out.odd_basis) =
        column_space_canonical(lifted);
  }
  return out;
}

bool parabolic_window(const FlagType& ft) {
  switch (ft.series) {
    case Series::GL:
    case Series::Q:
      return true;
    case Series::OSP:
      return ft.m >= 1 && ft.n >= 2;
    case Series::PISP:
      return ft.n >= 2;
  }
  return false;
}

}  // namespace superflag
