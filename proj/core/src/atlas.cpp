#include "superflag/atlas.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace superflag {

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int stage_k(const FlagType& ft, int s) { return s == 0 ? ft.m : ft.k[s - 1]; }
int stage_l(const FlagType& ft, int s) { return s == 0 ? ft.n : ft.l[s - 1]; }

BlockDims stage_row_dims(const FlagType& ft, int s) {
  return {stage_k(ft, s - 1), stage_l(ft, s - 1)};
}
BlockDims stage_col_dims(const FlagType& ft, int s) {
  return {stage_k(ft, s), stage_l(ft, s)};
}

}  // namespace

std::string ChartIndex::to_string() const {
  std::ostringstream os;
  for (size_t s = 0; s < stages.size(); ++s) {
    if (s) os << ";";
    os << "(";
    for (size_t i = 0; i < stages[s].even_rows.size(); ++i)
      os << (i ? "," : "") << stages[s].even_rows[i];
    os << "|";
    for (size_t i = 0; i < stages[s].odd_rows.size(); ++i)
      os << (i ? "," : "") << stages[s].odd_rows[i];
    os << ")";
  }
  return os.str();
}

std::vector<ChartIndex> enumerate_charts(const FlagType& ft) {
  const int r = ft.stages();
  std::vector<ChartIndex> out{ChartIndex{}};
  for (int s = 1; s <= r; ++s) {
    auto evens = combinations(stage_k(ft, s - 1), stage_k(ft, s));
    auto odds = combinations(stage_l(ft, s - 1), stage_l(ft, s));
    std::vector<ChartIndex> next;
    next.reserve(out.size() * evens.size() * odds.size());
    for (const ChartIndex& prefix : out)
      for (const auto& e : evens)
        for (const auto& o : odds) {
          ChartIndex ci = prefix;
          ci.stages.push_back({e, o});
          next.push_back(std::move(ci));
        }
    out = std::move(next);
  }
  return out;
}

ChartIndex distinguished_chart(const FlagType& ft) {
  ChartIndex ci;
  for (int s = 1; s <= ft.stages(); ++s) {
    ChartStage st;
    // For osp with odd m the first ambient even coordinate pairs with itself
    // under the form, so the isotropic base flag starts one row below it.
    int shift = (ft.series == Series::OSP && ft.m % 2 != 0 && s == 1) ? 1 : 0;
    for (int i = 1; i <= stage_k(ft, s); ++i) st.even_rows.push_back(shift + i);
    if (ft.series == Series::PISP) {
      int prev = stage_l(ft, s - 1);
      for (int j = prev - stage_l(ft, s) + 1; j <= prev; ++j) st.odd_rows.push_back(j);
    } else {
      for (int j = 1; j <= stage_l(ft, s); ++j) st.odd_rows.push_back(j);
    }
    ci.stages.push_back(std::move(st));
  }
  return ci;
}

int chart_odd_coord_count(const FlagType& ft) {
  int total = 0;
  for (int s = 1; s <= ft.stages(); ++s) {
    total += (stage_k(ft, s - 1) - stage_k(ft, s)) * stage_l(ft, s);
    total += (stage_l(ft, s - 1) - stage_l(ft, s)) * stage_k(ft, s);
  }
  return total;
}

ChartPoint chart_origin(const FlagType& ft, const ChartIndex& chart, int generators) {
  if (static_cast<int>(chart.stages.size()) != ft.stages())
    throw std::invalid_argument("chart_origin: stage count mismatch");
  ChartPoint p;
  p.chart = chart;
  for (int s = 1; s <= ft.stages(); ++s) {
    SuperMatrix z(stage_row_dims(ft, s), stage_col_dims(ft, s), generators);
    const ChartStage& st = chart.stages[s - 1];
    const GrassmannElement one = GrassmannElement::constant(generators, Rational(1));
    for (size_t t = 0; t < st.even_rows.size(); ++t)
      z.set(st.even_rows[t] - 1, static_cast<int>(t), one);
    int ke = stage_k(ft, s - 1), kc = stage_k(ft, s);
    for (size_t u = 0; u < st.odd_rows.size(); ++u)
      z.set(ke + st.odd_rows[u] - 1, kc + static_cast<int>(u), one);
    p.mats.push_back(std::move(z));
  }
  return p;
}

void check_identity_rows(const FlagType& ft, const ChartPoint& p) {
  for (int s = 1; s <= ft.stages(); ++s) {
    const ChartStage& st = p.chart.stages[s - 1];
    const SuperMatrix& z = p.mats[s - 1];
    const int ke = stage_k(ft, s - 1), cols = stage_col_dims(ft, s).total();
    auto check_row = [&](int row, int one_at) {
      for (int j = 0; j < cols; ++j) {
        const GrassmannElement& e = z.at(row, j);
        bool ok = (j == one_at) ? (e.terms().size() == 1 && e.terms()[0].mask == 0 &&
                                   e.terms()[0].coeff == 1)
                                : e.is_zero();
        if (!ok) throw std::logic_error("chart point: identity rows out of place");
      }
    };
    for (size_t t = 0; t < st.even_rows.size(); ++t)
      check_row(st.even_rows[t] - 1, static_cast<int>(t));
    for (size_t u = 0; u < st.odd_rows.size(); ++u)
      check_row(ke + st.odd_rows[u] - 1,
                stage_col_dims(ft, s).even + static_cast<int>(u));
  }
}

namespace {

QMatrix body_select_rows(const FlagType& ft, int s, const ChartStage& st,
                         const QMatrix& pmat) {
  const int ke = stage_k(ft, s - 1);
  QMatrix c(static_cast<int>(st.even_rows.size() + st.odd_rows.size()), pmat.cols());
  int dst = 0;
  for (int r : st.even_rows) {
    for (int j = 0; j < pmat.cols(); ++j) c.at(dst, j) = pmat.at(r - 1, j);
    ++dst;
  }
  for (int r : st.odd_rows) {
    for (int j = 0; j < pmat.cols(); ++j) c.at(dst, j) = pmat.at(ke + r - 1, j);
    ++dst;
  }
  return c;
}

ChartPoint renormalize(const FlagType& ft, const ChartIndex& to,
                       const std::vector<SuperMatrix>& raw,
                       const SuperMatrix* left = nullptr) {
  // raw[s] is the stage matrix before renormalization at stage s+1; the
  // selected rows of the running product are divided out on the right.
  ChartPoint out;
  out.chart = to;
  if (raw[0].generators() == 0) {
    // Generator-free points are plain rational data; run the same recursion
    // on the bodies and wrap the result once.
    QMatrix carry;
    for (int s = 1; s <= ft.stages(); ++s) {
      QMatrix pmat = (s == 1) ? (left ? left->body().mul(raw[0].body()) : raw[0].body())
                              : carry.mul(raw[s - 1].body());
      QMatrix c = body_select_rows(ft, s, to.stages[s - 1], pmat);
      auto c_inv = c.inverse();
      if (!c_inv) throw SingularBodyError("transition: singular grade-0 part");
      out.mats.push_back(SuperMatrix::from_rational(
          stage_row_dims(ft, s), stage_col_dims(ft, s), pmat.mul(*c_inv), 0));
      carry = std::move(c);
    }
    check_identity_rows(ft, out);
    return out;
  }
  SuperMatrix carry;  // C_{s-1}
  for (int s = 1; s <= ft.stages(); ++s) {
    SuperMatrix pmat = (s == 1) ? (left ? left->mul(raw[0]) : raw[0])
                                : carry.mul(raw[s - 1]);
    const ChartStage& st = to.stages[s - 1];
    SuperMatrix c = pmat.select_rows(st.even_rows, st.odd_rows);
    SuperMatrix c_inv = c.inverse_even();
    out.mats.push_back(pmat.mul(c_inv));
    carry = std::move(c);
  }
  check_identity_rows(ft, out);
  return out;
}

}  // namespace

ChartPoint transition(const FlagType& ft, const ChartIndex& to, const ChartPoint& p) {
  return renormalize(ft, to, p.mats);
}

bool body_overlap(const FlagType& ft, const ChartIndex& to, const ChartPoint& p) {
  QMatrix carry;
  for (int s = 1; s <= ft.stages(); ++s) {
    QMatrix pmat = (s == 1) ? p.mats[0].body() : carry.mul(p.mats[s - 1].body());
    QMatrix c = body_select_rows(ft, s, to.stages[s - 1], pmat);
    if (c.rank() != c.rows()) return false;
    carry = std::move(c);
  }
  return true;
}

GroupElement group_identity(const FlagType& ft, int generators) {
  return {SuperMatrix::identity({ft.m, ft.n}, generators)};
}

ChartPoint group_action(const FlagType& ft, const GroupElement& l,
                        const ChartPoint& p, const ChartIndex& to) {
  if (l.mat.body().inverse() == std::nullopt)
    throw std::invalid_argument("group_action: group element body is singular");
  return renormalize(ft, to, p.mats, &l.mat);
}

SuperMatrix series_form_matrix(Series series, int m, int n, int generators) {
  auto one = [&](int sign) {
    return GrassmannElement::constant(generators, Rational(sign));
  };
  if (series == Series::OSP) {
    if (n % 2 != 0) throw std::invalid_argument("series_form_matrix: osp needs even n");
    const int p = m / 2, q = n / 2;
    const int shift = (m % 2 != 0) ? 1 : 0;
    SuperMatrix gamma({m, n}, {m, n}, generators);
    if (shift) gamma.set(0, 0, one(1));
    for (int i = 0; i < p; ++i) {
      gamma.set(shift + i, shift + p + i, one(1));
      gamma.set(shift + p + i, shift + i, one(1));
    }
    for (int j = 0; j < q; ++j) {
      gamma.set(m + j, m + q + j, one(1));
      gamma.set(m + q + j, m + j, one(-1));
    }
    return gamma;
  }
  if (series == Series::PISP) {
    if (m != n) throw std::invalid_argument("series_form_matrix: pisp needs m == n");
    SuperMatrix upsilon({n, n}, {n, n}, generators, Parity::Odd);
    for (int i = 0; i < n; ++i) {
      upsilon.set(i, n + i, one(1));
      upsilon.set(n + i, i, one(-1));
    }
    return upsilon;
  }
  throw std::invalid_argument("series_form_matrix: no invariant form for this series");
}

SuperMatrix isotropy_residual(Series series, const SuperMatrix& z1) {
  switch (series) {
    case Series::OSP:
    case Series::PISP: {
      BlockDims amb = z1.row_dims();
      SuperMatrix form =
          series_form_matrix(series, amb.even, amb.odd, z1.generators());
      return z1.supertranspose().mul(form).mul(z1);
    }
    case Series::Q: {
      if (z1.row_dims().even != z1.row_dims().odd ||
          z1.col_dims().even != z1.col_dims().odd)
        throw std::invalid_argument("isotropy_residual: q needs square blocks");
      SuperMatrix swap_rows = SuperMatrix::block_swap(z1.row_dims(), z1.generators());
      SuperMatrix swap_cols = SuperMatrix::block_swap(z1.col_dims(), z1.generators());
      return z1.sub(swap_rows.mul(z1).mul(swap_cols));
    }
    case Series::GL:
      throw std::invalid_argument("isotropy_residual: gl has no constraint");
  }
  throw std::invalid_argument("isotropy_residual: bad series");
}

bool preserves_series_structure(Series series, int m, int n, const SuperMatrix& l) {
  if (l.body().inverse() == std::nullopt) return false;
  switch (series) {
    case Series::GL:
      return true;
    case Series::OSP:
    case Series::PISP: {
      SuperMatrix form = series_form_matrix(series, m, n, l.generators());
      return l.supertranspose().mul(form).mul(l) == form;
    }
    case Series::Q: {
      SuperMatrix swap = SuperMatrix::block_swap({m, n}, l.generators());
      return swap.mul(l) == l.mul(swap);
    }
  }
  return false;
}

Rng::Rng(std::uint64_t seed) : eng_(seed ^ 0x9e3779b97f4a7c15ULL) {}

int Rng::uniform(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational Rng::small_rational(int max_abs_num, int max_den) {
  return make_rational(uniform(-max_abs_num, max_abs_num), uniform(1, max_den));
}

Rational Rng::small_nonzero(int max_abs_num, int max_den) {
  int num = 0;
  while (num == 0) num = uniform(-max_abs_num, max_abs_num);
  return make_rational(num, uniform(1, max_den));
}

namespace {

std::uint64_t chart_hash(const ChartIndex& ci) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (const ChartStage& st : ci.stages) {
    mix(0xabcd);
    for (int r : st.even_rows) mix(static_cast<std::uint64_t>(r));
    mix(0xdcba);
    for (int r : st.odd_rows) mix(static_cast<std::uint64_t>(r));
  }
  return h;
}

}  // namespace

ChartPoint sample_point(const FlagType& ft, const ChartIndex& chart,
                        std::uint64_t seed, int generators,
                        const std::vector<ChartIndex>& required_overlaps) {
  const int needed = chart_odd_coord_count(ft);
  if (generators < needed)
    throw std::invalid_argument("sample_point: not enough generators");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Rng rng(seed * 0x100000001b3ULL + chart_hash(chart) + attempt);
    ChartPoint p = chart_origin(ft, chart, generators);
    int next_gen = 1;
    for (int s = 1; s <= ft.stages(); ++s) {
      SuperMatrix& z = p.mats[s - 1];
      const ChartStage& st = chart.stages[s - 1];
      std::vector<bool> id_even(stage_k(ft, s - 1) + 1, false);
      std::vector<bool> id_odd(stage_l(ft, s - 1) + 1, false);
      for (int r : st.even_rows) id_even[r] = true;
      for (int r : st.odd_rows) id_odd[r] = true;
      const int ke = stage_k(ft, s - 1), kc = stage_k(ft, s);
      const int lc = stage_l(ft, s);
      for (int i = 1; i <= stage_k(ft, s - 1); ++i) {
        if (id_even[i]) continue;
        for (int j = 0; j < kc; ++j)
          z.set(i - 1, j, GrassmannElement::constant(generators, rng.small_rational()));
        for (int j = 0; j < lc; ++j)
          z.set(i - 1, kc + j, GrassmannElement::generator(generators, next_gen++));
      }
      for (int i = 1; i <= stage_l(ft, s - 1); ++i) {
        if (id_odd[i]) continue;
        for (int j = 0; j < kc; ++j)
          z.set(ke + i - 1, j, GrassmannElement::generator(generators, next_gen++));
        for (int j = 0; j < lc; ++j)
          z.set(ke + i - 1, kc + j,
                GrassmannElement::constant(generators, rng.small_rational()));
      }
    }
    bool ok = true;
    for (const ChartIndex& target : required_overlaps)
      if (!body_overlap(ft, target, p)) {
        ok = false;
        break;
      }
    if (ok) return p;
  }
  throw std::runtime_error("sample_point: unreachable overlap after 1000 attempts");
}

bool verify_cocycle(const FlagType& ft, const ChartIndex& i, const ChartIndex& j,
                    const ChartIndex& k, const ChartPoint& p) {
  if (!(p.chart == i)) throw std::invalid_argument("verify_cocycle: point not in chart I");
  ChartPoint via = transition(ft, k, transition(ft, j, p));
  ChartPoint direct = transition(ft, k, p);
  return via == direct;
}

namespace {

QMatrix nilpotent_exp(const QMatrix& x, const Rational& t) {
  const int d = x.rows();
  QMatrix acc = QMatrix::identity(d);
  QMatrix power = QMatrix::identity(d);
  Rational factorial(1);
  for (int k = 1; k <= d; ++k) {
    power = power.mul(x);
    if (power.is_zero()) break;
    factorial *= k;
    Rational tk = t;
    for (int a = 1; a < k; ++a) tk *= t;
    acc = acc.add(power.scaled(tk / factorial));
  }
  return acc;
}

SuperMatrix super_nilpotent_exp(const SuperMatrix& m) {
  SuperMatrix acc = SuperMatrix::identity(m.row_dims(), m.generators());
  SuperMatrix power = acc;
  Rational factorial(1);
  // Every entry has Grassmann degree >= 1, so powers die by generators()+1.
  for (int k = 1; k <= m.generators() + 1; ++k) {
    power = power.mul(m);
    if (power.is_zero()) break;
    factorial *= k;
    acc = acc.add(power.scaled(1 / factorial));
  }
  return acc;
}

/// Random rational element of the reduced group: a product of exponentials of
/// nilpotent even generators and torus factors read off the Cartan diagonals.
QMatrix sample_body_element(const LieSuperAlgebra& g, Rng& rng) {
  const int amb = g.m + g.n;
  QMatrix body = QMatrix::identity(amb);
  std::vector<int> evens = g.indices_of(Parity::Even);
  int steps = rng.uniform(2, 4);
  for (int s = 0; s < steps; ++s) {
    int pick = evens[rng.uniform(0, static_cast<int>(evens.size()) - 1)];
    bool is_cartan =
        std::find(g.cartan.begin(), g.cartan.end(), pick) != g.cartan.end();
    if (is_cartan) {
      Rational t = rng.small_nonzero(3, 2);
      QMatrix torus = QMatrix::identity(amb);
      for (int i = 0; i < amb; ++i) {
        const Rational& d = g.basis[pick].at(i, i);
        if (d == 1) torus.at(i, i) = t;
        if (d == -1) torus.at(i, i) = 1 / t;
      }
      body = body.mul(torus);
    } else {
      body = body.mul(nilpotent_exp(g.basis[pick], rng.small_rational(2, 2)));
    }
  }
  return body;
}

/// GL body: block-diagonal invertible rational matrix built from shears and
/// scalings inside each block.
QMatrix sample_gl_body(int m, int n, Rng& rng) {
  QMatrix body = QMatrix::identity(m + n);
  auto block_step = [&](int lo, int size) {
    if (size == 0) return;
    if (size == 1 || rng.uniform(0, 2) == 0) {
      int i = lo + rng.uniform(0, size - 1);
      body.at(i, i) *= rng.small_nonzero(3, 2);
      return;
    }
    int i = lo + rng.uniform(0, size - 1), j = i;
    while (j == i) j = lo + rng.uniform(0, size - 1);
    QMatrix shear = QMatrix::identity(m + n);
    shear.at(i, j) = rng.small_rational(2, 2);
    body = body.mul(shear);
  };
  int steps = rng.uniform(2, 5);
  for (int s = 0; s < steps; ++s) {
    bool odd_block = (m == 0) || (n > 0 && rng.uniform(0, 1) == 1);
    block_step(odd_block ? m : 0, odd_block ? n : m);
  }
  return body;
}

}  // namespace

GroupElement sample_group_element(Series series, int m, int n, int generators,
                                  int first_free_gen, Rng& rng) {
  const BlockDims amb{m, n};
  if (series == Series::GL) {
    SuperMatrix l = SuperMatrix::from_rational(amb, amb, sample_gl_body(m, n, rng),
                                               generators);
    // Odd-block entries get independent odd values.
    int gen = first_free_gen;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n && gen <= generators; ++j)
        if (rng.uniform(0, 1))
          l.set(i, m + j, GrassmannElement::generator(generators, gen++));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m && gen <= generators; ++i)
        if (rng.uniform(0, 1))
          l.set(m + j, i, GrassmannElement::generator(generators, gen++));
    return {l};
  }

  const LieSuperAlgebra& g = get_algebra(series, m, n);
  QMatrix body = sample_body_element(g, rng);
  SuperMatrix l0 = SuperMatrix::from_rational(amb, amb, body, generators);

  // Nilpotent part: dressed odd generators plus evens with nilpotent even
  // coefficients. The osp dressing negates the odd-row block so that the
  // tangent condition of the form-preserving group holds over the Grassmann
  // ring (the numeric odd basis satisfies the supertransposed identity with
  // the opposite sign).
  SuperMatrix nil({m, n}, {m, n}, generators);
  std::vector<int> odds = g.indices_of(Parity::Odd);
  int gen = first_free_gen;
  int odd_picks = std::min<int>(3, static_cast<int>(odds.size()));
  for (int c = 0; c < odd_picks && gen <= generators; ++c) {
    int pick = odds[rng.uniform(0, static_cast<int>(odds.size()) - 1)];
    GrassmannElement theta = GrassmannElement::generator(generators, gen++);
    SuperMatrix dressed({m, n}, {m, n}, generators);
    for (int i = 0; i < m + n; ++i)
      for (int j = 0; j < m + n; ++j) {
        const Rational& v = g.basis[pick].at(i, j);
        if (superflag::is_zero(v)) continue;
        Rational coeff = (series == Series::OSP && i >= m) ? -v : v;
        dressed.set(i, j, theta * coeff);
      }
    nil = nil.add(dressed);
  }
  if (gen + 1 <= generators) {
    std::vector<int> evens = g.indices_of(Parity::Even);
    int pick = evens[rng.uniform(0, static_cast<int>(evens.size()) - 1)];
    GrassmannElement c = GrassmannElement::generator(generators, gen) *
                         GrassmannElement::generator(generators, gen + 1);
    gen += 2;
    SuperMatrix dressed({m, n}, {m, n}, generators);
    for (int i = 0; i < m + n; ++i)
      for (int j = 0; j < m + n; ++j) {
        const Rational& v = g.basis[pick].at(i, j);
        if (!superflag::is_zero(v)) dressed.set(i, j, c * v);
      }
    nil = nil.add(dressed);
  }
  return {l0.mul(super_nilpotent_exp(nil))};
}

}  // namespace superflag
