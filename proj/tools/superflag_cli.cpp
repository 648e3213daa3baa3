// Command-line driver: classification of the function algebra, parabolic
// inspection, atlas verification, and sweep tables. Machine-readable output
// is line-delimited key=value records with fixed field order; identical
// flags and seeds give byte-identical output.

#include "superflag/atlas.hpp"
#include "superflag/classifier.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace superflag;

namespace {

std::vector<int> parse_tuple(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed tuple entry '" + tok + "'");
    }
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct FlagArgs {
  std::string series = "gl";
  int m = 0, n = 0;
  std::string k, l;
  std::string format = "human";

  FlagType resolve() const {
    Series s = parse_series(series);
    std::vector<int> kt = parse_tuple(k);
    std::vector<int> lt;
    if (s == Series::Q) {
      if (!l.empty() && parse_tuple(l) != kt)
        throw std::invalid_argument("q series takes only --k; l is mirrored");
      lt = kt;
    } else {
      lt = l.empty() ? std::vector<int>(kt.size(), 0) : parse_tuple(l);
    }
    return FlagType::make(s, m, n, std::move(kt), std::move(lt));
  }
};

void add_flag_options(CLI::App* cmd, FlagArgs& args, bool with_format = true) {
  cmd->add_option("--series", args.series, "gl | osp | pisp | q")->required();
  cmd->add_option("--m", args.m)->required();
  cmd->add_option("--n", args.n)->required();
  cmd->add_option("--k", args.k, "comma-separated stage sizes")->required();
  cmd->add_option("--l", args.l, "comma-separated stage sizes (q: omit)");
  if (with_format) cmd->add_option("--format", args.format, "human | records");
}

int run_classify(const FlagArgs& args) {
  ClassificationRecord rec = classify_record(args.resolve());
  if (args.format == "records") {
    std::cout << rec.to_record() << "\n";
  } else {
    std::cout << rec.ft.to_string() << "\n";
    std::cout << "  generic:     generator_dim=" << rec.generic.result.generator_dim
              << " (function algebra dimension " << rec.generic.result.vs_dim()
              << ")\n";
    std::cout << "  closed form: ";
    if (rec.closed.result)
      std::cout << "generator_dim=" << rec.closed.result->generator_dim;
    else
      std::cout << "n/a";
    std::cout << " [" << rec.closed.case_label << "]\n";
    std::cout << "  stabilizer odd dim " << rec.generic.h1_dim << ", annihilator dim "
              << rec.generic.ann_dim << "\n";
    std::cout << "  odd summands:";
    for (size_t i = 0; i < rec.injectivity.summand_dims.size(); ++i)
      std::cout << " dim " << rec.injectivity.summand_dims[i]
                << (rec.injectivity.injective[i] ? " (injective)" : " (meets h1)");
    std::cout << "\n  agreement: " << (rec.agree() ? "yes" : "NO") << "\n";
  }
  return rec.agree() ? 0 : 1;
}

int run_table(const std::string& series, int max_m, int max_n, int max_r,
              const std::string& format) {
  std::vector<FlagType> sweep = enumerate_flag_types(parse_series(series), max_m,
                                                     max_n, max_r);
  int disagreements = 0;
  for (const FlagType& ft : sweep) {
    ClassificationRecord rec = classify_record(ft);
    if (!rec.agree()) ++disagreements;
    if (format == "records")
      std::cout << rec.to_record() << "\n";
    else
      std::cout << rec.ft.to_string() << "  d=" << rec.generic.result.generator_dim
                << "  closed=" << rec.closed.case_label
                << (rec.agree() ? "" : "  DISAGREE") << "\n";
  }
  if (format != "records")
    std::cout << sweep.size() << " flag types, " << disagreements
              << " disagreements\n";
  return disagreements == 0 ? 0 : 1;
}

int run_parabolic(const FlagArgs& args, bool dump_roots, bool dump_basis,
                  bool dump_algebra) {
  FlagType ft = args.resolve();
  const LieSuperAlgebra& g = get_algebra(ft.series, ft.m, ft.n);
  if (dump_algebra) {
    // Ambient matrices of the algebra's basis, row-major.
    for (int b = 0; b < g.dim(); ++b) {
      std::cout << "generator name=" << g.names[b]
                << " parity=" << (g.parities[b] == Parity::Even ? "even" : "odd")
                << " mat=";
      const QMatrix& mat = g.basis[b];
      for (int i = 0; i < mat.rows(); ++i)
        for (int j = 0; j < mat.cols(); ++j)
          std::cout << ((i + j) ? "," : "") << to_string(mat.at(i, j));
      std::cout << "\n";
    }
  }
  WeightTuple w = weight_tuple(ft);
  Subalgebra par = parabolic_from_weights(g, w);
  Subalgebra stab = stabilizer_direct(g, base_point(ft));
  bool equal = par.same_subspace(stab);
  bool window = parabolic_window(ft);

  auto describe = [&](const QMatrix& basis) {
    std::vector<std::string> out;
    for (int c = 0; c < basis.cols(); ++c) {
      std::string s;
      for (int i = 0; i < g.dim(); ++i) {
        const Rational& v = basis.at(i, c);
        if (is_zero(v)) continue;
        if (!s.empty()) s += "+";
        if (v != 1) s += to_string(v) + "*";
        s += g.names[i];
      }
      out.push_back(s.empty() ? "0" : s);
    }
    return out;
  };

  if (args.format == "records") {
    std::cout << "parabolic series=" << series_name(ft.series) << " m=" << ft.m
              << " n=" << ft.n << " k=" << join(ft.k) << " l=" << join(ft.l)
              << " weights_a=" << join(w.a) << " weights_b=" << join(w.b)
              << " par_even=" << par.dim_even() << " par_odd=" << par.dim_odd()
              << " stab_even=" << stab.dim_even() << " stab_odd=" << stab.dim_odd()
              << " equal=" << (equal ? 1 : 0) << " window=" << (window ? 1 : 0)
              << "\n";
    if (dump_roots) {
      RootSystem rs = root_decomposition(g);
      for (const RootSpace& space : rs.roots)
        std::cout << "root " << space.root.to_string(g.num_x)
                  << " parity=" << (space.root.parity == Parity::Even ? "even" : "odd")
                  << " dim=" << space.basis.cols()
                  << " value=" << space.root.evaluate(w.cartan_point()) << "\n";
      if (rs.zero_odd_basis.cols() > 0)
        std::cout << "root 0 parity=odd dim=" << rs.zero_odd_basis.cols()
                  << " value=0\n";
    }
    if (dump_basis) {
      for (const std::string& s : describe(QMatrix::hstack(par.even_basis, par.odd_basis)))
        std::cout << "parabolic-basis " << s << "\n";
      for (const std::string& s : describe(QMatrix::hstack(stab.even_basis, stab.odd_basis)))
        std::cout << "stabilizer-basis " << s << "\n";
    }
  } else {
    std::cout << ft.to_string() << "\n  weights: " << w.to_string() << "\n";
    std::cout << "  parabolic (root formula): dims (" << par.dim_even() << "|"
              << par.dim_odd() << ")\n";
    std::cout << "  stabilizer (direct solve): dims (" << stab.dim_even() << "|"
              << stab.dim_odd() << ")\n";
    std::cout << "  equal as subspaces: " << (equal ? "yes" : "no")
              << (window ? "" : "  (outside the root-formula window)") << "\n";
    if (dump_basis)
      for (const std::string& s : describe(QMatrix::hstack(stab.even_basis, stab.odd_basis)))
        std::cout << "    " << s << "\n";
    if (dump_roots) {
      RootSystem rs = root_decomposition(g);
      std::cout << "  roots:";
      for (const RootSpace& space : rs.roots)
        std::cout << " " << space.root.to_string(g.num_x)
                  << (space.root.parity == Parity::Odd ? "(odd)" : "");
      std::cout << "\n";
    }
  }
  return (equal || !window) ? 0 : 1;
}

struct AtlasStats {
  long cocycle_checks = 0;
  long roundtrip_checks = 0;
  long action_checks = 0;
  long isotropy_checks = 0;
  long overlap_rejections = 0;
  long failures = 0;
};

/// Reports the first mismatching entry of two chart points in the exact
/// serialization format, so failures can be diffed offline.
void report_mismatch(const char* what, const ChartPoint& got, const ChartPoint& want) {
  for (size_t s = 0; s < got.mats.size(); ++s) {
    const SuperMatrix &a = got.mats[s], &b = want.mats[s];
    for (int i = 0; i < a.row_dims().total(); ++i)
      for (int j = 0; j < a.col_dims().total(); ++j)
        if (!(a.at(i, j) == b.at(i, j))) {
          std::cerr << "mismatch check=" << what << " stage=" << s + 1 << " entry=("
                    << i + 1 << "," << j + 1 << ") got=" << a.at(i, j).to_record()
                    << " want=" << b.at(i, j).to_record() << "\n";
          return;
        }
  }
  std::cerr << "mismatch check=" << what << " (chart labels differ)\n";
}

void verify_gl_atlas(const FlagType& ft, int seeds, AtlasStats& st) {
  std::vector<ChartIndex> charts = enumerate_charts(ft);
  const int n_point = chart_odd_coord_count(ft);
  const int gens = n_point + 6;  // room for group-element coefficients
  for (const ChartIndex& start : charts) {
    for (int seed = 1; seed <= seeds; ++seed) {
      ChartPoint p;
      try {
        p = sample_point(ft, start, seed, n_point, charts);
      } catch (const std::runtime_error&) {
        ++st.overlap_rejections;
        continue;
      }
      std::vector<ChartPoint> images;
      images.reserve(charts.size());
      bool bad = false;
      for (const ChartIndex& target : charts) {
        try {
          images.push_back(transition(ft, target, p));
        } catch (const SingularBodyError&) {
          ++st.overlap_rejections;
          bad = true;
          break;
        }
      }
      if (bad) continue;
      for (size_t j = 0; j < charts.size(); ++j) {
        // Round trip back to the start chart.
        ++st.roundtrip_checks;
        ChartPoint back = transition(ft, start, images[j]);
        if (!(back == p)) {
          ++st.failures;
          report_mismatch("roundtrip", back, p);
        }
        for (size_t k = 0; k < charts.size(); ++k) {
          ++st.cocycle_checks;
          ChartPoint via = transition(ft, charts[k], images[j]);
          if (!(via == images[k])) {
            ++st.failures;
            report_mismatch("cocycle", via, images[k]);
          }
        }
      }
      // Action: identity recovers transition; composition holds. Sampled in
      // a ring with room for the group elements' own odd coefficients.
      ChartPoint pg;
      try {
        pg = sample_point(ft, start, seed, gens, charts);
      } catch (const std::runtime_error&) {
        ++st.overlap_rejections;
        continue;
      }
      Rng rng(seed * 1315423911ULL + st.action_checks);
      GroupElement l1 = sample_group_element(ft.series, ft.m, ft.n, gens, n_point + 1, rng);
      GroupElement l2 = sample_group_element(ft.series, ft.m, ft.n, gens, n_point + 4, rng);
      try {
        ChartPoint a1 = group_action(ft, l1, pg, start);
        ChartPoint a21 = group_action(ft, l2, a1, start);
        GroupElement l21{l2.mat.mul(l1.mat)};
        ChartPoint direct = group_action(ft, l21, pg, start);
        ++st.action_checks;
        if (!(a21 == direct)) ++st.failures;
        ++st.action_checks;
        if (!(group_action(ft, group_identity(ft, gens), pg, charts[0]) ==
              transition(ft, charts[0], pg)))
          ++st.failures;
      } catch (const SingularBodyError&) {
        ++st.overlap_rejections;
      }
    }
  }
}

void verify_isotropy(const FlagType& ft, int seeds, AtlasStats& st) {
  std::vector<ChartIndex> charts;
  for (const ChartIndex& ci : enumerate_charts(ft)) {
    if (ft.series == Series::Q) {
      bool symmetric = true;
      for (const ChartStage& s : ci.stages)
        if (s.even_rows != s.odd_rows) symmetric = false;
      if (!symmetric) continue;
    }
    charts.push_back(ci);
  }
  ChartIndex home = distinguished_chart(ft);
  const int gens = 8;
  for (int seed = 1; seed <= seeds; ++seed) {
    Rng rng(seed * 2654435761ULL);
    GroupElement l = sample_group_element(ft.series, ft.m, ft.n, gens, 1, rng);
    if (!preserves_series_structure(ft.series, ft.m, ft.n, l.mat)) {
      ++st.failures;
      continue;
    }
    ChartPoint base = chart_origin(ft, home, gens);
    for (const ChartIndex& target : charts) {
      ChartPoint moved;
      try {
        moved = group_action(ft, l, base, target);
      } catch (const SingularBodyError&) {
        ++st.overlap_rejections;
        continue;
      }
      ++st.isotropy_checks;
      if (!isotropy_residual(ft.series, moved.mats[0]).is_zero()) ++st.failures;
      for (const ChartIndex& next : charts) {
        try {
          ChartPoint q = transition(ft, next, moved);
          ++st.isotropy_checks;
          if (!isotropy_residual(ft.series, q.mats[0]).is_zero()) ++st.failures;
        } catch (const SingularBodyError&) {
          ++st.overlap_rejections;
        }
      }
    }
  }
}

int run_verify_atlas(const FlagArgs& args, int seeds) {
  FlagType ft = args.resolve();
  AtlasStats st;
  if (ft.series == Series::GL) {
    verify_gl_atlas(ft, seeds, st);
  } else {
    // The subvariety lives inside the ambient atlas: check its gluing too,
    // then the series' own constraint.
    verify_gl_atlas(FlagType::make(Series::GL, ft.m, ft.n, ft.k, ft.l), seeds, st);
    verify_isotropy(ft, seeds, st);
  }
  long checks = st.cocycle_checks + st.roundtrip_checks + st.action_checks +
                st.isotropy_checks;
  if (args.format == "records") {
    std::cout << "verify-atlas series=" << series_name(ft.series) << " m=" << ft.m
              << " n=" << ft.n << " k=" << join(ft.k) << " l=" << join(ft.l)
              << " seeds=" << seeds << " cocycle=" << st.cocycle_checks
              << " roundtrip=" << st.roundtrip_checks << " action=" << st.action_checks
              << " isotropy=" << st.isotropy_checks
              << " overlap_rejections=" << st.overlap_rejections
              << " failures=" << st.failures << "\n";
  } else {
    std::cout << ft.to_string() << ": " << checks << " exact checks, "
              << st.failures << " failures, " << st.overlap_rejections
              << " overlap rejections\n";
  }
  return st.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for classical flag supermanifolds"};
  app.require_subcommand(1);

  FlagArgs classify_args;
  CLI::App* classify = app.add_subcommand(
      "classify", "function-algebra classification by both routes");
  add_flag_options(classify, classify_args);

  FlagArgs parabolic_args;
  bool dump_roots = false, dump_basis = false, dump_algebra = false;
  CLI::App* parabolic =
      app.add_subcommand("parabolic", "weights, root-formula parabolic, stabilizer");
  add_flag_options(parabolic, parabolic_args);
  parabolic->add_flag("--roots", dump_roots, "dump the root list");
  parabolic->add_flag("--basis", dump_basis, "dump subalgebra bases");
  parabolic->add_flag("--algebra", dump_algebra, "dump the algebra's basis matrices");

  FlagArgs atlas_args;
  int seeds = 10;
  CLI::App* verify = app.add_subcommand(
      "verify-atlas", "chart gluing / action / isotropy verification");
  add_flag_options(verify, atlas_args);
  verify->add_option("--seeds", seeds, "seeded points per chart");

  std::string table_series = "gl";
  int max_m = 3, max_n = 3, max_r = 2;
  std::string table_format = "human";
  CLI::App* table = app.add_subcommand("table", "sweep all valid flag types");
  table->add_option("--series", table_series)->required();
  table->add_option("--max-m", max_m)->required();
  table->add_option("--max-n", max_n)->required();
  table->add_option("--max-r", max_r);
  table->add_option("--format", table_format);

  try {
    app.parse(argc, argv);
    if (classify->parsed()) return run_classify(classify_args);
    if (parabolic->parsed())
      return run_parabolic(parabolic_args, dump_roots, dump_basis, dump_algebra);
    if (verify->parsed()) return run_verify_atlas(atlas_args, seeds);
    if (table->parsed()) {
      if (max_m < 0 || max_n < 0 || max_r < 1) {
        std::cerr << "table: bounds must be nonnegative (max-r >= 1)\n";
        return 2;
      }
      return run_table(table_series, max_m, max_n, max_r, table_format);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
