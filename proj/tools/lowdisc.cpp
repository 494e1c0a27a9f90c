// lowdisc command-line front end: gen, disc, series, bounds, search,
// padic-check, reproduce.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lowdisc/bounds.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/errors.hpp"
#include "lowdisc/io.hpp"
#include "lowdisc/optimizer.hpp"
#include "lowdisc/padic.hpp"
#include "lowdisc/rng.hpp"
#include "lowdisc/sequence.hpp"

using namespace lowdisc;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& v, char sep = ' ') {
  std::ostringstream ss;
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? std::string(1, sep) : "") << v[i];
  return ss.str();
}

std::string perm_string(const Permutation& p) {
  return "(" + join(std::vector<std::uint32_t>(p.map().begin(), p.map().end()), ',') + ")";
}

// Source of a 1-D or d-D sequence shared by gen and series.
struct SequenceSource {
  std::string config_file;
  std::vector<std::uint32_t> primes;
  std::vector<std::int64_t> shifts;
  std::vector<std::string> perms;  // comma-separated maps, one per prime
  std::uint64_t start_index = 1;

  void add(CLI::App* app) {
    app->add_option("--config", config_file, "scramble configuration (JSON)");
    app->add_option("--primes", primes, "bases, e.g. --primes 2 3 5");
    app->add_option("--shifts", shifts, "shift a_i per base (default 1)");
    app->add_option("--perms", perms, "digit permutation per base, e.g. 0,2,1");
    app->add_option("--start-index", start_index, "first index n")->capture_default_str();
  }

  ScrambleConfig config() const {
    if (!config_file.empty()) return load_config(config_file);
    if (primes.empty()) throw ConfigError("give --config or --primes");
    std::vector<std::int64_t> a = shifts;
    if (a.empty()) a.assign(primes.size(), 1);
    std::vector<Permutation> pi;
    if (perms.empty()) {
      for (const auto p : primes) pi.push_back(Permutation::identity(p));
    } else {
      for (const auto& s : perms) {
        std::vector<std::uint32_t> map;
        std::stringstream ss(s);
        for (std::string tok; std::getline(ss, tok, ',');) map.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        pi.emplace_back(std::move(map));
      }
    }
    auto cfg = ScrambleConfig::from_shifts(primes, a, std::move(pi));
    cfg.start_index = start_index;
    cfg.validate();
    return cfg;
  }
};

void print_witness(std::ostream& out, const DiscrepancyResult& r) {
  out << num(r.value) << ' ' << to_string(r.method) << (r.is_exact ? " exact" : " lower-bound") << " witness "
      << (r.witness.closed ? "closed" : "open");
  for (const double y : r.witness.upper) out << ' ' << num(y);
  out << '\n';
}

// ---------------------------------------------------------------------------

int run_padic_check(std::uint32_t p_max, std::uint32_t a_max, std::size_t n_perms, const std::vector<std::size_t>& ns,
                    std::uint64_t seed) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t p = 2; p <= p_max; ++p)
    if (is_prime(p)) primes.push_back(p);

  std::size_t equi_total = 0, equi_fail = 0, disc_total = 0, disc_fail = 0;
  for (const auto p : primes) {
    SplitMix64 stream = dimension_stream(seed, p);
    std::vector<Permutation> perms{Permutation::identity(p)};
    for (std::size_t k = 0; k < n_perms; ++k) perms.push_back(random_permutation_zero_fixed(p, stream));
    for (std::uint32_t a = 1; a <= a_max; ++a) {
      if (a % p == 0) continue;
      const auto f = PermPolynomial::affine(a);
      for (const auto& pi : perms) {
        for (const auto n : ns) {
          const auto k_max = static_cast<unsigned>(std::ceil(std::log(static_cast<double>(n)) / std::log(p))) + 1;
          ++equi_total;
          if (!verify_equidistribution(f, pi, p, n, k_max)) {
            ++equi_fail;
            std::cout << "  equidistribution failed: p=" << p << " a=" << a << " pi=" << perm_string(pi) << " N=" << n
                      << '\n';
          }
          ++disc_total;
          const auto vals = relabelled_values(f, pi, p, n);
          const auto r = padic_discrepancy(vals, p);
          if (r.value != Rational(1, static_cast<__int128>(n))) {
            ++disc_fail;
            std::cout << "  p-adic discrepancy " << r.value << " != 1/" << n << ": p=" << p << " a=" << a
                      << " pi=" << perm_string(pi) << '\n';
          }
        }
      }
    }
  }
  std::cout << (equi_fail ? "FAIL" : "PASS") << " equidistribution " << equi_total - equi_fail << "/" << equi_total
            << '\n';
  std::cout << (disc_fail ? "FAIL" : "PASS") << " padic-discrepancy=1/N " << disc_total - disc_fail << "/"
            << disc_total << '\n';

  // Joint residue boxes of unit-gcd shift vectors hold floor or floor+1 points.
  std::size_t crt_total = 0, crt_fail = 0;
  SplitMix64 rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<std::uint32_t> ps{2, 3, 5, 7};
    const std::size_t d = 1 + rng.below(3);
    std::vector<std::uint32_t> P(ps.begin(), ps.begin() + static_cast<std::ptrdiff_t>(d));
    std::vector<std::int64_t> a;
    std::vector<unsigned> K;
    double modulus = 1.0;
    for (const auto p : P) {
      std::int64_t s = 1 + static_cast<std::int64_t>(rng.below(30));
      while (s % p == 0) ++s;
      a.push_back(s);
      K.push_back(static_cast<unsigned>(1 + rng.below(3)));
      modulus *= std::pow(p, K.back());
    }
    if (modulus > 1e4) continue;
    const std::size_t n = 1 + rng.below(2000);
    const auto [lo, hi] = crt_count_range(a, P, K, n);
    ++crt_total;
    if (hi - lo > 1 || lo != static_cast<std::size_t>(std::floor(n / modulus))) ++crt_fail;
  }
  std::cout << (crt_fail ? "FAIL" : "PASS") << " crt-spread<=1 " << crt_total - crt_fail << "/" << crt_total << '\n';
  return (equi_fail || disc_fail || crt_fail) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scrambled Halton subsequences: generation, discrepancy, bounds and search"};
  app.require_subcommand(1);

  // gen ---------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a point set");
  SequenceSource gen_src;
  gen_src.add(gen);
  std::size_t gen_n = 0;
  std::string gen_kind = "halton", gen_out, gen_conv;
  gen->add_option("-n,--n", gen_n, "number of points")->required();
  gen->add_option("--kind", gen_kind, "halton | hammersley | kronecker | kritzinger")->capture_default_str();
  gen->add_option("--convention", gen_conv, "Hammersley convention: paper | classic");
  std::string gen_kri = "printed";
  gen->add_option("--kritzinger-objective", gen_kri, "printed | original")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");
  gen->callback([&] {
    PointSet ps;
    if (gen_kind == "halton") {
      ps = generate_point_set(gen_src.config(), gen_n);
    } else if (gen_kind == "hammersley") {
      const auto cfg = gen_src.config();
      ps = hammersley_lift(cfg, gen_n, gen_conv.empty() ? cfg.convention : lift_convention_from_string(gen_conv));
    } else if (gen_kind == "kronecker") {
      ps = kronecker_sequence(kGoldenRatio, gen_n);
    } else if (gen_kind == "kritzinger") {
      ps = kritzinger_sequence(gen_n, kritzinger_objective_from_string(gen_kri));
    } else {
      throw ConfigError("unknown kind " + gen_kind);
    }
    if (ps.has_unit_coordinate) std::cerr << "warning: a coordinate equals 1.0 (index 0 with pi(0) = base-1)\n";
    if (gen_out.empty())
      write_point_set(std::cout, ps);
    else
      save_point_set(gen_out, ps);
  });

  // disc --------------------------------------------------------------------
  auto* disc = app.add_subcommand("disc", "star-discrepancy of a point-set file");
  std::string disc_file, disc_method = "auto";
  TaParams disc_ta;
  disc->add_option("file", disc_file, "point-set file")->required();
  disc->add_option("--method", disc_method, "auto | exact | oracle | ta | extreme")->capture_default_str();
  disc->add_option("--iterations", disc_ta.iterations, "TA iterations per restart")->capture_default_str();
  disc->add_option("--restarts", disc_ta.restarts, "TA restarts")->capture_default_str();
  disc->add_option("--seed", disc_ta.seed, "TA seed")->capture_default_str();
  disc->callback([&] {
    const PointSet ps = load_point_set(disc_file);
    DiscrepancyResult r;
    if (disc_method == "auto")
      r = star_disc_auto(ps, {}, disc_ta);
    else if (disc_method == "exact")
      r = ps.dim() == 1 ? star_disc_1d(ps) : star_disc_exact(ps);
    else if (disc_method == "oracle")
      r = star_disc_oracle(ps);
    else if (disc_method == "ta")
      r = star_disc_ta(ps, disc_ta);
    else if (disc_method == "extreme")
      r = extreme_disc_1d(ps);
    else
      throw ConfigError("unknown method " + disc_method);
    print_witness(std::cout, r);
  });

  // series ------------------------------------------------------------------
  auto* series = app.add_subcommand("series", "scaled 1-D series n*D*_n/log n as CSV, or winner counts");
  SequenceSource ser_src;
  ser_src.add(series);
  std::size_t ser_nmax = 0;
  std::string ser_kind = "halton", ser_out;
  std::vector<std::string> ser_winners;
  series->add_option("--n-max", ser_nmax, "largest prefix");
  series->add_option("--kind", ser_kind, "halton | kronecker | kritzinger")->capture_default_str();
  series->add_option("-o,--out", ser_out, "output CSV (default stdout)");
  std::string ser_kri = "printed";
  series->add_option("--kritzinger-objective", ser_kri, "printed | original")->capture_default_str();
  series->add_option("--winners", ser_winners, "count per-n winners across these series CSV files");
  series->callback([&] {
    if (!ser_winners.empty()) {
      std::vector<std::vector<std::pair<std::size_t, double>>> all;
      for (const auto& f : ser_winners) {
        std::ifstream in(f);
        if (!in) throw ConfigError("cannot open " + f);
        all.push_back(read_series_csv(in));
      }
      const auto wc = count_winners(all);
      std::cout << "file,wins_ties_all,wins_ties_none\n";
      for (std::size_t k = 0; k < all.size(); ++k)
        std::cout << ser_winners[k] << ',' << wc.ties_all[k] << ',' << wc.ties_none[k] << '\n';
      std::cout << "compared," << wc.compared << ',' << wc.compared << '\n';
      return;
    }
    if (ser_nmax < 2) throw ConfigError("--n-max >= 2 required");
    std::vector<std::pair<std::size_t, double>> s;
    if (ser_kind == "halton")
      s = scaled_series(ser_src.config(), ser_nmax);
    else if (ser_kind == "kronecker")
      s = scaled_series(kronecker_sequence(kGoldenRatio, ser_nmax).coords());
    else if (ser_kind == "kritzinger")
      s = scaled_series(kritzinger_sequence(ser_nmax, kritzinger_objective_from_string(ser_kri)).coords());
    else
      throw ConfigError("unknown kind " + ser_kind);
    if (ser_out.empty()) {
      write_series_csv(std::cout, s);
    } else {
      std::ofstream out(ser_out, std::ios::binary);
      if (!out) throw ConfigError("cannot write " + ser_out);
      write_series_csv(out, s);
    }
  });

  // bounds ------------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "closed-form bounds; one CSV row name,params...,value");
  bounds->require_subcommand(1);
  std::vector<std::uint32_t> b_bases;
  std::uint64_t b_n = 100;
  unsigned b_d = 5, b_mu = 13;
  double b_eps = 0.5, b_c = kSqrtConstant, b_q = 0.95, b_delta = 0.01, b_d0 = 0.0;
  std::optional<double> b_s;
  std::string b_kind = "atanassov_lift", b_mode = "sequence";

  auto* bv = bounds->add_subcommand("vdc", "van der Corput star-discrepancy bound");
  bv->add_option("--base", b_bases)->required()->expected(1);
  bv->add_option("-n,--n", b_n)->capture_default_str();
  bv->callback([&] { std::cout << "vdc," << b_bases[0] << ',' << b_n << ',' << num(vdc_star_bound(b_bases[0], b_n)) << '\n'; });

  auto* bsub = bounds->add_subcommand("subsequence", "leading term for scrambled subsequences (extreme)");
  bsub->add_option("--base", b_bases)->required()->expected(1);
  bsub->add_option("-n,--n", b_n)->capture_default_str();
  bsub->callback([&] {
    std::cout << "subsequence," << b_bases[0] << ',' << b_n << ',' << num(subsequence_extreme_bound(b_bases[0], b_n)) << '\n';
  });

  auto* bh = bounds->add_subcommand("halton", "leading term for Halton subsequences (extreme)");
  bh->add_option("--bases", b_bases)->required();
  bh->add_option("-n,--n", b_n)->capture_default_str();
  bh->callback([&] {
    std::cout << "halton," << join(b_bases) << ',' << b_n << ',' << num(halton_extreme_bound(b_bases, b_n)) << '\n';
  });

  auto* ba = bounds->add_subcommand("atanassov", "Atanassov bound for the Halton sequence");
  ba->add_option("--bases", b_bases)->required();
  ba->add_option("-n,--n", b_n)->capture_default_str();
  ba->add_option("--s", b_s, "free parameter s (default: dimension)");
  ba->callback([&] {
    std::cout << "atanassov," << join(b_bases) << ',' << b_n << ',' << (b_s ? num(*b_s) : "d") << ','
              << num(atanassov_star_bound(b_bases, b_n, b_s)) << '\n';
  });

  auto* bb = bounds->add_subcommand("bracketing", "bracketing cover bound d^d/d! eps^-d");
  bb->add_option("-d,--dim", b_d)->capture_default_str();
  bb->add_option("--eps", b_eps)->capture_default_str();
  bb->callback([&] { std::cout << "bracketing," << b_d << ',' << num(b_eps) << ',' << num(bracketing_bound(b_d, b_eps)) << '\n'; });

  auto* bp = bounds->add_subcommand("pipeline", "auxiliary constants behind c");
  bp->add_option("--mu", b_mu)->capture_default_str();
  bp->add_option("-d,--dim", b_d)->capture_default_str();
  bp->callback([&] {
    const auto p = cover_constant_pipeline(b_mu, b_d);
    std::cout << "pipeline,mu,d,sigma,zeta,tau_mu,c_mu,c0,c1,c,mu_minus_sigma,bracket,bracket_ok\n";
    std::cout << "pipeline," << p.mu << ',' << p.d << ',' << num(p.sigma) << ',' << num(p.zeta) << ',' << num(p.tau_mu)
              << ',' << num(p.c_mu) << ',' << num(p.c0) << ',' << num(p.c1) << ',' << num(p.c) << ','
              << num(p.mu - p.sigma) << ',' << num(p.bracket) << ',' << (p.bracket_ok ? "true" : "false") << '\n';
  });

  auto* bpr = bounds->add_subcommand("probability", "probability bound and quantile constant");
  bpr->add_option("-c,--c", b_c)->capture_default_str();
  bpr->add_option("-d,--dim", b_d)->capture_default_str();
  bpr->add_option("-q,--q", b_q)->capture_default_str();
  bpr->callback([&] {
    const auto f = probability_forms(b_c, b_d, b_q);
    std::cout << "probability," << num(b_c) << ',' << b_d << ',' << num(b_q) << ',' << num(f.prob_lower_bound) << ','
              << num(f.quantile_c) << '\n';
  });

  auto* bs = bounds->add_subcommand("sqrt", "c sqrt(d/N) and its inverse floor(c^2 d / eps^2)");
  bs->add_option("-c,--c", b_c)->capture_default_str();
  bs->add_option("-d,--dim", b_d)->capture_default_str();
  bs->add_option("-n,--n", b_n)->capture_default_str();
  bs->add_option("--eps", b_eps, "when given, print the inverse form instead");
  bs->callback([&] {
    if (bs->count("--eps"))
      std::cout << "sqrt_inverse," << num(b_c) << ',' << b_d << ',' << num(b_eps) << ','
                << sqrt_bound_inverse(b_c, b_d, b_eps) << '\n';
    else
      std::cout << "sqrt," << num(b_c) << ',' << b_d << ',' << b_n << ',' << num(sqrt_bound(b_c, b_d, b_n)) << '\n';
  });

  auto* bc = bounds->add_subcommand("crossover", "last N where the bound is >= c sqrt(d/N)");
  bc->add_option("-d,--dim", b_d)->capture_default_str();
  bc->add_option("--bound", b_kind, "hammersley_d2 | hammersley_d3 | atanassov_lift")->capture_default_str();
  bc->add_option("-c,--c", b_c)->capture_default_str();
  bc->add_option("--s", b_s, "free Atanassov parameter (default: the Halton dimension d-1)");
  bc->callback([&] {
    CrossoverBound kind = CrossoverBound::atanassov_lift;
    if (b_kind == "hammersley_d2")
      kind = CrossoverBound::hammersley_d2;
    else if (b_kind == "hammersley_d3")
      kind = CrossoverBound::hammersley_d3;
    else if (b_kind != "atanassov_lift")
      throw ConfigError("unknown bound " + b_kind);
    const auto r = crossover_threshold(b_d, kind, b_c, b_s);
    std::cout << "crossover," << b_d << ',' << b_kind << ',' << num(b_c) << ',' << r.threshold << ','
              << (r.monotone ? "monotone" : "non-monotone") << '\n';
  });

  auto* bj = bounds->add_subcommand("jump", "how far N can grow from N0 by the triangle inequality");
  bj->add_option("--n0", b_n)->required();
  bj->add_option("--d0", b_d0)->required();
  bj->add_option("-d,--dim", b_d)->capture_default_str();
  bj->add_option("-c,--c", b_c)->capture_default_str();
  bj->add_option("--mode", b_mode, "sequence | pointset")->capture_default_str();
  bj->callback([&] {
    const auto plan = jump_plan(b_n, b_d0, b_d, b_c, b_mode == "pointset" ? JumpMode::pointset : JumpMode::sequence);
    std::cout << "jump," << plan.n0 << ',' << num(plan.d0) << ',' << b_d << ',' << num(b_c) << ',' << b_mode << ','
              << num(plan.budget) << ',' << num(plan.alpha) << ',' << plan.n1 << ',' << (plan.valid ? "valid" : "invalid")
              << '\n';
  });

  auto* bm = bounds->add_subcommand("meijer", "1-D transfer from p-adic to extreme discrepancy");
  bm->add_option("--delta", b_delta)->capture_default_str();
  bm->add_option("--base", b_bases)->required()->expected(1);
  bm->callback([&] {
    std::cout << "meijer," << num(b_delta) << ',' << b_bases[0] << ',' << num(meijer_transfer_bound(b_delta, b_bases[0]))
              << '\n';
  });

  // search ------------------------------------------------------------------
  auto* search = app.add_subcommand("search", "greedy shift/permutation search");
  std::string s_mode = "greedy", s_method = "auto", s_out, s_conv = "paper";
  std::size_t s_dim = 0, s_n = 0, s_workers = 1, s_cap = 1000, s_tries = 1000;
  std::optional<double> s_target;
  std::vector<std::uint32_t> s_shifts, s_perms, s_primes;
  std::uint64_t s_seed = 1;
  search->add_option("--mode", s_mode, "greedy | 1d | inverse | hammersley")->capture_default_str();
  search->add_option("--dim", s_dim, "dimension (first primes)");
  search->add_option("--primes", s_primes, "explicit bases (overrides --dim)");
  search->add_option("--n", s_n, "number of points");
  search->add_option("--target", s_target, "target star-discrepancy (inverse mode)");
  search->add_option("--budget-shifts", s_shifts, "shifts per dimension (default: standard budget)");
  search->add_option("--budget-perms", s_perms, "permutations per shift and dimension");
  search->add_option("--seed", s_seed)->capture_default_str();
  search->add_option("--method", s_method, "exact | ta | auto")->capture_default_str();
  search->add_option("--workers", s_workers)->capture_default_str();
  search->add_option("--n-cap", s_cap, "largest N tried in inverse mode")->capture_default_str();
  search->add_option("--tries", s_tries, "evaluations per prime in hammersley mode")->capture_default_str();
  search->add_option("--convention", s_conv, "Hammersley convention")->capture_default_str();
  search->add_option("-o,--out", s_out, "write the best configuration here");
  search->callback([&] {
    SearchOptions opt;
    opt.method = search_method_from_string(s_method);
    opt.workers = s_workers;
    std::vector<std::uint32_t> primes = s_primes.empty() ? first_primes(s_dim) : s_primes;
    auto budget = [&](std::size_t d) {
      SearchBudget b = SearchBudget::standard(d, s_seed);
      if (!s_shifts.empty()) b.n_shifts = s_shifts;
      if (!s_perms.empty()) b.m_perms = s_perms;
      return b;
    };
    SearchResult r;
    if (s_mode == "greedy") {
      if (primes.empty() || s_n == 0) throw ConfigError("greedy mode needs --dim/--primes and --n");
      r = greedy_search(primes, s_n, budget(primes.size()), opt);
    } else if (s_mode == "1d") {
      if (primes.size() != 1 || s_n == 0) throw ConfigError("1d mode needs one prime and --n");
      r = search_1d(primes[0], s_n, s_shifts.empty() ? 500 : s_shifts[0], s_perms.empty() ? 500 : s_perms[0], s_seed,
                    s_workers);
    } else if (s_mode == "inverse") {
      if (!s_target || s_dim == 0) throw ConfigError("inverse mode needs --dim and --target");
      const auto inv = inverse_star_search(s_dim, *s_target, budget(s_dim), opt, s_cap);
      r = inv.search;
      std::cout << "N=" << inv.n << '\n';
    } else if (s_mode == "hammersley") {
      if (s_n < 2) throw ConfigError("hammersley mode needs --n >= 2");
      if (primes.empty()) primes = first_primes(9);
      std::vector<std::uint32_t> sb = s_shifts;
      if (sb.empty())
        for (std::size_t k = 0; k < primes.size(); ++k) sb.push_back(k == 0 ? 1000 : k == 1 ? 500 : k == 2 ? 100 : 50);
      r = hammersley_search(s_n, primes, sb, s_tries, s_seed, lift_convention_from_string(s_conv), s_workers);
    } else {
      throw ConfigError("unknown mode " + s_mode);
    }
    std::cout << "stage,prime,shift,perm,value,exact,candidates\n";
    for (const auto& t : r.trace)
      std::cout << t.dim << ',' << t.prime << ',' << t.shift << ',' << perm_string(t.perm) << ',' << num(t.value) << ','
                << (t.is_exact ? "yes" : "no") << ',' << t.candidates << '\n';
    std::cout << "value=" << num(r.value) << (r.is_exact ? " exact" : " lower-bound") << " evaluations=" << r.evaluations
              << '\n';
    if (s_out.empty())
      std::cout << config_to_json(r.config) << '\n';
    else
      save_config(s_out, r.config);
  });

  // padic-check -------------------------------------------------------------
  auto* padic = app.add_subcommand("padic-check", "equidistribution and p-adic discrepancy invariants");
  std::uint32_t pc_pmax = 11, pc_amax = 20;
  std::size_t pc_perms = 5;
  std::vector<std::size_t> pc_ns{10, 100, 1000};
  std::uint64_t pc_seed = 1;
  int padic_status = 0;
  padic->add_option("--p-max", pc_pmax)->capture_default_str();
  padic->add_option("--a-max", pc_amax)->capture_default_str();
  padic->add_option("--perms", pc_perms, "random zero-fixing permutations per prime")->capture_default_str();
  padic->add_option("--n", pc_ns, "sequence lengths")->capture_default_str();
  padic->add_option("--seed", pc_seed)->capture_default_str();
  padic->callback([&] { padic_status = run_padic_check(pc_pmax, pc_amax, pc_perms, pc_ns, pc_seed); });

  // reproduce ---------------------------------------------------------------
  auto* repro = app.add_subcommand("reproduce", "re-evaluate manifest entries against tabulated values");
  std::vector<std::string> r_files;
  ReproduceOptions r_opt;
  int repro_status = 0;
  repro->add_option("manifests", r_files, "manifest JSON files")->required();
  repro->add_flag("--include-long", r_opt.include_long, "also run entries flagged long-running");
  repro->add_option("--workers", r_opt.workers)->capture_default_str();
  repro->callback([&] {
    for (const auto& f : r_files) {
      const Manifest m = load_manifest(f);
      const auto report = reproduce(m, r_opt);
      print_report(std::cout, m, report);
      if (any_failed(report)) repro_status = 1;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 3;
  } catch (const NotFoundError& e) {
    std::cerr << "not found: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return padic_status | repro_status;
}
