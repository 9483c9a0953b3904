#include "homega/suite.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "homega/conditions.hpp"
#include "homega/kernels.hpp"
#include "homega/norms.hpp"
#include "homega/operators.hpp"
#include "homega/quadrature.hpp"
#include "homega/verify.hpp"
#include "homega/weights.hpp"

namespace homega::suite {

namespace {

using std::complex;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "FAIL " << what << "; ";
    }
  }
  void note(const std::string& what) { detail << what << "; "; }
};

std::vector<complex<double>> z_grid() {
  std::vector<complex<double>> zs;
  const double angles[] = {0.0, 0.9, 2.2, M_PI};
  for (int i = 1; i <= 9; ++i)
    for (double th : angles)
      zs.push_back(0.1 * i * std::exp(complex<double>(0.0, th)));
  return zs;
}

// Log of the moment of the normalized standard weight through the gamma
// function; the independent oracle for quadrature moments.
double standard_moment_oracle_log(double alpha, double x) {
  return std::log1p(alpha) - std::log(2.0) + std::lgamma((x + 1.0) / 2.0) +
         std::lgamma(alpha + 1.0) - std::lgamma((x + 1.0) / 2.0 + alpha + 1.0);
}

const std::vector<Weight>& theorem_family() {
  static const std::vector<Weight> f = {
      Weight::constant(1.0),         Weight::standard(-0.5),
      Weight::standard(0.0),         Weight::standard(1.0),
      Weight::logarithmic(0.0, 1.0), Weight::exponential_decay(1.0, 1.0)};
  return f;
}

// -- criterion bodies --------------------------------------------------------

void criterion_kernel_classical(Check& c) {
  const Weight w = Weight::constant(1.0);
  KernelSeries ks(w);
  double worst_k = 0.0, worst_b = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double t = 0.1 * i;
    for (const auto& z : z_grid()) {
      const complex<double> d = 1.0 - t * z;
      worst_k = std::max(worst_k,
                         std::abs(ks.averaged(t, z, 1e-12) - 1.0 / d));
      worst_b = std::max(
          worst_b, std::abs(ks.reproducing(t, z, 1e-12) - 1.0 / (d * d)));
    }
  }
  c.expect(worst_k <= 1e-10, "averaged kernel vs 1/(1-tz)");
  c.expect(worst_b <= 1e-10, "reproducing kernel vs 1/(1-tz)^2");
  c.note("max errs " + std::to_string(worst_k) + ", " + std::to_string(worst_b));
}

void criterion_kernel_standard(Check& c) {
  for (double alpha : {0.0, 1.0, 2.5}) {
    const Weight w = Weight::standard(alpha);
    // moments against the gamma-function oracle
    double worst_m = 0.0;
    for (double x : {0.0, 1.0, 2.0, 3.0, 7.0, 50.0, 1000.0, 31337.0}) {
      const double rel =
          std::abs(std::expm1(w.log_moment(x) -
                              standard_moment_oracle_log(alpha, x)));
      worst_m = std::max(worst_m, rel);
    }
    c.expect(worst_m <= 1e-9,
             "moments vs gamma oracle, alpha=" + std::to_string(alpha));

    KernelSeries ks(w);
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
      const double t = 0.1 * i;
      for (const auto& z : z_grid()) {
        const complex<double> oracle =
            std::pow(1.0 - t * z, -(2.0 + alpha));
        const double rel =
            std::abs(ks.reproducing(t, z, 1e-12) - oracle) / std::abs(oracle);
        worst = std::max(worst, rel);
      }
    }
    c.expect(worst <= 1e-8,
             "reproducing kernel vs power oracle, alpha=" + std::to_string(alpha));
    c.note("alpha=" + std::to_string(alpha) + " kernel rel " + std::to_string(worst));
  }
}

void criterion_operator_oracle(Check& c) {
  const Weight w = Weight::constant(1.0);
  KernelSeries ks(w);
  const auto nodes = RadialGridFunction::graded_nodes();
  std::vector<std::pair<std::string, RadialGridFunction>> fs;
  fs.emplace_back("1", RadialGridFunction::constant(1.0));
  fs.emplace_back("t", RadialGridFunction::sample([](double t) { return t; },
                                                  nodes));
  fs.emplace_back(
      "t^2", RadialGridFunction::sample([](double t) { return t * t; }, nodes));
  fs.emplace_back("f_0.5", test_function_fa(0.5, nodes));

  double worst = 0.0;
  const double angles[] = {0.0, 1.1, 2.4};
  for (const auto& [name, f] : fs) {
    for (int i = 1; i <= 9; ++i) {
      for (double th : angles) {
        const complex<double> z =
            0.1 * i * std::exp(complex<double>(0.0, th));
        const auto lhs = apply_H_point(ks, f, z, 1e-10);
        const auto rhs = hilbert_classical_oracle(f, z, 1e-12);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  c.expect(worst <= 1e-8, "pointwise operator vs classical oracle");

  const auto h1 = apply_H_point(ks, RadialGridFunction::constant(1.0), 0.5,
                                1e-10);
  c.expect(std::abs(h1 - 2.0 * std::log(2.0)) <= 1e-8,
           "H(1)(0.5) = 2 log 2");
  c.note("max pointwise err " + std::to_string(worst));
}

void criterion_theorem1_matrix(Check& c) {
  for (const Weight& w : theorem_family()) {
    const auto cls = classify_dhat(w);
    const auto probe = probe_hinfty_bloch(w);
    const bool member = cls.verdict == Verdict::Member;
    const bool bounded = probe.verdict == BoundVerdict::Bounded;
    c.expect(cls.verdict != Verdict::Inconclusive,
             w.description() + " classification inconclusive");
    c.expect(probe.verdict != BoundVerdict::Inconclusive,
             w.description() + " probe inconclusive");
    c.expect(member == bounded,
             w.description() + " doubling/Bloch verdict mismatch");
    c.note(w.description() + ": " + to_string(cls.verdict) + "/" +
           to_string(probe.verdict));
  }
}

void criterion_h1_law(Check& c) {
  const double bounded_alphas[] = {0.25, 0.5, 1.0, 2.0};
  const double diverging_alphas[] = {-0.5, -0.25, 0.0};
  auto run = [&](double alpha, BoundVerdict expected) {
    const Weight w = Weight::standard(alpha);
    const auto avg = check_h1_average(w);
    const auto box = check_carleson_box(w);
    const auto probe = probe_h1(w);
    const std::string tag = "alpha=" + std::to_string(alpha);
    c.expect(avg.verdict == expected, "h1_average " + tag);
    c.expect(box.verdict == avg.verdict, "carleson_box agreement " + tag);
    c.expect(probe.verdict == avg.verdict, "probe_h1 agreement " + tag);
    c.note(tag + ": " + to_string(avg.verdict) + "/" + to_string(box.verdict) +
           "/" + to_string(probe.verdict));
  };
  for (double a : bounded_alphas) run(a, BoundVerdict::Bounded);
  for (double a : diverging_alphas) run(a, BoundVerdict::Diverging);
}

void criterion_theorem3_matrix(Check& c) {
  for (const Weight& w : theorem_family()) {
    const auto cond = check_lp_hp(w, 2.0);
    const auto probe = probe_lp(w, 2.0);
    if (cond.hypothesis_dhat) {
      c.expect(cond.verdict == probe.verdict,
               w.description() + " condition/probe verdict mismatch");
    } else {
      // Outside the upper doubling hypothesis the equivalence genuinely
      // fails: the two-factor product stays bounded while the test-family
      // ratios explode.  Pin the observed pair.
      c.expect(cond.verdict == BoundVerdict::Bounded &&
                   probe.verdict == BoundVerdict::Diverging,
               w.description() + " non-doubling sentinel pair changed");
      c.note(w.description() + " outside hypothesis: condition " +
             to_string(cond.verdict) + ", probe " + to_string(probe.verdict));
      continue;
    }
    c.note(w.description() + ": " + to_string(cond.verdict) + "/" +
           to_string(probe.verdict));
    if (w.family() == WeightFamily::Constant) {
      const auto& lv = cond.levels;
      c.expect(lv.size() >= 2, "constant weight: missing levels");
      if (lv.size() >= 2) {
        const double change = std::abs(
            std::expm1(lv.back().log_stat - lv[lv.size() - 2].log_stat));
        c.expect(change < 0.01,
                 "constant weight: supremum not within 1% across last levels");
      }
    }
  }
}

void criterion_implications(Check& c) {
  const std::vector<Weight> omegas = {
      Weight::constant(1.0), Weight::standard(0.5), Weight::standard(1.0),
      Weight::logarithmic(0.0, 1.0)};
  const std::vector<Weight> nus = {Weight::constant(1.0), Weight::standard(1.0),
                                   Weight::power_one_minus(0.5)};
  int inconclusive = 0;
  for (double p : {1.5, 2.0, 3.0}) {
    for (const Weight& w : omegas) {
      for (const Weight& nu : nus) {
        const auto primary = check_bergman_primary(w, nu, p);
        const auto secondary = check_bergman_secondary(w, nu, p);
        const auto ap = check_ap(w, nu, p);
        const std::string tag = w.description() + "/" + nu.description() +
                                "/p=" + std::to_string(p);
        c.expect(!(primary.verdict == BoundVerdict::Bounded &&
                   secondary.verdict == BoundVerdict::Diverging),
                 "implication violated for " + tag);
        c.expect(ap.verdict == primary.verdict,
                 "quotient condition disagrees with primary for " + tag);
        if (primary.verdict == BoundVerdict::Inconclusive ||
            ap.verdict == BoundVerdict::Inconclusive)
          ++inconclusive;
      }
    }
  }
  c.note("inconclusive pairs: " + std::to_string(inconclusive));
}

void criterion_estimate_scans(Check& c) {
  for (const Weight& w : built_in_dhat_weights()) {
    const auto radial = ratio_scan_radial_kernel(w);
    c.expect(radial.stable, w.description() + " radial band unstable");
    const auto m1 = ratio_scan_m1(w);
    c.expect(m1.stable, w.description() + " m1 band unstable");
    for (double q : {1.0, 2.0}) {
      const auto gq = ratio_scan_mq_g(w, q);
      c.expect(gq.derivative_vs_reproducing.stable,
               w.description() + " G-vs-B band unstable, q=" + std::to_string(q));
      c.expect(gq.derivative_vs_estimate.stable,
               w.description() + " G-vs-estimate band unstable, q=" +
                   std::to_string(q));
    }
    if (w.family() == WeightFamily::Constant) {
      c.expect(radial.ratio_min >= 1.0 - 1e-8 && radial.ratio_max <= 1.0 + 1e-8,
               "constant-weight radial identity band exceeds 1e-8");
      c.note("identity band [" + std::to_string(radial.ratio_min) + ", " +
             std::to_string(radial.ratio_max) + "]");
    }
  }
}

std::vector<TaylorCoeffs> polynomial_corpus(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<TaylorCoeffs> out;
  for (int i = 0; i < count; ++i) {
    const int deg = 4 + (i % 3) * 10;  // degrees 4, 14, 24
    TaylorCoeffs f;
    f.c.resize(deg + 1);
    for (int n = 0; n <= deg; ++n)
      f.c[n] = complex<double>(coef(rng), coef(rng));
    out.push_back(std::move(f));
  }
  return out;
}

void criterion_norm_inclusions(Check& c) {
  const auto corpus = polynomial_corpus(30, 20250810u);
  const std::vector<Weight> nus = {Weight::constant(1.0), Weight::standard(1.0)};

  for (double p : {1.5, 2.0, 3.0}) {
    double worst_restriction = 0.0;
    for (const auto& f : corpus) {
      DiscFunction df(f);
      for (double s : {0.3, 0.6, 0.9}) {
        const double lhs =
            adaptive([&](double t) { return std::pow(sup_circle(df, t), p); },
                     0.0, s, QuadOptions{1e-8, 0.0, 400})
                .value;
        const double rhs =
            M_PI * std::pow(integral_mean(df, p, s, 1e-10), p);
        worst_restriction = std::max(worst_restriction, lhs / rhs);
      }
      for (const Weight& nu : nus) {
        const double seg =
            adaptive([&](double t) { return std::pow(std::abs(df(t)), p) *
                                             nu.tail(t); },
                     0.0, 1.0 - 1e-12, QuadOptions{1e-8, 0.0, 400})
                .value;
        const double mid =
            adaptive([&](double t) { return std::pow(sup_circle(df, t), p) *
                                             nu.tail(t); },
                     0.0, 1.0 - 1e-12, QuadOptions{1e-8, 0.0, 400})
                .value;
        const double ap = std::pow(bergman_norm(df, p, nu).value, p);
        c.expect(seg <= M_PI * mid * (1.0 + 1e-6), "segment vs sup bound");
        c.expect(mid <= 0.5 * M_PI * ap * (1.0 + 1e-6),
                 "sup-integral vs area-norm bound");
      }
    }
    c.expect(worst_restriction <= 1.0 + 1e-6,
             "restriction inequality, p=" + std::to_string(p));
    c.note("p=" + std::to_string(p) +
           " restriction lhs/rhs max " + std::to_string(worst_restriction));
  }

  // inclusion-chain ratio bands, low and high exponent sides
  auto chain_ratios = [&](double p, bool low_side) {
    double hl_vs_h = 0.0, h_vs_d = 0.0;
    double hl_vs_h2 = 0.0, h_vs_d2 = 0.0;
    for (size_t i = 0; i < corpus.size(); ++i) {
      DiscFunction df(corpus[i]);
      const double hl = std::pow(hl_norm(corpus[i], p), 1.0 / p);
      const double h = hardy_norm(df, p).value;
      const double d = dirichlet_norm(df, p).value;
      const double a = low_side ? hl / h : h / hl;
      const double b = low_side ? h / d : d / h;
      const bool small_degree = corpus[i].c.size() <= 15;
      (small_degree ? hl_vs_h : hl_vs_h2) =
          std::max(small_degree ? hl_vs_h : hl_vs_h2, a);
      (small_degree ? h_vs_d : h_vs_d2) =
          std::max(small_degree ? h_vs_d : h_vs_d2, b);
    }
    c.expect(std::isfinite(hl_vs_h2) && std::isfinite(h_vs_d2),
             "chain ratios finite");
    c.expect(hl_vs_h2 <= 4.0 * std::max(hl_vs_h, 0.25) &&
                 h_vs_d2 <= 4.0 * std::max(h_vs_d, 0.25),
             "chain ratios stable across degrees, p=" + std::to_string(p));
    c.note("p=" + std::to_string(p) + " chain maxima " +
           std::to_string(std::max(hl_vs_h, hl_vs_h2)) + ", " +
           std::to_string(std::max(h_vs_d, h_vs_d2)));
  };
  chain_ratios(1.5, true);
  chain_ratios(3.0, false);
}

struct Budget {
  const char* name;
  double seconds;
  void (*body)(Check&);
};

const Budget kCriteria[] = {
    {"kernel-oracle-classical", 5.0, criterion_kernel_classical},
    {"kernel-oracle-standard", 30.0, criterion_kernel_standard},
    {"operator-oracle", 10.0, criterion_operator_oracle},
    {"bounded-to-bloch-matrix", 120.0, criterion_theorem1_matrix},
    {"hardy1-average-law", 180.0, criterion_h1_law},
    {"lebesgue-to-hardy-matrix", 180.0, criterion_theorem3_matrix},
    {"bergman-implications", 300.0, criterion_implications},
    {"estimate-scans", 300.0, criterion_estimate_scans},
    {"norm-inclusions", 120.0, criterion_norm_inclusions},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > 9) throw std::out_of_range("criterion id must be 1..9");
  const Budget& b = kCriteria[id - 1];
  CriterionResult res;
  res.id = id;
  res.name = b.name;
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    b.body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail << "exception: " << e.what();
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (res.seconds >= b.seconds) {
    c.ok = false;
    c.detail << "runtime " << res.seconds << "s over budget " << b.seconds
             << "s; ";
  }
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " ("
     << r.seconds << "s)";
  if (!r.pass) os << " -- " << r.detail;
  return os.str();
}

}  // namespace homega::suite
