#include "homega/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "homega/errors.hpp"
#include "homega/logspace.hpp"
#include "homega/quadrature.hpp"

namespace homega {

namespace {

double u_of(int j) { return std::ldexp(1.0, -j); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Dyadic panel integrals of the weight in u = 1 - r, plus suffix sums, so a
// tail query costs one partial panel.  Grows on demand under a lock.
struct TailCache {
  std::vector<double> panel_log;   // I_j = ∫ over [2^{-j-1}, 2^{-j}]
  std::vector<double> suffix_log;  // suffix_log[j] = log Σ_{j' >= j} I_{j'}
  std::mutex mu;
};

}  // namespace

struct Weight::State {
  WeightFamily family;
  std::vector<double> params;
  Eigen::ArrayXd tab_nodes, tab_values;
  Eigen::ArrayXd tab_suffix;  // exact ∫_{node_i}^1 of the interpolant
  double quad_tol = 1e-10;

  mutable std::map<double, double> moment_cache;
  mutable std::mutex moment_mu;
  mutable TailCache tails;

  double log_value_1m(double u) const;
  double log_tail_1m(double u) const;
  double log_moment(double x) const;
  bool exact_tail() const;
  bool exact_moment() const;
};

// ---------------------------------------------------------------------------
// Pointwise evaluation

double Weight::State::log_value_1m(double u) const {
  switch (family) {
    case WeightFamily::Constant:
      return std::log(params[0]);
    case WeightFamily::Standard: {
      const double a = params[0];
      return std::log1p(a) + a * std::log(u * (2.0 - u));
    }
    case WeightFamily::PowerOneMinus:
      return params[0] * std::log(u);
    case WeightFamily::Logarithmic: {
      // (1-r)^a log(e/(1-r))^b with log(e/u) = 1 - log u >= 1 on (0,1].
      const double a = params[0], b = params[1];
      return a * std::log(u) + b * std::log(1.0 - std::log(u));
    }
    case WeightFamily::ExponentialDecay: {
      const double c = params[0], k = params[1];
      return -c * std::exp(-k * std::log(u));
    }
    case WeightFamily::Tabulated: {
      const double r = 1.0 - u;
      const auto n = tab_nodes.size();
      if (r <= tab_nodes[0]) return std::log(tab_values[0]);
      if (r >= tab_nodes[n - 1]) return std::log(tab_values[n - 1]);
      const double* begin = tab_nodes.data();
      auto i = std::upper_bound(begin, begin + n, r) - begin - 1;
      const double t = (r - tab_nodes[i]) / (tab_nodes[i + 1] - tab_nodes[i]);
      return std::log(tab_values[i] * (1.0 - t) + tab_values[i + 1] * t);
    }
  }
  return kNegInf;
}

bool Weight::State::exact_tail() const {
  if (family == WeightFamily::Logarithmic) {
    // closed form by repeated integration by parts for alpha = 0 and small
    // nonnegative integer beta
    const double b = params[1];
    return params[0] == 0.0 && b == std::floor(b) && b >= 0.0 && b <= 6.0;
  }
  return family == WeightFamily::Constant ||
         family == WeightFamily::Standard ||
         family == WeightFamily::PowerOneMinus ||
         family == WeightFamily::Tabulated;
}

bool Weight::State::exact_moment() const {
  return family == WeightFamily::Constant ||
         family == WeightFamily::Tabulated;
}

// ---------------------------------------------------------------------------
// Tail integrals

namespace {

// Exact ∫_a^b r^x (c0 + c1 r) dr without cancellation in the power
// differences; pieces of tabulated-weight moments.
double linear_piece_moment(double a, double b, double fa, double fb, double x) {
  const double c1 = (fb - fa) / (b - a);
  const double c0 = fa - c1 * a;
  const double lb = std::log(b);
  auto power_diff = [&](double y) {
    // b^y - a^y, a < b
    const double la = (a > 0.0) ? std::log(a) : kNegInf;
    return -std::exp(y * lb) * std::expm1(y * (la - lb));
  };
  const double v =
      c0 * power_diff(x + 1.0) / (x + 1.0) + c1 * power_diff(x + 2.0) / (x + 2.0);
  return std::max(v, 0.0);
}

}  // namespace

double Weight::State::log_tail_1m(double u) const {
  if (!(u > 0.0)) throw DomainError("tail: r must be < 1");
  if (u > 1.0) throw DomainError("tail: r must be >= 0");
  switch (family) {
    case WeightFamily::Constant:
      return std::log(params[0]) + std::log(u);
    case WeightFamily::PowerOneMinus: {
      const double g = params[0];
      return (g + 1.0) * std::log(u) - std::log1p(g);
    }
    case WeightFamily::Standard: {
      // (a+1) ∫_0^u v^a (2-v)^a dv = (a+1) 2^a u^{a+1}
      //   * sum_k binom(a,k) (-u/2)^k / (a+1+k); geometric tail, |u/2|<=1/2
      const double a = params[0];
      double binom = 1.0, term = 1.0 / (a + 1.0), sum = term;
      for (int k = 1; k < 80; ++k) {
        binom *= (a - (k - 1)) / k;
        term = binom * std::pow(-0.5 * u, k) / (a + 1.0 + k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      }
      return std::log1p(a) + a * std::log(2.0) + (a + 1.0) * std::log(u) +
             std::log(sum);
    }
    case WeightFamily::Logarithmic: {
      if (exact_tail()) {
        // I_b = ∫_0^u (1-log v)^b dv = u (1-log u)^b + b I_{b-1}, I_0 = u
        const int b = int(params[1]);
        const double base = 1.0 - std::log(u);
        double acc = u;
        for (int j = 1; j <= b; ++j)
          acc = u * std::pow(base, j) + j * acc;
        return std::log(acc);
      }
      break;
    }
    case WeightFamily::Tabulated: {
      const double r = 1.0 - u;
      const auto n = tab_nodes.size();
      double v;
      if (r >= tab_nodes[n - 1]) {
        v = tab_values[n - 1] * u;
      } else if (r <= tab_nodes[0]) {
        v = tab_suffix[0] + tab_values[0] * (tab_nodes[0] - r);
      } else {
        const double* begin = tab_nodes.data();
        auto i = std::upper_bound(begin, begin + n, r) - begin - 1;
        const double t = (r - tab_nodes[i]) / (tab_nodes[i + 1] - tab_nodes[i]);
        const double fr = tab_values[i] * (1.0 - t) + tab_values[i + 1] * t;
        v = tab_suffix[i + 1] +
            0.5 * (fr + tab_values[i + 1]) * (tab_nodes[i + 1] - r);
      }
      return std::log(v);
    }
    default:
      break;
  }

  // Cached dyadic panels toward u = 0.
  int j = int(std::floor(-std::log2(u)));
  if (u >= 1.0) j = -1;  // whole range: suffix from panel 0
  if (j > 1040) throw ResolutionError("tail: query too close to r = 1");

  QuadOptions opt{quad_tol, 0.0, 200};
  auto logw = [this](double v) { return log_value_1m(v); };

  double suffix = kNegInf;
  {
    std::lock_guard<std::mutex> lock(tails.mu);
    const int first_needed = j + 1;
    auto& panels = tails.panel_log;
    auto need_more = [&] {
      if (int(panels.size()) < first_needed + 2) return int(panels.size()) < 1045;
      // keep extending while the deepest panel still matters for this query
      LogAccumulator partial;
      for (size_t i = size_t(std::max(first_needed, 0)); i < panels.size(); ++i)
        partial.add(panels[i]);
      return panels.back() > partial.log_total() - 41.0 &&
             int(panels.size()) < 1045;
    };
    while (need_more()) {
      const int jn = int(panels.size());
      panels.push_back(
          adaptive_log(logw, u_of(jn + 1), u_of(jn), opt).log_value);
    }
    tails.suffix_log.assign(panels.size() + 1, kNegInf);
    for (int i = int(panels.size()) - 1; i >= 0; --i)
      tails.suffix_log[i] = log_add(tails.suffix_log[i + 1], panels[i]);
    if (first_needed <= int(tails.suffix_log.size()) - 1)
      suffix = tails.suffix_log[first_needed];
  }

  if (u >= 1.0) return suffix;
  const double partial = adaptive_log(logw, u_of(j + 1), u, opt).log_value;
  return log_add(partial, suffix);
}

// ---------------------------------------------------------------------------
// Moments

double Weight::State::log_moment(double x) const {
  if (!(x >= 0.0)) throw DomainError("moment: exponent must be >= 0");
  if (x > 1e8)
    throw ResolutionError("moment: exponent beyond quadrature resolution");

  {
    std::lock_guard<std::mutex> lock(moment_mu);
    auto it = moment_cache.find(x);
    if (it != moment_cache.end()) return it->second;
  }

  double value;
  if (family == WeightFamily::Constant) {
    value = std::log(params[0]) - std::log1p(x);
  } else if (family == WeightFamily::Tabulated) {
    const auto n = tab_nodes.size();
    double acc = 0.0;
    if (tab_nodes[0] > 0.0)
      acc += linear_piece_moment(0.0, tab_nodes[0], tab_values[0],
                                 tab_values[0], x);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
      acc += linear_piece_moment(tab_nodes[i], tab_nodes[i + 1], tab_values[i],
                                 tab_values[i + 1], x);
    // constant extension to 1: v * (1 - r_last^{x+1}) / (x+1)
    acc += tab_values[n - 1] *
           (-std::expm1((x + 1.0) * std::log(tab_nodes[n - 1]))) / (x + 1.0);
    value = std::log(acc);
  } else {
    auto integrand = [this, x](double v) {
      const double decay = (x == 0.0) ? 0.0 : x * std::log1p(-v);
      return decay + log_value_1m(v);
    };
    auto res = graded_log_to_zero(integrand, 1.0, {quad_tol, 0.0, 200});
    if (!res.converged)
      throw NumericError("moment quadrature did not converge (x=" + fmt(x) +
                         ", weight panels=" + std::to_string(res.panels) + ")");
    value = res.log_value;
  }

  std::lock_guard<std::mutex> lock(moment_mu);
  moment_cache.emplace(x, value);
  return value;
}

// ---------------------------------------------------------------------------
// Factories and validation

namespace {
std::shared_ptr<Weight::State> make_state(WeightFamily f,
                                          std::vector<double> params) {
  auto s = std::make_shared<Weight::State>();
  s->family = f;
  s->params = std::move(params);
  return s;
}
}  // namespace

Weight Weight::constant(double c) {
  if (!(c > 0.0)) throw DomainError("constant weight needs c > 0");
  return Weight(make_state(WeightFamily::Constant, {c}));
}

Weight Weight::standard(double alpha) {
  if (!(alpha > -1.0)) throw DomainError("standard weight needs alpha > -1");
  return Weight(make_state(WeightFamily::Standard, {alpha}));
}

Weight Weight::power_one_minus(double gamma) {
  if (!(gamma > -1.0)) throw DomainError("power weight needs gamma > -1");
  return Weight(make_state(WeightFamily::PowerOneMinus, {gamma}));
}

Weight Weight::logarithmic(double alpha, double beta) {
  const bool integrable = alpha > -1.0 || (alpha == -1.0 && beta < -1.0);
  if (!integrable)
    throw DomainError("logarithmic weight is not integrable on [0,1)");
  return Weight(make_state(WeightFamily::Logarithmic, {alpha, beta}));
}

Weight Weight::exponential_decay(double c, double k) {
  if (!(c > 0.0) || !(k > 0.0))
    throw DomainError("exponential decay weight needs c, k > 0");
  return Weight(make_state(WeightFamily::ExponentialDecay, {c, k}));
}

Weight Weight::tabulated(Eigen::ArrayXd nodes, Eigen::ArrayXd values) {
  const auto n = nodes.size();
  if (n < 2 || n != values.size())
    throw DomainError("tabulated weight needs >= 2 samples");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(nodes[i] >= 0.0) || !(nodes[i] < 1.0))
      throw DomainError("tabulated nodes must lie in [0,1)");
    if (i && !(nodes[i] > nodes[i - 1]))
      throw DomainError("tabulated nodes must be strictly increasing");
    if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
      throw DomainError("tabulated values must be finite and >= 0");
  }
  if (!(values[n - 1] > 0.0))
    throw DomainError("tabulated weight needs a positive last sample "
                      "(the tail integral must stay positive)");
  auto s = make_state(WeightFamily::Tabulated, {});
  s->tab_nodes = std::move(nodes);
  s->tab_values = std::move(values);
  // exact suffix integrals of the interpolant at the nodes
  s->tab_suffix.resize(n);
  double acc = s->tab_values[n - 1] * (1.0 - s->tab_nodes[n - 1]);
  s->tab_suffix[n - 1] = acc;
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    acc += 0.5 * (s->tab_values[i] + s->tab_values[i + 1]) *
           (s->tab_nodes[i + 1] - s->tab_nodes[i]);
    s->tab_suffix[i] = acc;
  }
  return Weight(s);
}

// ---------------------------------------------------------------------------
// Public member functions

double Weight::operator()(double r) const {
  if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("weight argument outside [0,1)");
  return value_at_one_minus(1.0 - r);
}

double Weight::value_at_one_minus(double u) const {
  return std::exp(state_->log_value_1m(u));
}

double Weight::log_value_at_one_minus(double u) const {
  return state_->log_value_1m(u);
}

double Weight::tail(double r) const { return std::exp(log_tail(r)); }

double Weight::log_tail(double r) const {
  if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("tail argument outside [0,1)");
  return state_->log_tail_1m(1.0 - r);
}

double Weight::log_tail_at_one_minus(double u) const {
  return state_->log_tail_1m(u);
}

double Weight::moment(double x) const { return std::exp(state_->log_moment(x)); }

double Weight::log_moment(double x) const { return state_->log_moment(x); }

WeightFamily Weight::family() const { return state_->family; }

const std::vector<double>& Weight::params() const { return state_->params; }

bool Weight::has_exact_tail() const { return state_->exact_tail(); }

bool Weight::has_exact_moment() const { return state_->exact_moment(); }

double Weight::quadrature_tolerance() const { return state_->quad_tol; }

Weight Weight::with_tolerance(double rel_tol) const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw DomainError("quadrature tolerance must be in (0,1)");
  auto s = make_state(state_->family, state_->params);
  s->tab_nodes = state_->tab_nodes;
  s->tab_values = state_->tab_values;
  s->tab_suffix = state_->tab_suffix;
  s->quad_tol = rel_tol;
  return Weight(s);
}

std::string Weight::description() const {
  switch (state_->family) {
    case WeightFamily::Constant: return "constant:" + fmt(state_->params[0]);
    case WeightFamily::Standard: return "standard:" + fmt(state_->params[0]);
    case WeightFamily::PowerOneMinus: return "power1m:" + fmt(state_->params[0]);
    case WeightFamily::Logarithmic:
      return "log:" + fmt(state_->params[0]) + "," + fmt(state_->params[1]);
    case WeightFamily::ExponentialDecay:
      return "expdecay:" + fmt(state_->params[0]) + "," + fmt(state_->params[1]);
    case WeightFamily::Tabulated:
      return "tabulated[n=" + std::to_string(state_->tab_nodes.size()) + "]";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {
std::vector<double> parse_params(std::string_view s, size_t expect,
                                 const char* what) {
  std::vector<double> out;
  std::string buf(s);
  std::stringstream ss(buf);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v = std::stod(item, &pos);
    if (pos != item.size()) throw DomainError(std::string("bad number in ") + what);
    out.push_back(v);
  }
  if (out.size() != expect)
    throw DomainError(std::string(what) + ": expected " +
                      std::to_string(expect) + " parameter(s)");
  return out;
}
}  // namespace

Weight parse_weight(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (name == "constant") return Weight::constant(parse_params(rest, 1, "constant")[0]);
  if (name == "standard") return Weight::standard(parse_params(rest, 1, "standard")[0]);
  if (name == "power1m")
    return Weight::power_one_minus(parse_params(rest, 1, "power1m")[0]);
  if (name == "log") {
    auto p = parse_params(rest, 2, "log");
    return Weight::logarithmic(p[0], p[1]);
  }
  if (name == "expdecay") {
    auto p = parse_params(rest, 2, "expdecay");
    return Weight::exponential_decay(p[0], p[1]);
  }
  if (name == "tabulated") return load_tabulated_csv(std::string(rest));
  throw DomainError("unknown weight family '" + name + "'");
}

Weight weight_from_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw DomainError("weight config expects key=value tokens");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto get = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw DomainError(std::string("weight config missing '") + key + "'");
    return it->second;
  };
  const std::string family = get("family");
  Weight w = [&] {
    if (family == "constant") return Weight::constant(std::stod(get("c")));
    if (family == "standard") return Weight::standard(std::stod(get("alpha")));
    if (family == "power1m")
      return Weight::power_one_minus(std::stod(get("gamma")));
    if (family == "log")
      return Weight::logarithmic(std::stod(get("alpha")), std::stod(get("beta")));
    if (family == "expdecay")
      return Weight::exponential_decay(std::stod(get("c")), std::stod(get("k")));
    if (family == "tabulated") return load_tabulated_csv(get("file"));
    throw DomainError("unknown weight family '" + family + "'");
  }();
  if (kv.count("tol")) w = w.with_tolerance(std::stod(kv.at("tol")));
  return w;
}

Weight load_tabulated_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open weight file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty weight file");
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](char c) { return std::isspace(unsigned(c)); }),
            s.end());
    return s;
  };
  if (strip(line) != "r,omega")
    throw DomainError("weight csv must start with header 'r,omega'");
  std::vector<double> rs, vs;
  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DomainError("weight csv row missing comma: " + line);
    rs.push_back(std::stod(line.substr(0, comma)));
    vs.push_back(std::stod(line.substr(comma + 1)));
  }
  Eigen::ArrayXd r = Eigen::Map<Eigen::ArrayXd>(rs.data(), rs.size());
  Eigen::ArrayXd v = Eigen::Map<Eigen::ArrayXd>(vs.data(), vs.size());
  return Weight::tabulated(std::move(r), std::move(v));
}

std::vector<Weight> built_in_weights() {
  return {Weight::constant(1.0),        Weight::standard(-0.5),
          Weight::standard(0.0),        Weight::standard(0.5),
          Weight::standard(1.0),        Weight::standard(2.0),
          Weight::power_one_minus(-0.5), Weight::power_one_minus(0.5),
          Weight::logarithmic(0.0, 1.0), Weight::exponential_decay(1.0, 1.0)};
}

std::vector<Weight> built_in_dhat_weights() {
  auto all = built_in_weights();
  all.pop_back();  // the exponential-decay weight is the non-doubling member
  return all;
}

// ---------------------------------------------------------------------------
// Classification scans

namespace {

// Sup-scan driver: stat(k) on the geometric grid, prefix suprema per level.
ClassReport sup_scan(const Weight& w, const std::string& id,
                     const ScanSchedule& sched,
                     const std::function<double(int)>& log_stat) {
  ClassReport rep;
  rep.class_id = id;
  rep.weight = w.description();
  std::vector<double> stats(sched.max_depth + 1, kNegInf);
  for (int k = 1; k <= sched.max_depth; ++k) stats[k] = log_stat(k);
  for (int depth : sched.level_depths()) {
    double sup = kNegInf;
    for (int k = 1; k <= depth; ++k) sup = std::max(sup, stats[k]);
    rep.trace.push_back({depth, sup});
  }
  rep.verdict = to_membership(assess_sup_trace(rep.trace).verdict);
  int arg = 1;
  for (int k = 1; k <= sched.max_depth; ++k)
    if (stats[k] > stats[arg]) arg = k;
  rep.witness = {1.0 - u_of(arg), stats[arg], std::exp(stats[arg])};
  return rep;
}

}  // namespace

ClassReport classify_dhat(const Weight& w, const ScanSchedule& sched) {
  return sup_scan(w, "dhat", sched, [&](int k) {
    return w.log_tail_at_one_minus(u_of(k)) -
           w.log_tail_at_one_minus(u_of(k + 1));
  });
}

ClassReport classify_dhat_moments(const Weight& w, int n_max) {
  if (n_max < 16) throw DomainError("classify_dhat_moments needs n_max >= 16");
  const int depth = int(std::floor(std::log2(double(n_max))));
  ScanSchedule sched;
  sched.min_depth = std::min(4, depth);
  sched.level_step = 2;
  sched.max_depth = depth;
  return sup_scan(w, "dhat-moments", sched, [&](int k) {
    const double n = std::ldexp(1.0, k - 1);  // n = 1, 2, 4, ...
    return w.log_moment(n) - w.log_moment(2.0 * n);
  });
}

namespace {

ClassReport inf_scan(const Weight& w, const std::string& id,
                     const std::vector<double>& ks, const ScanSchedule& sched,
                     const std::function<double(double, int)>& log_stat) {
  ClassReport rep;
  rep.class_id = id;
  rep.weight = w.description();
  const double log_threshold = std::log(1.05);
  for (double K : ks) {
    std::vector<double> stats(sched.max_depth + 1, kPosInf);
    for (int k = 1; k <= sched.max_depth; ++k) stats[k] = log_stat(K, k);
    std::vector<TraceLevel> trace;
    for (int depth : sched.level_depths()) {
      double inf = kPosInf;
      for (int k = 1; k <= depth; ++k) inf = std::min(inf, stats[k]);
      trace.push_back({depth, inf});
    }
    const Verdict v = assess_inf_trace(trace, log_threshold);
    int arg = 1;
    for (int k = 1; k <= sched.max_depth; ++k)
      if (stats[k] < stats[arg]) arg = k;
    if (v == Verdict::Member || rep.trace.empty()) {
      rep.trace = trace;
      rep.verdict = v;
      rep.constant_k = K;
      rep.witness = {1.0 - u_of(arg), stats[arg], std::exp(stats[arg])};
    }
    if (v == Verdict::Member) break;
  }
  return rep;
}

}  // namespace

ClassReport classify_dcheck(const Weight& w, const std::vector<double>& ks,
                            const ScanSchedule& sched) {
  return inf_scan(w, "dcheck", ks, sched, [&](double K, int k) {
    return w.log_tail_at_one_minus(u_of(k)) -
           w.log_tail_at_one_minus(u_of(k) / K);
  });
}

ClassReport classify_m(const Weight& w, const std::vector<double>& ks,
                       int x_max_log2) {
  ScanSchedule sched;
  sched.min_depth = 4;
  sched.level_step = 2;
  sched.max_depth = x_max_log2;
  return inf_scan(w, "m", ks, sched, [&](double K, int k) {
    const double x = std::ldexp(1.0, k - 1);
    return w.log_moment(x) - w.log_moment(K * x);
  });
}

bool in_dhat(const Weight& w) {
  return classify_dhat(w).verdict == Verdict::Member;
}

bool in_doubling(const Weight& w) {
  return in_dhat(w) && classify_dcheck(w).verdict == Verdict::Member;
}

RatioReport moment_tail_equivalence(const Weight& w, double x_max) {
  RatioReport rep;
  rep.lhs_id = "moment(x)";
  rep.rhs_id = "tail(1-1/x)";
  rep.weight = w.description();
  rep.grid = "x = 2^j in [1, " + fmt(x_max) + "]";
  const int jmax = std::max(4, int(std::floor(std::log2(x_max))));
  std::vector<double> lr;
  for (int j = 0; j <= jmax; ++j) {
    const double x = std::ldexp(1.0, j);
    const double lhs = w.log_moment(x);
    const double rhs = w.log_tail_at_one_minus(1.0 / x);
    lr.push_back(lhs - rhs);
    rep.samples.push_back({x, 0.0, lhs, rhs, lhs - rhs});
  }
  // prefix bands over j, one level per grid extension of 2 octaves
  for (int depth = 4; depth <= jmax; depth += 2) {
    double lo = kPosInf, hi = kNegInf;
    for (int j = 0; j <= depth; ++j) {
      lo = std::min(lo, lr[j]);
      hi = std::max(hi, lr[j]);
    }
    rep.band_trace.push_back({lo, hi});
  }
  if (rep.band_trace.empty()) throw DomainError("x_max too small");
  const auto& last = rep.band_trace.back();
  rep.log_ratio_min = last[0];
  rep.log_ratio_max = last[1];
  rep.ratio_min = std::exp(last[0]);
  rep.ratio_max = std::exp(last[1]);
  if (rep.band_trace.size() >= 2) {
    const auto& prev = rep.band_trace[rep.band_trace.size() - 2];
    const double wl = last[1] - last[0], wp = prev[1] - prev[0];
    rep.stable = std::isfinite(wl) && (wl - wp) <= 0.10 * std::max(wp, 0.05);
  }
  return rep;
}

double doubling_exponent_estimate(const Weight& w) {
  // mean dyadic log-ratio of the tail over the deep end of the grid
  double acc = 0.0;
  int cnt = 0;
  for (int k = 30; k < 40; ++k) {
    acc += (w.log_tail_at_one_minus(u_of(k)) -
            w.log_tail_at_one_minus(u_of(k + 1))) /
           std::log(2.0);
    ++cnt;
  }
  return acc / cnt;
}

}  // namespace homega
