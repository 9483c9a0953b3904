// Command-line front end: weight classification, kernel evaluation, operator
// application, condition checks, verification scans, and the acceptance
// suite.  Human-readable tables by default; --format json/csv for files.

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "homega/conditions.hpp"
#include "homega/errors.hpp"
#include "homega/kernels.hpp"
#include "homega/norms.hpp"
#include "homega/operators.hpp"
#include "homega/suite.hpp"
#include "homega/verify.hpp"
#include "homega/weights.hpp"

namespace {

using namespace homega;

std::complex<double> parse_complex(const std::string& s) {
  // "0.5", "0.5+0.3i", "0.5-0.3i", "0.3i"
  std::string t = s;
  double re = 0.0, im = 0.0;
  if (!t.empty() && t.back() == 'i') {
    t.pop_back();
    size_t split = t.find_last_of("+-");
    if (split == std::string::npos || split == 0) {
      im = t.empty() || t == "+" || t == "-" ? (t == "-" ? -1.0 : 1.0)
                                             : std::stod(t);
    } else {
      re = std::stod(t.substr(0, split));
      im = std::stod(t.substr(split));
    }
  } else {
    re = std::stod(t);
  }
  return {re, im};
}

Weight weight_from_cli(const std::string& spec, const std::string& file,
                       double tol) {
  Weight w = !file.empty()
                 ? weight_from_config([&] {
                     std::ifstream in(file);
                     if (!in) throw DomainError("cannot open config " + file);
                     std::stringstream ss;
                     ss << in.rdbuf();
                     return ss.str();
                   }())
                 : parse_weight(spec);
  if (tol > 0.0) w = w.with_tolerance(tol);
  return w;
}

void emit(const std::string& json_text,
          const std::function<void(std::ostream&)>& csv,
          const std::function<void(std::ostream&)>& table,
          const std::string& format, const std::string& out) {
  std::ostringstream buf;
  if (format == "json") buf << json_text << "\n";
  else if (format == "csv") csv(buf);
  else table(buf);
  if (out.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream of(out);
    if (!of) throw DomainError("cannot open output file " + out);
    of << buf.str();
  }
}

RadialGridFunction parse_function(const std::string& spec) {
  const auto nodes = RadialGridFunction::graded_nodes();
  if (spec == "one" || spec == "1") return RadialGridFunction::constant(1.0);
  if (spec == "t")
    return RadialGridFunction::sample([](double t) { return t; }, nodes);
  if (spec == "t2")
    return RadialGridFunction::sample([](double t) { return t * t; }, nodes);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (kind == "fa" && colon != std::string::npos)
    return test_function_fa(std::stod(spec.substr(colon + 1)), nodes);
  if (kind == "poly" && colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::vector<double> cs;
    std::string item;
    while (std::getline(ss, item, ',')) cs.push_back(std::stod(item));
    return RadialGridFunction::sample(
        [&cs](double t) {
          double acc = 0.0;
          for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * t + *it;
          return acc;
        },
        nodes);
  }
  throw DomainError("unknown function spec '" + spec +
                    "' (use one|t|t2|fa:A|poly:c0,c1,...)");
}

int run(int argc, char** argv) {
  CLI::App app{"Hilbert-type operator toolkit for radial weights"};
  app.require_subcommand(1);

  std::string weight_spec, weight_file, nu_spec, format = "table", out;
  double tol = 0.0, p = 2.0, q = 1.0;
  int grid_depth = 40;

  auto add_common = [&](CLI::App* cmd, bool with_nu) {
    cmd->add_option("--weight", weight_spec, "weight spec, e.g. standard:0.5");
    cmd->add_option("--weight-file", weight_file, "key=value weight config");
    if (with_nu) cmd->add_option("--nu", nu_spec, "second weight spec");
    cmd->add_option("--tol", tol, "quadrature relative tolerance");
    cmd->add_option("--grid-depth", grid_depth, "deepest grid index");
    cmd->add_option("--format", format)
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--out", out, "write the report to this file");
  };

  // classify
  auto* c_classify = app.add_subcommand("classify", "doubling-class verdicts");
  add_common(c_classify, false);

  // kernel
  auto* c_kernel = app.add_subcommand("kernel", "evaluate a kernel");
  add_common(c_kernel, false);
  std::string kind = "averaged", z_str = "0", f_spec = "one";
  double t_arg = 0.5, kernel_tol = 1e-10;
  c_kernel->add_option("--t", t_arg, "kernel index in [0,1)");
  c_kernel->add_option("--z", z_str, "evaluation point, e.g. 0.5+0.3i");
  c_kernel->add_option("--kind", kind)
      ->check(CLI::IsMember({"averaged", "reproducing", "derivative"}));
  c_kernel->add_option("--eval-tol", kernel_tol, "certified truncation error");

  // apply
  auto* c_apply = app.add_subcommand("apply", "apply the operator");
  add_common(c_apply, false);
  int n_coeffs = -1;
  bool sublinear = false;
  c_apply->add_option("--f", f_spec, "function spec (one|t|t2|fa:A|poly:...)");
  c_apply->add_option("--z", z_str, "evaluation point");
  c_apply->add_option("--coeffs", n_coeffs, "emit Taylor coefficients 0..N");
  c_apply->add_flag("--sublinear", sublinear, "apply to |f| instead");

  // check
  auto* c_check = app.add_subcommand("check", "boundedness condition scan");
  add_common(c_check, true);
  std::string condition = "lp";
  c_check->add_option("--condition", condition)
      ->check(CLI::IsMember({"lp", "bergman1", "bergman2", "h1", "carleson", "ap"}));
  c_check->add_option("--p", p, "exponent in (1, inf)");

  // verify
  auto* c_verify = app.add_subcommand("verify", "estimate scans and probes");
  add_common(c_verify, false);
  std::string scan = "radialk";
  c_verify->add_option("--scan", scan)
      ->check(CLI::IsMember({"radialk", "m1", "mqg", "bloch", "h1", "lp"}));
  c_verify->add_option("--p", p, "exponent for the lp probe");
  c_verify->add_option("--q", q, "mean exponent for the mqg scan");

  // suite
  auto* c_suite = app.add_subcommand("suite", "run the acceptance matrix");
  c_suite->add_option("--out", out, "write a JSON summary here");

  CLI11_PARSE(app, argc, argv);

  if (c_suite->parsed()) {
    const auto results = suite::run_acceptance();
    bool all = true;
    std::ostringstream js;
    js << "[\n";
    for (size_t i = 0; i < results.size(); ++i) {
      std::cout << suite::format_line(results[i]) << "\n";
      all = all && results[i].pass;
      js << "  {\"id\": " << results[i].id << ", \"name\": \""
         << results[i].name << "\", \"pass\": "
         << (results[i].pass ? "true" : "false")
         << ", \"seconds\": " << results[i].seconds << "}"
         << (i + 1 < results.size() ? "," : "") << "\n";
    }
    js << "]\n";
    if (!out.empty()) {
      std::ofstream of(out);
      of << js.str();
    }
    return all ? 0 : 1;
  }

  const Weight w = weight_from_cli(weight_spec, weight_file, tol);
  ScanSchedule sched;
  sched.max_depth = grid_depth;

  if (c_classify->parsed()) {
    const auto dhat = classify_dhat(w, sched);
    const auto dhat_m = classify_dhat_moments(w);
    const auto dcheck = classify_dcheck(w, {2, 4, 8}, sched);
    const auto m = classify_m(w);
    emit("[" + to_json(dhat) + ",\n" + to_json(dhat_m) + ",\n" +
             to_json(dcheck) + ",\n" + to_json(m) + "]",
         [&](std::ostream& os) {
           os << "# classification weight=" << w.description() << "\n";
           os << "class,verdict,worst_ratio,at\n";
           for (const auto* r : {&dhat, &dhat_m, &dcheck, &m})
             os << r->class_id << "," << to_string(r->verdict) << ","
                << r->witness.ratio << "," << r->witness.grid_point << "\n";
         },
         [&](std::ostream& os) {
           os << "weight " << w.description() << "\n";
           for (const auto* r : {&dhat, &dhat_m, &dcheck, &m}) {
             os << "  " << r->class_id << ": " << to_string(r->verdict);
             if (r->constant_k) os << " (K=" << *r->constant_k << ")";
             os << "  worst ratio " << r->witness.ratio << " at "
                << r->witness.grid_point << "\n";
           }
         },
         format, out);
    return 0;
  }

  if (c_kernel->parsed()) {
    const auto z = parse_complex(z_str);
    KernelSeries ks(w);
    const KernelKind kk = kind == "reproducing" ? KernelKind::Reproducing
                          : kind == "derivative" ? KernelKind::Derivative
                                                 : KernelKind::Averaged;
    const auto v = ks.evaluate(kk, t_arg, z, kernel_tol);
    std::cout << kind << "[" << w.description() << "](t=" << t_arg
              << ", z=" << z.real() << (z.imag() < 0 ? "-" : "+")
              << std::abs(z.imag()) << "i) = " << v.real()
              << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag())
              << "i\n";
    return 0;
  }

  if (c_apply->parsed()) {
    const auto f = parse_function(f_spec);
    if (n_coeffs >= 0) {
      const auto coeffs = apply_H_coeffs(w, f, n_coeffs);
      std::ostringstream csv;
      csv << "n,coefficient\n";
      for (Eigen::Index n = 0; n < coeffs.c.size(); ++n)
        csv << n << "," << coeffs.c[n].real() << "\n";
      emit("", [&](std::ostream& os) { os << csv.str(); },
           [&](std::ostream& os) { os << csv.str(); }, format == "json" ? "csv" : format,
           out);
      return 0;
    }
    const auto z = parse_complex(z_str);
    const auto v = sublinear ? apply_H_sublinear(w, f, z)
                             : apply_H_point(w, f, z);
    std::cout << "H[" << w.description() << "](" << f_spec << ")(z=" << z_str
              << ") = " << v.real() << (v.imag() < 0 ? " - " : " + ")
              << std::abs(v.imag()) << "i\n";
    return 0;
  }

  if (c_check->parsed()) {
    const Weight nu =
        nu_spec.empty() ? Weight::constant(1.0) : parse_weight(nu_spec);
    ConditionReport rep;
    if (condition == "lp") rep = check_lp_hp(w, p, sched);
    else if (condition == "bergman1") rep = check_bergman_primary(w, nu, p, sched);
    else if (condition == "bergman2") rep = check_bergman_secondary(w, nu, p, sched);
    else if (condition == "h1") rep = check_h1_average(w, sched);
    else if (condition == "carleson") rep = check_carleson_box(w, sched);
    else rep = check_ap(w, nu, p, sched);
    emit(to_json(rep), [&](std::ostream& os) { write_csv(os, rep); },
         [&](std::ostream& os) {
           os << rep.condition_id << " [" << w.description();
           if (!rep.nu.empty()) os << ", nu=" << rep.nu;
           os << "]: " << to_string(rep.verdict)
              << "  (slope " << rep.slope_estimate << ", doubling hypothesis "
              << (rep.hypothesis_dhat ? "met" : "NOT met") << ")\n";
         },
         format, out);
    return 0;
  }

  if (c_verify->parsed()) {
    std::string json_text;
    std::function<void(std::ostream&)> csv, table;
    if (scan == "radialk" || scan == "m1" || scan == "mqg") {
      RatioReport rep;
      RatioReport second;
      bool has_second = false;
      if (scan == "radialk") rep = ratio_scan_radial_kernel(w);
      else if (scan == "m1") rep = ratio_scan_m1(w);
      else {
        auto both = ratio_scan_mq_g(w, q);
        rep = both.derivative_vs_estimate;
        second = both.derivative_vs_reproducing;
        has_second = true;
      }
      json_text = has_second ? "[" + to_json(rep) + ",\n" + to_json(second) + "]"
                             : to_json(rep);
      csv = [rep](std::ostream& os) { write_csv(os, rep); };
      table = [rep, second, has_second](std::ostream& os) {
        auto line = [&os](const RatioReport& r) {
          os << r.lhs_id << " / " << r.rhs_id << ": band [" << r.ratio_min
             << ", " << r.ratio_max << "] "
             << (r.stable ? "stable" : "NOT stable");
          if (r.skipped_points) os << " (" << r.skipped_points << " points skipped)";
          os << "\n";
        };
        line(rep);
        if (has_second) line(second);
      };
    } else {
      ProbeReport rep;
      if (scan == "bloch") rep = probe_hinfty_bloch(w);
      else if (scan == "h1") rep = probe_h1(w);
      else rep = probe_lp(w, p);
      json_text = to_json(rep);
      csv = [rep](std::ostream& os) { write_csv(os, rep); };
      table = [rep](std::ostream& os) {
        os << rep.probe_id << " probe [" << rep.weight
           << "]: " << to_string(rep.verdict) << "  (slope "
           << rep.slope_estimate << ", doubling hypothesis "
           << (rep.hypothesis_dhat ? "met" : "NOT met") << ")\n";
        for (const auto& t : rep.trace)
          os << "  " << t[0] << "  " << t[1] << "\n";
      };
    }
    emit(json_text, csv, table, format, out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const homega::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const homega::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
