// qtau -- command line front end for the q-series / density library.
//
// Subcommands:
//   eval     point evaluations of the special functions and transforms
//   iterate  run the reciprocal-partial-sum iteration from delta_q moments
//   density  sample (1-q) tau_q on a window and emit CSV
//   figure   same sampling, rendered as a deterministic SVG
//   verify   run the cross-check suite, emit a JSON report
//
// Exit codes: 0 success, 1 verification failure, 2 domain/usage error,
// 3 truncation budget exceeded, 4 I/O failure.

#include <complex>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtau/density.hpp"
#include "qtau/io.hpp"
#include "qtau/iteration.hpp"
#include "qtau/qkernel.hpp"
#include "qtau/report.hpp"
#include "qtau/transforms.hpp"
#include "qtau/verify.hpp"

namespace {

using nlohmann::json;

struct EvalArgs {
  std::string function;
  double q = 0.5;
  std::optional<double> z, a, t, y, x;
  std::optional<int> n;
  std::string method = "lambert";
  std::string format = "text";
  qtau::TruncationBudget budget;
};

double require_arg(const std::optional<double>& v, const char* flag,
                   const std::string& fn) {
  if (!v) {
    throw std::domain_error("eval " + fn + ": missing required " +
                            std::string(flag));
  }
  return *v;
}

int require_n(const std::optional<int>& v, const std::string& fn) {
  if (!v) throw std::domain_error("eval " + fn + ": missing required --n");
  return *v;
}

int run_eval(const EvalArgs& args) {
  const qtau::QParam qp(args.q, args.budget);
  const qtau::TruncationBudget& b = args.budget;
  const std::string& fn = args.function;

  double value = 0.0;
  std::optional<double> imag;
  if (fn == "c_q") {
    qtau::CqMethod m;
    if (args.method == "lambert") m = qtau::CqMethod::lambert;
    else if (args.method == "divisor") m = qtau::CqMethod::divisor_series;
    else if (args.method == "pochhammer") m = qtau::CqMethod::pochhammer_complement;
    else throw std::domain_error("eval c_q: unknown --method " + args.method);
    value = qtau::c_q(qp, b, m);
  } else if (fn == "euler_gamma_q") {
    value = qp.euler_gamma_q();
  } else if (fn == "log_pochhammer_inf") {
    value = qtau::log_pochhammer_inf(require_arg(args.a, "--a", fn), qp, b);
  } else if (fn == "gamma_q") {
    value = qtau::gamma_q(require_arg(args.z, "--z", fn), qp, b);
  } else if (fn == "psi_q") {
    value = qtau::psi_q(require_arg(args.z, "--z", fn), qp, b);
  } else if (fn == "q_harmonic") {
    value = qtau::q_harmonic(require_n(args.n, fn), qp);
  } else if (fn == "f_q") {
    value = qtau::f_q(require_arg(args.z, "--z", fn), qp, b);
  } else if (fn == "f_q_via_psi") {
    value = qtau::f_q_via_psi(require_arg(args.z, "--z", fn), qp, b);
  } else if (fn == "mellin_nu") {
    value = qtau::mellin_nu_q(require_arg(args.z, "--z", fn), qp, b);
  } else if (fn == "h_q") {
    value = qtau::h_q(require_arg(args.t, "--t", fn), qp, b);
  } else if (fn == "fourier_symbol") {
    const std::complex<double> v =
        qtau::fourier_symbol(require_arg(args.y, "--y", fn), qp, b);
    value = v.real();
    imag = v.imag();
  } else if (fn == "derivative_jump") {
    const int n = require_n(args.n, fn);
    if (n < 1) throw std::domain_error("eval derivative_jump: need --n >= 1");
    value = qtau::derivative_jump(static_cast<std::size_t>(n), qp);
  } else if (fn == "nu_derivative_jump") {
    const int n = require_n(args.n, fn);
    if (n < 1) throw std::domain_error("eval nu_derivative_jump: need --n >= 1");
    value = qtau::nu_derivative_jump(static_cast<std::size_t>(n), qp);
  } else if (fn == "tau" || fn == "tau_scaled") {
    const double x = require_arg(args.x, "--x", fn);
    const qtau::AtomicMeasure mu = qtau::build_mu(qp, b);
    const qtau::ConvPowerTable table(mu, qtau::piece_index(x, qp));
    value = (fn == "tau") ? qtau::tau_density(x, qp, table)
                          : qtau::tau_scaled(x, qp, table);
  } else {
    throw std::domain_error("eval: unknown function '" + fn + "'");
  }

  if (args.format == "json") {
    json j{{"function", fn}, {"q", args.q}, {"value", value}};
    if (imag) j["imag"] = *imag;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << qtau::format_double(value);
    if (imag) std::cout << " " << qtau::format_double(*imag);
    std::cout << "\n";
  }
  return 0;
}

int run_iterate(double q, int steps, std::size_t n_max,
                const std::string& format, const qtau::TruncationBudget& b) {
  const qtau::QParam qp(q, b);
  const qtau::MomentSequence orbit = qtau::orbit_from_delta_q(qp, steps, n_max);
  const qtau::MomentSequence fixed = qtau::fixed_point_m(n_max);
  const qtau::KDistance d = qtau::k_distance(orbit, fixed);
  if (format == "json") {
    json j{{"q", q},
           {"steps", steps},
           {"entries", orbit.values()},
           {"k_distance_to_fixed_point", d.value},
           {"k_distance_tail_bound", d.tail_bound}};
    std::cout << j.dump() << "\n";
  } else {
    for (std::size_t n = 0; n < orbit.values().size(); ++n) {
      std::cout << n << " " << qtau::format_double(orbit[n]) << "\n";
    }
    std::cout << "k_distance_to_fixed_point "
              << qtau::format_double(d.value) << "\n";
    std::cout << "k_distance_tail_bound "
              << qtau::format_double(d.tail_bound) << "\n";
  }
  return 0;
}

struct WindowArgs {
  double q = 0.5;
  double x_max_l = 3.0;       // window length in units of L
  std::size_t grid = 601;
  std::string out;
  qtau::TruncationBudget budget;
};

std::vector<qtau::DensitySample> sample_window(const WindowArgs& w,
                                               const qtau::QParam& qp,
                                               double* x_max_out) {
  if (!(w.x_max_l > 0.0 && w.x_max_l <= 400.0)) {
    throw std::domain_error("--x-max-l must lie in (0, 400]");
  }
  const double x_max = w.x_max_l * qp.log_inv_q();
  const qtau::AtomicMeasure mu = qtau::build_mu(qp, w.budget);
  const qtau::ConvPowerTable table(mu, qtau::piece_index(x_max, qp));
  *x_max_out = x_max;
  return qtau::sample_scaled_density(qp, table, x_max, w.grid);
}

int run_density(const WindowArgs& w) {
  const qtau::QParam qp(w.q, w.budget);
  double x_max = 0.0;
  const std::string csv = qtau::density_csv(sample_window(w, qp, &x_max));
  if (w.out.empty() || w.out == "-") {
    std::cout << csv;
  } else {
    qtau::write_file(w.out, csv);
  }
  return 0;
}

int run_figure(const WindowArgs& w) {
  const qtau::QParam qp(w.q, w.budget);
  double x_max = 0.0;
  const auto samples = sample_window(w, qp, &x_max);
  const std::string svg = qtau::density_svg(qp, samples, x_max);
  if (w.out.empty() || w.out == "-") {
    std::cout << svg;
  } else {
    qtau::write_file(w.out, svg);
  }
  return 0;
}

int run_verify(const std::vector<double>& qs, const std::string& level,
               const qtau::TruncationBudget& b) {
  qtau::VerifyLevel lv;
  if (level == "fast") lv = qtau::VerifyLevel::fast;
  else if (level == "full") lv = qtau::VerifyLevel::full;
  else throw std::domain_error("verify: --level must be fast or full");

  const auto results = qtau::run_verification(qs, lv, b);
  json arr = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    arr.push_back(json{{"check_name", r.check_name},
                       {"target", r.target},
                       {"measured", r.measured},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    if (r.pass) ++passed;
  }
  std::cout << arr.dump(2) << "\n";
  std::cerr << passed << "/" << results.size() << " checks passed\n";
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed harmonic machinery: special functions, the "
               "Bernstein transform f_q, the piecewise limit density tau_q, "
               "and its verification oracles"};
  app.require_subcommand(1);

  EvalArgs ev;
  WindowArgs density_args, figure_args;
  double it_q = 0.5;
  int it_steps = 2;
  std::size_t it_n = 10;
  std::string it_format = "text";
  qtau::TruncationBudget it_budget, verify_budget;
  std::vector<double> verify_qs;
  std::string verify_level = "fast";

  auto add_budget = [](CLI::App* sub, qtau::TruncationBudget& b) {
    sub->add_option("--tol", b.tol, "certified truncation tolerance");
    sub->add_option("--max-terms", b.max_terms, "series term budget");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one function at a point");
  eval->add_option("function", ev.function,
                   "one of: c_q euler_gamma_q log_pochhammer_inf gamma_q "
                   "psi_q q_harmonic f_q f_q_via_psi mellin_nu h_q "
                   "fourier_symbol derivative_jump nu_derivative_jump "
                   "tau tau_scaled")
      ->required();
  eval->add_option("--q", ev.q, "deformation parameter")->required();
  eval->add_option("--z", ev.z, "argument for gamma_q/psi_q/f_q/mellin_nu");
  eval->add_option("--a", ev.a, "argument for log_pochhammer_inf");
  eval->add_option("--t", ev.t, "argument for h_q");
  eval->add_option("--y", ev.y, "argument for fourier_symbol");
  eval->add_option("--x", ev.x, "argument for tau/tau_scaled");
  eval->add_option("--n", ev.n, "argument for q_harmonic/jumps");
  eval->add_option("--method", ev.method, "c_q route: lambert|divisor|pochhammer");
  eval->add_option("--format", ev.format, "text|json");
  add_budget(eval, ev.budget);

  CLI::App* iterate = app.add_subcommand("iterate", "iterate T from delta_q moments");
  iterate->add_option("--q", it_q, "deformation parameter")->required();
  iterate->add_option("--steps", it_steps, "number of T applications")
      ->check(CLI::NonNegativeNumber);
  iterate->add_option("--n", it_n, "largest moment index");
  iterate->add_option("--format", it_format, "text|json");
  add_budget(iterate, it_budget);

  CLI::App* density = app.add_subcommand("density", "sample (1-q) tau_q as CSV");
  density->add_option("--q", density_args.q, "deformation parameter")->required();
  density->add_option("--x-max-l", density_args.x_max_l, "window length, in units of L");
  density->add_option("--grid", density_args.grid, "uniform sample count");
  density->add_option("--out", density_args.out, "output path ('-' = stdout)");
  add_budget(density, density_args.budget);

  CLI::App* figure = app.add_subcommand("figure", "render (1-q) tau_q as SVG");
  figure->add_option("--q", figure_args.q, "deformation parameter")->required();
  figure->add_option("--x-max-l", figure_args.x_max_l, "window length, in units of L");
  figure->add_option("--grid", figure_args.grid, "uniform sample count");
  figure->add_option("--out", figure_args.out, "output path")->required();
  add_budget(figure, figure_args.budget);

  CLI::App* verify = app.add_subcommand("verify", "run the cross-check suite");
  verify->add_option("--q", verify_qs, "q values (default: 0.3 0.5 0.9)")
      ->delimiter(',');
  verify->add_option("--level", verify_level, "fast|full");
  add_budget(verify, verify_budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_eval(ev);
    if (iterate->parsed())
      return run_iterate(it_q, it_steps, it_n, it_format, it_budget);
    if (density->parsed()) return run_density(density_args);
    if (figure->parsed()) return run_figure(figure_args);
    if (verify->parsed()) {
      if (verify_qs.empty()) verify_qs = {0.3, 0.5, 0.9};
      return run_verify(verify_qs, verify_level, verify_budget);
    }
  } catch (const qtau::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const qtau::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;   // no subcommand dispatched (require_subcommand should prevent this)
}
