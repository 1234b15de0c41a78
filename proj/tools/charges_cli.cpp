// Command-line front end. All machine output is JSON on stdout; --pretty
// switches to human-readable text. Exit codes: 0 success (and empty suite
// violation list), 1 domain failure (structured JSON error on stdout),
// 2 usage error (message on stderr).

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "charges/charge.hpp"
#include "charges/error.hpp"
#include "charges/expr.hpp"
#include "charges/families.hpp"
#include "charges/json_io.hpp"
#include "charges/mellin.hpp"
#include "charges/shifts.hpp"
#include "charges/sqrt.hpp"
#include "charges/suites.hpp"

namespace {

using namespace charges;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::vector<double> parse_doubles(const std::string& text, std::size_t count,
                                  const std::string& flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(piece, &used));
      while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used])))
        ++used;
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "expected " + std::to_string(count) +
                                           " comma-separated numbers, got '" +
                                           text + "'");
    }
  }
  if (out.size() != count)
    throw CLI::ValidationError(flag, "expected " + std::to_string(count) +
                                         " comma-separated numbers, got '" +
                                         text + "'");
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text, std::size_t count,
                                      const std::string& flag) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    try {
      out.push_back(parse_rational(piece));
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "expected " + std::to_string(count) +
                                           " comma-separated rationals, got '" +
                                           text + "'");
    }
  }
  if (out.size() != count)
    throw CLI::ValidationError(flag, "expected " + std::to_string(count) +
                                         " comma-separated rationals, got '" +
                                         text + "'");
  return out;
}

// Expression form when all exponents are integral, explicit grid rows
// otherwise (half-step lattices have no d(rational) form).
std::string describe(const AtomicCharge& mu) {
  try {
    return print_measure(mu);
  } catch (const DomainError&) {
    std::string out = "grid lambda=" + to_string(mu.lambda()) + " step=1/2^" +
                      std::to_string(mu.refinement()) + ":";
    if (mu.mass_at_zero() != 0)
      out += " [0: " + to_string(mu.mass_at_zero()) + "]";
    for (const auto& [k, c] : mu.terms())
      out += " [lambda^(" + to_string(mu.exponent_of(k)) + "): " +
             to_string(c) + "]";
    return out;
  }
}

void render_charge(std::ostream& out, const AtomicCharge& mu) {
  out << describe(mu) << "\n";
  out << "  lambda " << to_string(mu.lambda()) << ", refinement "
      << mu.refinement() << ", atoms " << mu.atom_count() << ", mass at zero "
      << to_string(mu.mass_at_zero()) << ", total mass "
      << to_string(total_mass(mu)) << "\n";
}

void render_certificate(std::ostream& out, const SqrtCertificate& cert) {
  out << "root:   " << describe(cert.root) << "\n";
  out << "scalar: " << to_string(cert.scalar) << "\n";
  out << "sign:   " << sign_verdict_name(cert.sign_verdict)
      << (cert.positive_root_exists() ? " (positive square root exists)"
                                      : " (no positive square root)")
      << "\n";
}

const char* verdict_text(Verdict v) { return verdict_name(v); }

void render_diagram(std::ostream& out, const DiagramReport& report) {
  out << "w_alpha subnormal:    " << verdict_text(report.w_alpha) << "\n";
  out << "sqrt-shift subnormal: " << verdict_text(report.sqrt_shift)
      << (report.sqrt_shift_applicable ? "" : " (not applicable: signed measure)")
      << "\n";
  out << "aluthge subnormal:    " << verdict_text(report.aluthge) << "\n";
  if (report.mass0_stripped != 0)
    out << "mass at zero stripped before square roots: "
        << to_string(report.mass0_stripped) << "\n";
  auto witness = [&out](const char* title, const SqrtCertificate& cert) {
    out << title << "\n";
    std::ostringstream nested;
    render_certificate(nested, cert);
    std::istringstream lines(nested.str());
    std::string line;
    while (std::getline(lines, line)) out << "  " << line << "\n";
  };
  if (report.sqrt_shift_certificate)
    witness("square root of the measure:", *report.sqrt_shift_certificate);
  if (report.aluthge_certificate)
    witness("square root of measure * t(measure):",
            *report.aluthge_certificate);
  for (const auto& v : report.implication_violations)
    out << "IMPLICATION VIOLATION: " << v << "\n";
}

void render_family(std::ostream& out, const FamilyInstance& inst) {
  out << "family " << family_name(inst.family) << ", lambda "
      << to_string(inst.params.lambda) << "\n";
  out << "b = (";
  for (std::size_t i = 0; i < inst.b.size(); ++i)
    out << (i ? ", " : "") << to_string(inst.b[i]);
  out << ")\n";
  out << "nu:        " << describe(inst.nu) << "\n";
  out << "mu = nu*nu (p = " << inst.p << "): " << describe(inst.mu) << "\n";
  out << "nu*t(nu):  " << describe(inst.nu_t_nu) << "\n";
  out << "mu positive: " << (inst.mu_positive ? "yes" : "no")
      << ", nu*t(nu) positive: " << (inst.nu_t_nu_positive ? "yes" : "no")
      << "\n";
  out << "mu has positive sqrt: " << (inst.mu_positive_sqrt ? "yes" : "no")
      << ", mu*t(mu) has positive sqrt: "
      << (inst.mu_tmu_positive_sqrt ? "yes" : "no") << "\n";
  out << "counterexample (square-root problem): "
      << (inst.counterexample ? "yes" : "no") << "\n";
  if (inst.bound.applicable)
    out << "positivity inequality: lambda/(1+lambda^2) = "
        << to_string(inst.bound.lhs) << (inst.bound.satisfied ? " >= " : " < ")
        << to_string(inst.bound.rhs)
        << (inst.bound.decisive ? " (decides nu*t(nu) >= 0)"
                                : " (indicator only)")
        << "\n";
  auto flag = [&](const char* name, const std::optional<bool>& v) {
    if (v) out << name << ": " << (*v ? "consistent" : "INCONSISTENT") << "\n";
  };
  flag("closed-form region check", inst.region_consistent);
  flag("atom-count rule", inst.p_rule_consistent);
  flag("positivity bound", inst.bound_consistent);
}

void render_suite(std::ostream& out, const SuiteReport& report) {
  out << "suite " << report.suite << ": " << report.trials
      << " accepted trials (" << report.draws << " draws), seed "
      << report.seed << ", " << report.violations.size() << " violations, "
      << report.elapsed_ms << " ms\n";
  for (const auto& v : report.violations)
    out << "  trial " << v.trial << ": " << v.reason << "  nu = "
        << describe(v.nu) << "\n";
}

struct Output {
  Json json;
  std::string text;
  int exit_code = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact arithmetic for finitely atomic measures and charges on geometric "
      "lattices: multiplicative convolution, square roots, subnormality "
      "certificates, moment recovery and Mellin scans."};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "human-readable text instead of JSON");

  Output output;

  struct {
    std::string a, b;
    int n = 10;
    int extra_refinements = 0;
    std::string z, rect, out_file, b_values;
    int nx = 101, ny = 101, threads = 0;
    std::string family, lambda = "2", x, alpha, beta;
    std::uint64_t trials = 1000, seed = 0;
    std::string suite;
  } opt;

  auto* convolve_cmd =
      app.add_subcommand("convolve", "multiplicative convolution of two measures");
  convolve_cmd->add_option("a", opt.a, "first measure expression")->required();
  convolve_cmd->add_option("b", opt.b, "second measure expression")->required();
  convolve_cmd->callback([&] {
    AtomicCharge result = convolve(parse_measure(opt.a), parse_measure(opt.b));
    output.json = charge_to_json(result);
    std::ostringstream text;
    render_charge(text, result);
    output.text = text.str();
  });

  auto* square_cmd = app.add_subcommand("square", "convolution square a*a");
  square_cmd->add_option("a", opt.a, "measure expression")->required();
  square_cmd->callback([&] {
    AtomicCharge mu = parse_measure(opt.a);
    AtomicCharge result = convolve(mu, mu);
    output.json = charge_to_json(result);
    std::ostringstream text;
    render_charge(text, result);
    output.text = text.str();
  });

  auto* tmul_cmd = app.add_subcommand(
      "tmul", "scale by the identity function: t(a) has moments shifted by one");
  tmul_cmd->add_option("a", opt.a, "measure expression")->required();
  tmul_cmd->callback([&] {
    AtomicCharge result = scale_by_t(parse_measure(opt.a));
    output.json = charge_to_json(result);
    std::ostringstream text;
    render_charge(text, result);
    output.text = text.str();
  });

  auto* moments_cmd =
      app.add_subcommand("moments", "power moments gamma_0..gamma_n");
  moments_cmd->add_option("a", opt.a, "measure expression")->required();
  moments_cmd->add_option("--n", opt.n, "highest moment order")
      ->check(CLI::NonNegativeNumber);
  moments_cmd->callback([&] {
    AtomicCharge mu = parse_measure(opt.a);
    std::vector<Rational> gammas = moments(mu, opt.n);
    Json values = Json::array();
    std::ostringstream text;
    for (int i = 0; i <= opt.n; ++i) {
      values.push_back(to_string(gammas[i]));
      text << "gamma_" << i << " = " << to_string(gammas[i]) << "\n";
    }
    output.json = Json{{"n", opt.n}, {"moments", values}};
    output.text = text.str();
  });

  auto* sqrt_cmd = app.add_subcommand(
      "sqrt", "exact convolution square root certificate on the lattice");
  sqrt_cmd->add_option("a", opt.a, "measure expression")->required();
  sqrt_cmd
      ->add_option("--extra-refinements", opt.extra_refinements,
                   "additional dyadic refinements to search (diagnostic)")
      ->check(CLI::NonNegativeNumber);
  sqrt_cmd->callback([&] {
    SqrtOptions options;
    options.extra_refinements = opt.extra_refinements;
    SqrtCertificate cert = charge_sqrt(parse_measure(opt.a), options);
    output.json = certificate_to_json(cert);
    std::ostringstream text;
    render_certificate(text, cert);
    output.text = text.str();
  });

  auto* certify_cmd = app.add_subcommand(
      "certify",
      "subnormality of the shift, its square-root shift and its Aluthge "
      "transform");
  certify_cmd->add_option("a", opt.a, "measure expression")->required();
  certify_cmd->callback([&] {
    DiagramReport report = certify_diagram(parse_measure(opt.a));
    output.json = diagram_report_to_json(report);
    std::ostringstream text;
    render_diagram(text, report);
    output.text = text.str();
  });

  auto* example_cmd = app.add_subcommand(
      "example", "parameterized five-atom root families (ex51, ex52, ex61)");
  example_cmd->add_option("family", opt.family, "ex51 | ex52 | ex61")
      ->required();
  example_cmd->add_option("--lambda", opt.lambda, "lattice base (rational > 1)");
  example_cmd->add_option("--x", opt.x, "ex51 parameter x");
  example_cmd->add_option("--alpha", opt.alpha, "ex52 parameter alpha");
  example_cmd->add_option("--beta", opt.beta, "ex52 parameter beta");
  example_cmd->add_option("--b", opt.b_values,
                          "ex61 parameters as \"b1,b2,b4,b5\"");
  example_cmd->callback([&] {
    auto family = family_from_name(opt.family);
    if (!family)
      throw CLI::ValidationError("family",
                                 "unknown family '" + opt.family + "'");
    FamilyParams params;
    try {
      params.lambda = parse_rational(opt.lambda);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--lambda", "not a rational: '" + opt.lambda + "'");
    }
    auto put = [&](const char* key, const std::string& text, const char* flag) {
      if (text.empty()) return;
      try {
        params.values[key] = parse_rational(text);
      } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "not a rational: '" + text + "'");
      }
    };
    put("x", opt.x, "--x");
    put("alpha", opt.alpha, "--alpha");
    put("beta", opt.beta, "--beta");
    if (!opt.b_values.empty()) {
      std::vector<Rational> b = parse_rationals(opt.b_values, 4, "--b");
      params.values["b1"] = b[0];
      params.values["b2"] = b[1];
      params.values["b4"] = b[2];
      params.values["b5"] = b[3];
    }
    FamilyInstance inst = family_instance(*family, params);
    output.json = family_instance_to_json(inst);
    std::ostringstream text;
    render_family(text, inst);
    output.text = text.str();
  });

  auto* suite_cmd = app.add_subcommand(
      "suite", "randomized property suites (thm44: sign constancy; lemmas: "
               "support bounds)");
  suite_cmd->add_option("name", opt.suite, "thm44 | lemmas")->required();
  suite_cmd->add_option("--trials", opt.trials, "accepted samples to check");
  suite_cmd->add_option("--seed", opt.seed, "RNG seed");
  suite_cmd->add_option("--threads", opt.threads,
                        "worker threads (default: all cores)");
  suite_cmd->callback([&] {
    SuiteConfig config;
    config.trials = opt.trials;
    config.seed = opt.seed;
    config.threads = resolve_threads(opt.threads);
    SuiteReport report = run_suite(opt.suite, config);
    output.json = suite_report_to_json(report);
    std::ostringstream text;
    render_suite(text, report);
    output.text = text.str();
    output.exit_code = report.violations.empty() ? 0 : 1;
  });

  auto* mellin_cmd =
      app.add_subcommand("mellin", "evaluate the Mellin transform at one point");
  mellin_cmd->add_option("a", opt.a, "measure expression")->required();
  mellin_cmd->add_option("--z", opt.z, "evaluation point as \"re,im\"")
      ->required();
  mellin_cmd->callback([&] {
    std::vector<double> z = parse_doubles(opt.z, 2, "--z");
    AtomicCharge mu = parse_measure(opt.a);
    std::complex<double> value = mellin_eval(mu, {z[0], z[1]});
    output.json = Json{{"z", Json{{"re", z[0]}, {"im", z[1]}}},
                       {"value", Json{{"re", value.real()},
                                      {"im", value.imag()},
                                      {"abs", std::abs(value)},
                                      {"arg", std::arg(value)}}}};
    std::ostringstream text;
    text.precision(17);
    text << "M(" << z[0] << (z[1] < 0 ? "" : "+") << z[1] << "i) = "
         << value.real() << (value.imag() < 0 ? "" : "+") << value.imag()
         << "i  (abs " << std::abs(value) << ", arg " << std::arg(value)
         << ")\n";
    output.text = text.str();
  });

  auto* scan_cmd = app.add_subcommand(
      "mellin-scan", "sample the Mellin transform on a grid into a CSV file");
  scan_cmd->add_option("a", opt.a, "measure expression")->required();
  scan_cmd
      ->add_option("--rect", opt.rect,
                   "rectangle as \"re_lo,re_hi,im_lo,im_hi\"")
      ->required();
  scan_cmd->add_option("--nx", opt.nx, "grid points along re")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("--ny", opt.ny, "grid points along im")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", opt.out_file, "output CSV path")->required();
  scan_cmd->add_option("--threads", opt.threads,
                       "worker threads (default: all cores)");
  scan_cmd->callback([&] {
    std::vector<double> r = parse_doubles(opt.rect, 4, "--rect");
    AtomicCharge mu = parse_measure(opt.a);
    std::ofstream file(opt.out_file);
    if (!file)
      throw DomainError(ErrorCode::InvalidParameters,
                        "cannot open output file '" + opt.out_file + "'");
    Rect rect{r[0], r[1], r[2], r[3]};
    int rows = mellin_scan_csv(file, mu, rect, opt.nx, opt.ny,
                               resolve_threads(opt.threads));
    file.close();
    if (!file)
      throw DomainError(ErrorCode::InvalidParameters,
                        "write failed for '" + opt.out_file + "'");
    output.json = Json{{"rows", rows}, {"out", opt.out_file}};
    output.text = "wrote " + std::to_string(rows) + " rows to " +
                  opt.out_file + "\n";
  });

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const charges::DomainError& e) {
    std::cout << error_to_json(e).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }

  if (pretty)
    std::cout << output.text;
  else
    std::cout << output.json.dump(2) << "\n";
  return output.exit_code;
}
