#include "charges/suites.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <thread>

#include "charges/sqrt.hpp"

namespace charges {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic across platforms: mt19937_64 is fully specified and the
// integer draw below avoids std::uniform_int_distribution on purpose.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : engine_(splitmix64(seed ^ (trial + 1))) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

 private:
  std::mt19937_64 engine_;
};

const Rational kLambdaChoices[] = {Rational(2),     Rational(3),
                                   Rational(5),     Rational(3, 2),
                                   Rational(5, 2),  Rational(4, 3),
                                   Rational(5, 3),  Rational(7, 2)};

// Coefficients in [-10, 10] \ {0}.
Rational draw_coefficient(TrialRng& rng, bool positive, int max_num = 10) {
  std::int64_t num = rng.uniform(1, max_num);
  std::int64_t den = rng.uniform(1, 6);
  if (!positive && rng.uniform(0, 1) == 0) num = -num;
  Rational c(num, den);
  c.canonicalize();
  return c;
}

AtomicCharge draw_charge(TrialRng& rng, int q_lo, int q_hi, int max_exponent) {
  int q = static_cast<int>(rng.uniform(q_lo, q_hi));
  Rational lambda = kLambdaChoices[rng.uniform(0, 7)];
  int strategy = static_cast<int>(rng.uniform(0, 99));
  AtomicCharge::TermMap terms;
  if (strategy < 20 && q >= 3) {
    // Consecutive exponents with one small negative in the middle: the
    // shape that can keep both products positive with mixed signs.
    std::int64_t e0 = rng.uniform(0, 3);
    int neg_at = static_cast<int>(rng.uniform(1, q - 2));
    for (int i = 0; i < q; ++i) {
      Rational c = draw_coefficient(rng, true, 6);
      if (i == neg_at) c = -Rational(rng.uniform(1, 4), rng.uniform(3, 10));
      terms[e0 + i] = c;
    }
  } else {
    bool all_positive = strategy < 70;
    std::set<std::int64_t> exponents;
    while (static_cast<int>(exponents.size()) < q)
      exponents.insert(rng.uniform(0, max_exponent));
    for (std::int64_t e : exponents)
      terms[e] = draw_coefficient(rng, all_positive);
  }
  return AtomicCharge::make(LatticeBase{lambda, 0}, 0, std::move(terms));
}

bool uniformly_signed(const AtomicCharge& nu) {
  auto signs = sign_pattern(nu);
  for (int s : signs)
    if (s != signs.front()) return false;
  return true;
}

struct TrialOutcome {
  std::uint64_t draws = 0;
  std::vector<SuiteViolation> violations;
};

template <typename CheckFn>
SuiteReport run_generic(const std::string& name, const SuiteConfig& config,
                        int q_lo, int q_hi, int max_exponent, CheckFn check) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = name;
  report.trials = config.trials;
  report.seed = config.seed;

  int threads = std::max(1, config.threads);
  std::vector<TrialOutcome> outcomes(threads);
  auto worker = [&](int w) {
    TrialOutcome& outcome = outcomes[w];
    for (std::uint64_t t = w; t < config.trials; t += threads) {
      TrialRng rng(config.seed, t);
      for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt > 1000000)
          throw std::logic_error("sampler failed to produce an accepted draw");
        ++outcome.draws;
        AtomicCharge nu = draw_charge(rng, q_lo, q_hi, max_exponent);
        AtomicCharge mu = convolve(nu, nu);
        AtomicCharge nu_t_nu = convolve(nu, scale_by_t(nu));
        if (!is_positive(mu) || !is_positive(nu_t_nu)) continue;
        check(t, nu, mu, outcome.violations);
        break;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (auto& outcome : outcomes) {
    report.draws += outcome.draws;
    for (auto& v : outcome.violations) report.violations.push_back(std::move(v));
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const SuiteViolation& x, const SuiteViolation& y) {
              return x.trial < y.trial;
            });
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace

SuiteReport run_sign_constancy_suite(const SuiteConfig& config) {
  return run_generic(
      "thm44", config, 2, 4, 10,
      [](std::uint64_t trial, const AtomicCharge& nu, const AtomicCharge&,
         std::vector<SuiteViolation>& violations) {
        if (!uniformly_signed(nu))
          violations.push_back(SuiteViolation{
              trial, "both products positive but nu has mixed signs", nu});
      });
}

SuiteReport run_support_bounds_suite(const SuiteConfig& config) {
  return run_generic(
      "lemmas", config, 4, 7, 12,
      [](std::uint64_t trial, const AtomicCharge& nu, const AtomicCharge& mu,
         std::vector<SuiteViolation>& violations) {
        int q = nu.atom_count();
        int p = mu.atom_count();
        for (const auto& [k, c] : nu.terms()) {
          if (fiber_cardinality(nu, 2 * k) > 3) continue;
          if (!mu.terms().count(2 * k))
            violations.push_back(SuiteViolation{
                trial,
                "doubled atom with fiber cardinality <= 3 has zero coefficient",
                nu});
        }
        if (q >= 4 && p < 6)
          violations.push_back(
              SuiteViolation{trial, "q >= 4 but nu*nu has fewer than 6 atoms", nu});
        if (q >= 5 && p < 7)
          violations.push_back(
              SuiteViolation{trial, "q >= 5 but nu*nu has fewer than 7 atoms", nu});
      });
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  if (name == "thm44") return run_sign_constancy_suite(config);
  if (name == "lemmas") return run_support_bounds_suite(config);
  throw DomainError(ErrorCode::InvalidParameters,
                    "unknown suite '" + name + "' (expected thm44 or lemmas)");
}

}  // namespace charges
