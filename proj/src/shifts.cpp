#include "charges/shifts.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>

namespace charges {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Undecided: return "undecided";
  }
  return "undecided";
}

// mpq equality is representation-sensitive; inputs crossing the library
// boundary get canonicalized before any exact comparison can see them.
static std::vector<Rational> canonical_copy(const std::vector<Rational>& v) {
  std::vector<Rational> out = v;
  for (auto& r : out) r.canonicalize();
  return out;
}

WeightSequence moments_to_squared_weights(const std::vector<Rational>& raw) {
  std::vector<Rational> gammas = canonical_copy(raw);
  if (gammas.size() < 2)
    throw DomainError(ErrorCode::InvalidParameters,
                      "need at least gamma_0 and gamma_1");
  WeightSequence out;
  out.squared.reserve(gammas.size() - 1);
  for (std::size_t n = 0; n + 1 < gammas.size(); ++n) {
    if (gammas[n] <= 0 || gammas[n + 1] <= 0)
      throw DomainError(ErrorCode::NonPositiveMoments,
                        "moment gamma_" + std::to_string(gammas[n] <= 0 ? n : n + 1) +
                            " is not positive");
    out.squared.push_back(gammas[n + 1] / gammas[n]);
  }
  return out;
}

std::vector<Rational> squared_weights_to_moments(const WeightSequence& weights,
                                                 int n_max) {
  if (n_max < 0 || n_max > static_cast<int>(weights.squared.size()))
    throw DomainError(ErrorCode::InvalidParameters,
                      "not enough weights for the requested moment count");
  std::vector<Rational> gammas{Rational(1)};
  for (int n = 0; n < n_max; ++n) {
    gammas.push_back(gammas.back() * weights.squared[n]);
    gammas.back().canonicalize();
  }
  return gammas;
}

AluthgeWeights aluthge_squared_weights(const WeightSequence& weights) {
  AluthgeWeights out;
  out.all_squared_exact = true;
  for (std::size_t n = 0; n + 1 < weights.squared.size(); ++n) {
    Rational fourth = weights.squared[n] * weights.squared[n + 1];
    fourth.canonicalize();
    out.fourth.push_back(fourth);
    auto sq = exact_sqrt(fourth);
    if (!sq) out.all_squared_exact = false;
    out.squared.push_back(sq);
  }
  return out;
}

std::vector<Rational> aluthge_moments_squared(const WeightSequence& weights,
                                              int n_max) {
  AluthgeWeights aw = aluthge_squared_weights(weights);
  if (n_max < 0 || n_max > static_cast<int>(aw.fourth.size()))
    throw DomainError(ErrorCode::InvalidParameters,
                      "not enough weights for the requested moment count");
  std::vector<Rational> out{Rational(1)};
  for (int n = 0; n < n_max; ++n) {
    out.push_back(out.back() * aw.fourth[n]);
    out.back().canonicalize();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact linear algebra helpers.

namespace {

// Row-echelon solve of A x = b over Q. Returns nullopt when inconsistent;
// free variables are set to zero.
std::optional<std::vector<Rational>> solve_consistent(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = row;
    while (sel < rows && a[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[row]);
    std::swap(b[sel], b[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[row][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (b[r] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t r = 0; r < row; ++r) {
    int col = pivot_col_of_row[r];
    Rational acc = b[r];
    for (std::size_t c = col + 1; c < cols; ++c) acc -= a[r][c] * x[c];
    x[col] = acc / a[r][col];
  }
  return x;
}

Rational horner(const std::vector<Rational>& poly, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

// Divides poly by (x - root); requires zero remainder.
std::vector<Rational> deflate(const std::vector<Rational>& poly,
                              const Rational& root) {
  std::vector<Rational> q(poly.size() - 1, Rational(0));
  Rational carry = poly.back();
  for (std::size_t i = poly.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = poly[i] + carry * root;
  }
  if (carry != 0) throw std::logic_error("deflation by a non-root");
  return q;
}

std::optional<Rational> reconstruct_rational(double x, double max_den = 1e9) {
  if (!std::isfinite(x)) return std::nullopt;
  double target = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(x);
    if (fl > 9e17 || fl < -9e17) return std::nullopt;
    Integer a(static_cast<long>(fl));
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2.get_d() > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double approx = Rational(p1, q1).get_d();
    if (std::abs(approx - target) <= 1e-12 * std::max(1.0, std::abs(target)))
      break;
    double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return std::nullopt;
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

std::vector<Integer> divisors_up_to_cap(Integer n, std::size_t cap = 4096) {
  n = abs(n);
  std::vector<std::pair<Integer, int>> factors;
  for (Integer p = 2; p * p <= n && p < 1000000; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : factors) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (int i = 1; i <= e && divs.size() < cap; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base && divs.size() < cap; ++j)
        divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

// All rational roots of the monic rational polynomial, extracted by exact
// deflation. Numeric eigenvalue suggestions come first, divisor enumeration
// of the primitive integer form is the fallback. Returns nullopt when the
// remaining factor is nonconstant (irrational or complex roots).
std::optional<std::vector<Rational>> rational_roots(std::vector<Rational> poly) {
  std::vector<Rational> roots;
  while (poly.size() > 1 && poly.front() == 0) {
    roots.push_back(0);
    poly.erase(poly.begin());
  }
  while (poly.size() > 1) {
    std::size_t d = poly.size() - 1;
    bool found = false;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      companion(i, d - 1) = -Rational(poly[i] / poly[d]).get_d();
      if (i + 1 < d) companion(i + 1, i) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
    double scale = std::max(1.0, companion.cwiseAbs().maxCoeff());
    for (std::size_t i = 0; i < d && !found; ++i) {
      std::complex<double> ev = solver.eigenvalues()(i);
      if (std::abs(ev.imag()) > 1e-8 * scale) continue;
      auto candidate = reconstruct_rational(ev.real());
      if (candidate && horner(poly, *candidate) == 0) {
        roots.push_back(*candidate);
        poly = deflate(poly, *candidate);
        found = true;
      }
    }
    if (found) continue;

    // Primitive integer coefficients for the rational root theorem.
    Integer lcm_den = 1;
    for (const auto& c : poly) lcm_den = lcm(lcm_den, Integer(c.get_den()));
    std::vector<Integer> ip;
    ip.reserve(poly.size());
    Integer content = 0;
    for (const auto& c : poly) {
      Rational scaled = c * Rational(lcm_den);
      ip.emplace_back(scaled.get_num());
      content = gcd(content, ip.back());
    }
    for (auto& c : ip) c /= content;
    if (ip.front() != 0) {
      for (const Integer& p : divisors_up_to_cap(ip.front())) {
        for (const Integer& q : divisors_up_to_cap(ip.back())) {
          for (int s : {1, -1}) {
            Rational candidate(s * p, q);
            candidate.canonicalize();
            if (horner(poly, candidate) == 0) {
              roots.push_back(candidate);
              poly = deflate(poly, candidate);
              found = true;
            }
            if (found) break;
          }
          if (found) break;
        }
        if (found) break;
      }
    }
    if (!found) return std::nullopt;
  }
  return roots;
}

}  // namespace

RecoveryResult berger_recover(const std::vector<Rational>& raw) {
  std::vector<Rational> gammas = canonical_copy(raw);
  int n_top = static_cast<int>(gammas.size()) - 1;
  int max_order = (n_top + 1) / 2;
  for (int d = 1; d <= max_order; ++d) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int n = 0; n + d <= n_top; ++n) {
      std::vector<Rational> row(gammas.begin() + n, gammas.begin() + n + d);
      a.push_back(std::move(row));
      b.push_back(gammas[n + d]);
    }
    auto coeffs = solve_consistent(a, b);
    if (!coeffs) continue;

    // Characteristic polynomial x^d - c_{d-1} x^{d-1} - ... - c_0.
    std::vector<Rational> poly(d + 1, Rational(0));
    poly[d] = 1;
    for (int i = 0; i < d; ++i) poly[i] = -(*coeffs)[i];

    auto roots = rational_roots(poly);
    bool distinct = true;
    if (roots) {
      auto sorted = *roots;
      std::sort(sorted.begin(), sorted.end());
      distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    if (!roots || !distinct) {
      IrrationalAtomReport report;
      report.recurrence = *coeffs;
      Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
      for (int i = 0; i < d; ++i) {
        companion(i, d - 1) = (*coeffs)[i].get_d();
        if (i + 1 < d) companion(i + 1, i) = 1.0;
      }
      Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
      for (int i = 0; i < d; ++i)
        report.numeric_roots.emplace_back(solver.eigenvalues()(i).real(),
                                          solver.eigenvalues()(i).imag());
      std::sort(report.numeric_roots.begin(), report.numeric_roots.end(),
                [](const auto& x, const auto& y) { return x.first > y.first; });
      report.message = roots ? "repeated characteristic root"
                             : "characteristic root is not rational";
      return report;
    }

    std::sort(roots->begin(), roots->end());
    int r = static_cast<int>(roots->size());
    std::vector<std::vector<Rational>> vandermonde;
    std::vector<Rational> rhs;
    for (int n = 0; n < r; ++n) {
      std::vector<Rational> row;
      row.reserve(r);
      for (int i = 0; i < r; ++i) row.push_back(rational_pow((*roots)[i], n));
      vandermonde.push_back(std::move(row));
      rhs.push_back(gammas[n]);
    }
    auto densities = solve_consistent(vandermonde, rhs);
    if (!densities) throw std::logic_error("singular Vandermonde for distinct roots");
    for (int n = 0; n <= n_top; ++n) {
      Rational acc = 0;
      for (int i = 0; i < r; ++i)
        acc += (*densities)[i] * rational_pow((*roots)[i], n);
      if (acc != gammas[n])
        throw std::logic_error("recovered measure does not reproduce moments");
    }

    RecoveredMeasure out;
    out.recurrence_order = d;
    out.subnormal = true;
    for (int i = 0; i < r; ++i) {
      if ((*densities)[i] == 0) continue;
      out.atoms.push_back(Atom{(*roots)[i], (*densities)[i]});
      if ((*densities)[i] < 0 || (*roots)[i] < 0) out.subnormal = false;
      if ((*roots)[i] > out.norm_squared) out.norm_squared = (*roots)[i];
    }
    try {
      out.charge = from_atoms(out.atoms);
    } catch (const DomainError&) {
      out.charge = std::nullopt;  // atoms below 1 or multiplicatively free
    }
    return out;
  }
  return RecurrenceFailure{max_order,
                           "no linear recurrence of order <= " +
                               std::to_string(max_order) + " fits the moments"};
}

RecoveryResult berger_recover(const WeightSequence& weights) {
  return berger_recover(squared_weights_to_moments(
      weights, static_cast<int>(weights.squared.size())));
}

// ---------------------------------------------------------------------------
// Hankel positivity diagnostics.

namespace {

std::vector<std::vector<Rational>> hankel(const std::vector<Rational>& gammas,
                                          int order, int offset) {
  std::vector<std::vector<Rational>> h(order, std::vector<Rational>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) h[i][j] = gammas[i + j + offset];
  return h;
}

double balanced_min_eigenvalue(const std::vector<std::vector<Rational>>& h) {
  int n = static_cast<int>(h.size());
  Eigen::MatrixXd b(n, n);
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    double d = std::abs(h[i][i].get_d());
    s[i] = d > 0 ? 1.0 / std::sqrt(d) : 1.0;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = h[i][j].get_d() * s[i] * s[j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  return solver.eigenvalues().minCoeff();
}

// Positive semidefiniteness by symmetric elimination: a negative pivot or a
// zero pivot with a nonzero row refutes it.
bool exact_psd(std::vector<std::vector<Rational>> m) {
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] < 0) return false;
    if (m[i][i] == 0) {
      for (std::size_t j = i + 1; j < n; ++j)
        if (m[i][j] != 0) return false;
      continue;
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      if (m[r][i] == 0) continue;
      Rational f = m[r][i] / m[i][i];
      for (std::size_t c = i; c < n; ++c) m[r][c] -= f * m[i][c];
    }
    for (std::size_t c = i + 1; c < n; ++c) m[i][c] = 0;
    for (std::size_t r = i + 1; r < n; ++r) m[r][i] = 0;
  }
  return true;
}

}  // namespace

HankelDiagnostics hankel_psd_check(const std::vector<Rational>& raw,
                                   int max_order) {
  std::vector<Rational> gammas = canonical_copy(raw);
  HankelDiagnostics out;
  out.numerically_psd = true;
  int n_top = static_cast<int>(gammas.size()) - 1;
  for (int m = 1; m <= max_order && 2 * (m - 1) <= n_top; ++m) {
    out.min_eigenvalue_h0.push_back(balanced_min_eigenvalue(hankel(gammas, m, 0)));
    if (out.min_eigenvalue_h0.back() <= -1e-8) out.numerically_psd = false;
  }
  for (int m = 1; m <= max_order && 2 * (m - 1) + 1 <= n_top; ++m) {
    out.min_eigenvalue_h1.push_back(balanced_min_eigenvalue(hankel(gammas, m, 1)));
    if (out.min_eigenvalue_h1.back() <= -1e-8) out.numerically_psd = false;
  }
  return out;
}

bool hankel_exactly_psd(const std::vector<Rational>& raw, int max_order) {
  std::vector<Rational> gammas = canonical_copy(raw);
  int n_top = static_cast<int>(gammas.size()) - 1;
  int m0 = std::min(max_order, n_top / 2 + 1);
  int m1 = std::min(max_order, (n_top - 1) / 2 + 1);
  if (m0 > 0 && !exact_psd(hankel(gammas, m0, 0))) return false;
  if (m1 > 0 && !exact_psd(hankel(gammas, m1, 1))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Diagram certifier.

namespace {

Verdict verdict_from_sqrt(const AtomicCharge& mu, const SqrtOptions& options,
                          std::optional<SqrtCertificate>& cert_out) {
  try {
    SqrtCertificate cert = charge_sqrt(mu, options);
    Verdict v = cert.positive_root_exists() ? Verdict::True : Verdict::False;
    cert_out = std::move(cert);
    return v;
  } catch (const DomainError& e) {
    if (e.code() == ErrorCode::NoLatticeSqrt ||
        e.code() == ErrorCode::RefinementLimit)
      return Verdict::Undecided;
    if (e.code() == ErrorCode::NegativeLeading) return Verdict::False;
    throw;
  }
}

}  // namespace

DiagramReport certify_diagram(const AtomicCharge& mu, const SqrtOptions& options) {
  DiagramReport report;
  report.mass0_stripped = mu.mass_at_zero();
  AtomicCharge core = AtomicCharge::make(
      mu.base(), 0, mu.terms(), std::max(options.max_refinement, mu.refinement()));

  bool positive = is_positive(mu);
  report.w_alpha = positive ? Verdict::True : Verdict::False;
  report.sqrt_shift_applicable = positive;

  if (core.lattice_empty()) {
    // Degenerate: at most a mass at zero. Root witnesses are trivial.
    report.sqrt_shift = positive ? Verdict::True : Verdict::False;
    report.aluthge = positive ? Verdict::True : Verdict::False;
    return report;
  }

  if (positive)
    report.sqrt_shift = verdict_from_sqrt(core, options, report.sqrt_shift_certificate);
  else
    report.sqrt_shift = Verdict::False;

  AtomicCharge product = convolve(core, scale_by_t(core));
  report.aluthge = verdict_from_sqrt(product, options, report.aluthge_certificate);

  if (report.sqrt_shift == Verdict::True && report.w_alpha == Verdict::False)
    report.implication_violations.push_back("sqrt_shift true but w_alpha false");
  if (report.sqrt_shift == Verdict::True && report.aluthge == Verdict::False)
    report.implication_violations.push_back("sqrt_shift true but aluthge false");
  return report;
}

}  // namespace charges
