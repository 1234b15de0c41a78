#include "charges/mellin.hpp"

#include <cmath>
#include <ostream>
#include <thread>
#include <vector>

namespace charges {

const char* zero_count_status_name(ZeroCountStatus s) {
  switch (s) {
    case ZeroCountStatus::Ok: return "ok";
    case ZeroCountStatus::BoundaryZero: return "boundary_zero";
    case ZeroCountStatus::InsufficientSamples: return "insufficient_samples";
  }
  return "ok";
}

std::complex<double> mellin_eval(const AtomicCharge& mu, std::complex<double> z) {
  double log_lambda = std::log(to_double(mu.lambda()));
  double step = log_lambda / std::ldexp(1.0, mu.refinement());
  std::complex<double> acc = 0;
  for (const auto& [k, c] : mu.terms())
    acc += to_double(c) * std::exp(z * (static_cast<double>(k) * step));
  return acc;
}

ZeroCount zero_count(const AtomicCharge& mu, const Rect& rect,
                     int samples_per_edge) {
  ZeroCount out;
  out.min_boundary_abs = std::numeric_limits<double>::infinity();
  // Counterclockwise rectangle boundary, z(s) piecewise linear.
  std::complex<double> corners[5] = {
      {rect.re_lo, rect.im_lo}, {rect.re_hi, rect.im_lo},
      {rect.re_hi, rect.im_hi}, {rect.re_lo, rect.im_hi},
      {rect.re_lo, rect.im_lo}};
  double total_arg = 0;
  std::complex<double> prev = mellin_eval(mu, corners[0]);
  out.min_boundary_abs = std::abs(prev);
  for (int edge = 0; edge < 4; ++edge) {
    for (int i = 1; i <= samples_per_edge; ++i) {
      double t = static_cast<double>(i) / samples_per_edge;
      std::complex<double> z = corners[edge] + t * (corners[edge + 1] - corners[edge]);
      std::complex<double> value = mellin_eval(mu, z);
      double a = std::abs(value);
      out.min_boundary_abs = std::min(out.min_boundary_abs, a);
      if (a < 1e-8) {
        out.status = ZeroCountStatus::BoundaryZero;
        return out;
      }
      double delta = std::arg(value / prev);
      if (std::abs(delta) > M_PI / 2) {
        out.status = ZeroCountStatus::InsufficientSamples;
        return out;
      }
      total_arg += delta;
      prev = value;
    }
  }
  out.count = static_cast<int>(std::lround(total_arg / (2 * M_PI)));
  return out;
}

int mellin_scan_csv(std::ostream& out, const AtomicCharge& mu, const Rect& rect,
                    int nx, int ny, int threads) {
  std::vector<std::complex<double>> grid(static_cast<std::size_t>(nx) * ny);
  auto point = [&](int i, int j) -> std::complex<double> {
    double re = nx == 1 ? rect.re_lo
                        : rect.re_lo + (rect.re_hi - rect.re_lo) * i / (nx - 1);
    double im = ny == 1 ? rect.im_lo
                        : rect.im_lo + (rect.im_hi - rect.im_lo) * j / (ny - 1);
    return {re, im};
  };
  auto run = [&](int worker, int stride) {
    for (int j = worker; j < ny; j += stride)
      for (int i = 0; i < nx; ++i)
        grid[static_cast<std::size_t>(j) * nx + i] = mellin_eval(mu, point(i, j));
  };
  int workers = std::max(1, std::min(threads, ny));
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    for (auto& t : pool) t.join();
  }
  out << "re,im,abs,arg\n";
  out.precision(17);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      std::complex<double> z = point(i, j);
      std::complex<double> value = grid[static_cast<std::size_t>(j) * nx + i];
      out << z.real() << ',' << z.imag() << ',' << std::abs(value) << ','
          << std::arg(value) << '\n';
    }
  return nx * ny;
}

double zero_free_bound(const AtomicCharge& mu) {
  // Beyond R the extreme atom dominates: sum_{k != top} |a_k| x_k^R <
  // |a_top| x_top^R, and symmetrically for the minimal atom as R -> -inf.
  // Returns a bound valid on both sides.
  if (mu.lattice_empty() || mu.terms().size() == 1) return 1.0;
  double step = std::log(to_double(mu.lambda())) / std::ldexp(1.0, mu.refinement());
  auto side = [&](bool top) {
    std::int64_t k_ref = top ? mu.max_key() : mu.min_key();
    double a_ref = std::abs(to_double(mu.terms().at(k_ref)));
    double rest = 0, closest_gap = std::numeric_limits<double>::infinity();
    for (const auto& [k, c] : mu.terms()) {
      if (k == k_ref) continue;
      rest += std::abs(to_double(c));
      closest_gap = std::min(closest_gap,
                             std::abs(static_cast<double>(k - k_ref)) * step);
    }
    // rest * exp(-gap * R) < a_ref  <=  R > log(rest / a_ref) / gap.
    return std::max(1.0, std::log(rest / a_ref) / closest_gap + 1.0);
  };
  return std::max(side(true), side(false));
}

}  // namespace charges
