#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "charges/charge.hpp"

namespace charges {

// M_mu(z) = sum a_k * x_k^z over the lattice atoms (the mass at zero does
// not contribute). Entire in z; evaluated in double precision.
std::complex<double> mellin_eval(const AtomicCharge& mu, std::complex<double> z);

struct Rect {
  double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
};

enum class ZeroCountStatus { Ok, BoundaryZero, InsufficientSamples };

const char* zero_count_status_name(ZeroCountStatus s);

// Number of zeros (with multiplicity) of M_mu inside the rectangle, by the
// winding number of the boundary image. BoundaryZero when |M_mu| < 1e-8 at
// a boundary sample; InsufficientSamples when the argument jumps by more
// than pi/2 between adjacent samples.
struct ZeroCount {
  int count = 0;
  ZeroCountStatus status = ZeroCountStatus::Ok;
  double min_boundary_abs = 0;
};

ZeroCount zero_count(const AtomicCharge& mu, const Rect& rect,
                     int samples_per_edge = 1024);

// Writes "re,im,abs,arg" CSV rows for M_mu over an nx-by-ny grid on the
// rectangle (header included, row-major from im_lo). Grid points are
// evaluated in parallel when threads > 1; output order is deterministic.
// Returns the number of data rows.
int mellin_scan_csv(std::ostream& out, const AtomicCharge& mu, const Rect& rect,
                    int nx, int ny, int threads = 1);

// A real bound R such that M_mu has no zeros with |Re z| >= R: beyond it one
// atom's term dominates the sum of all the others.
double zero_free_bound(const AtomicCharge& mu);

}  // namespace charges
