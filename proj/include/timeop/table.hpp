#pragma once

// Row tables with deterministic CSV/JSON rendering, a worker pool that keeps
// grid order, and the seeded vector recipes shared by the batch driver and
// the acceptance gate.

#include "timeop/gauss.hpp"
#include "timeop/povm.hpp"

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace timeop {

// %.{precision}g; the byte-identical-output contract rests on every double
// passing through here
std::string fmt_double(double v, int precision = 15);
std::string fmt_rat(const BigRat& q);

struct Table {
  std::string schema;                          // e.g. "timeop.form-eval v1"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // cells pre-rendered

  void add_row(std::vector<std::string> cells);
  std::string to_csv() const;   // "# schema:" line, header, data rows
  std::string to_json() const;  // the same content, {schema, columns, rows}
  std::string render(const std::string& format) const;  // "csv" | "json"
};

// runs fn(0..n-1) on a small thread pool; callers write into preallocated
// slots, so completion order never shows.  The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// band-domain vector: 2-3 monomial terms, powers <= 6, purely imaginary
// widths w/10 with w in 1..9, small rational coefficients.  Lies in the band
// domain of every regularized form at eps <= 1 and of the scale-free one.
GaussVector random_band_vector(std::mt19937_64& rng);

// band pair with visibly nonzero overlap (feeds the commutation residual)
std::pair<GaussVector, GaussVector> random_overlapping_pair(std::mt19937_64& rng);

// band pair whose regularized/scale-free gap is alive (feeds the limit sweep)
std::pair<GaussVector, GaussVector> random_sweep_pair(std::mt19937_64& rng);

// vector in the span of the frame vectors 0..max_index
GaussVector random_frame_vector(const HermiteFrame& frame, long max_index,
                                std::mt19937_64& rng);

}  // namespace timeop
