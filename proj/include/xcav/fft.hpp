#pragma once

#include <cstddef>
#include <vector>

#include "xcav/constants.hpp"

namespace xcav {

/// Unnormalized backward DFTs (positive exponent), matching the synthesis
/// convention sum_m X_m e^{+2pi i m p / N}. Plans are created once per size
/// with deterministic heuristics; executions on distinct buffers are
/// thread-safe.
namespace fft {

/// out[p] = sum_m in[m] e^{+2pi i m p / n}
void backward_1d(const cplx* in, cplx* out, std::size_t n);

/// out[p,q] = sum_{m,l} in[m,l] e^{+2pi i (m p / nx + l q / ny)}, row-major.
void backward_2d(const cplx* in, cplx* out, std::size_t nx, std::size_t ny);

/// Forward counterpart (negative exponent), unnormalized.
void forward_2d(const cplx* in, cplx* out, std::size_t nx, std::size_t ny);

} // namespace fft

} // namespace xcav
