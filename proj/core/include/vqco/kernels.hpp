#pragma once

// Amplitude kernels shared by the complex StateVector and the real-valued
// circuit engine. Bit k of an amplitude index is qubit k.

#include <cstddef>
#include <cstdint>
#include <span>

namespace vqco::kernels {

/// cos(t) * I + sin(t) * (i Z_r Y_q), given c = cos(t) and s = sin(t).
///
/// With a = index with bit q clear, b = a | (1 << q) and z = (-1)^bit_r(a):
///   a' =  c a + z s b
///   b' = -z s a + c b
/// i Z_r Y_q is a real operator, so real vectors stay real.
template <class Amp>
void zy_rotate(std::span<Amp> amps, int r, int q, double c, double s) {
  const std::size_t qmask = std::size_t{1} << q;
  const std::size_t dim = amps.size();
  Amp* data = amps.data();
  // Contiguous runs with a fixed sign on bit r vectorize well.
  const auto run = [&](std::size_t start, std::size_t len, double zs) {
    Amp* lo = data + start;
    Amp* hi = lo + qmask;
    for (std::size_t i = 0; i < len; ++i) {
      const Amp x = lo[i];
      const Amp y = hi[i];
      lo[i] = c * x + zs * y;
      hi[i] = c * y - zs * x;
    }
  };
  const std::size_t rmask = std::size_t{1} << r;
  if (r > q) {
    for (std::size_t block = 0; block < dim; block += 2 * qmask) run(block, qmask, (block & rmask) ? -s : s);
  } else if (rmask >= 4) {
    for (std::size_t block = 0; block < dim; block += 2 * qmask) {
      for (std::size_t a = block; a < block + qmask; a += 2 * rmask) {
        run(a, rmask, s);
        run(a + rmask, rmask, -s);
      }
    }
  } else {
    for (std::size_t block = 0; block < dim; block += 2 * qmask) {
      for (std::size_t a = block; a < block + qmask; ++a) {
        const double zs = (a & rmask) ? -s : s;
        const Amp lo = data[a];
        const Amp hi = data[a + qmask];
        data[a] = c * lo + zs * hi;
        data[a + qmask] = c * hi - zs * lo;
      }
    }
  }
}

/// Applies the generator i Z_r Y_q (the t-derivative of zy_rotate at t = 0).
template <class Amp>
void zy_generator(std::span<Amp> amps, int r, int q) {
  const std::size_t qmask = std::size_t{1} << q;
  const std::size_t dim = amps.size();
  Amp* data = amps.data();
  for (std::size_t block = 0; block < dim; block += 2 * qmask) {
    for (std::size_t a = block; a < block + qmask; ++a) {
      const double z = ((a >> r) & 1U) ? -1.0 : 1.0;
      const Amp lo = data[a];
      data[a] = z * data[a + qmask];
      data[a + qmask] = -z * lo;
    }
  }
}

/// Unnormalized in-place Walsh-Hadamard transform:
///   out[s] = sum_z in[z] * (-1)^popcount(s & z).
/// Entry (1 << i) | (1 << j) of the transform of a probability vector is <Z_i Z_j>.
void walsh_hadamard(std::span<double> values);

}  // namespace vqco::kernels
