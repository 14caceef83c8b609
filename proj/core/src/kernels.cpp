#include "vqco/kernels.hpp"

namespace vqco::kernels {

void walsh_hadamard(std::span<double> values) {
  const std::size_t dim = values.size();
  double* data = values.data();
  for (std::size_t half = 1; half < dim; half <<= 1) {
    for (std::size_t block = 0; block < dim; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = data[i];
        const double b = data[i + half];
        data[i] = a + b;
        data[i + half] = a - b;
      }
    }
  }
}

}  // namespace vqco::kernels
