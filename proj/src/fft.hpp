#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fcssk::detail {

/// Forward complex DFT (unnormalized) of `in`, zero-padded or truncated to `size`.
std::vector<std::complex<double>> fft(std::span<const std::complex<double>> in, std::size_t size);

}  // namespace fcssk::detail
