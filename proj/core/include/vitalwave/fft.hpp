#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vitalwave {

using cdouble = std::complex<double>;

constexpr bool is_pow2(std::size_t n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) noexcept;

/// In-place iterative radix-2 transform; v.size() must be a power of two.
/// inverse=true applies the 1/N-scaled inverse.
void fft_pow2(std::vector<cdouble>& v, bool inverse);

/// Transform of arbitrary length (Bluestein chirp-z for non-power-of-two).
std::vector<cdouble> fft(std::vector<cdouble> v, bool inverse = false);

/// FFT of a real signal, zero-padded/truncated to nfft; returns the full
/// complex spectrum (nfft values).
std::vector<cdouble> fft_real(const std::vector<double>& x, std::size_t nfft);

}  // namespace vitalwave
