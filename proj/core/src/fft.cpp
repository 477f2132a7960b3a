#include "vitalwave/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vitalwave {

std::size_t next_pow2(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_pow2(std::vector<cdouble>& v, bool inverse) {
    const std::size_t n = v.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2 requires a power-of-two length");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cdouble wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble u = v[i + k];
                const cdouble t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : v) x *= inv_n;
    }
}

namespace {

// Bluestein's algorithm: an N-point DFT as a convolution, evaluated with
// power-of-two FFTs of length >= 2N-1.
std::vector<cdouble> bluestein(const std::vector<cdouble>& v, bool inverse) {
    const std::size_t n = v.size();
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cdouble> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small
        const std::size_t k2 = (k * k) % (2 * n);
        const double ang = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = cdouble(std::cos(ang), std::sin(ang));
    }

    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cdouble> a(m, cdouble(0.0, 0.0));
    std::vector<cdouble> b(m, cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) a[k] = v[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        b[k] = std::conj(chirp[k]);
        b[m - k] = b[k];
    }

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, true);

    std::vector<cdouble> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : out) x *= inv_n;
    }
    return out;
}

}  // namespace

std::vector<cdouble> fft(std::vector<cdouble> v, bool inverse) {
    if (v.empty()) return v;
    if (is_pow2(v.size())) {
        fft_pow2(v, inverse);
        return v;
    }
    return bluestein(v, inverse);
}

std::vector<cdouble> fft_real(const std::vector<double>& x, std::size_t nfft) {
    std::vector<cdouble> v(nfft, cdouble(0.0, 0.0));
    const std::size_t n = std::min(nfft, x.size());
    for (std::size_t i = 0; i < n; ++i) v[i] = cdouble(x[i], 0.0);
    return fft(std::move(v), false);
}

}  // namespace vitalwave
