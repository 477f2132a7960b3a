#include "vitalwave/filters.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace vitalwave {

namespace {

using cd = std::complex<double>;

// Bilinear map s -> z with sample rate fs.
cd bilinear(cd s, double fs) { return (2.0 * fs + s) / (2.0 * fs - s); }

}  // namespace

std::vector<Biquad> butter_bandpass(double lo_hz, double hi_hz, double rate_hz) {
    if (!(rate_hz > 0.0) || !(lo_hz > 0.0) || !(hi_hz > lo_hz) || hi_hz >= rate_hz / 2.0) {
        throw ConfigError("butter_bandpass: need 0 < lo < hi < rate/2");
    }

    // Prewarped analog edges.
    const double wlo = 2.0 * rate_hz * std::tan(std::numbers::pi * lo_hz / rate_hz);
    const double whi = 2.0 * rate_hz * std::tan(std::numbers::pi * hi_hz / rate_hz);
    const double w0 = std::sqrt(wlo * whi);
    const double bw = whi - wlo;

    // Order-2 Butterworth prototype poles.
    const cd proto[2] = {cd(-std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0),
                         cd(-std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0)};

    // Low-pass to band-pass: each prototype pole splits into two.
    std::vector<cd> apoles;
    for (const cd& p : proto) {
        const cd pb = p * (bw / 2.0);
        const cd disc = std::sqrt(pb * pb - cd(w0 * w0, 0.0));
        apoles.push_back(pb + disc);
        apoles.push_back(pb - disc);
    }

    // Bilinear transform; band-pass zeros land at z = +1 (s = 0) and z = -1 (s = inf).
    std::vector<cd> zpoles;
    for (const cd& s : apoles) zpoles.push_back(bilinear(s, rate_hz));

    // Pair conjugate poles into two sections, each with zeros {+1, -1}.
    // apoles came in (p, conj-partner) order per prototype pole; regroup by
    // matching conjugates explicitly.
    std::vector<cd> upper;
    for (const cd& z : zpoles) {
        if (z.imag() >= 0.0) upper.push_back(z);
    }
    std::vector<Biquad> sos;
    for (const cd& z : upper) {
        Biquad q;
        q.b0 = 1.0;
        q.b1 = 0.0;
        q.b2 = -1.0;  // zeros at +1 and -1
        q.a1 = -2.0 * z.real();
        q.a2 = std::norm(z);
        sos.push_back(q);
    }

    // Unity gain at the (digital) geometric center of the band.
    const double fc = std::sqrt(lo_hz * hi_hz);
    double gain2 = sos_power_response(sos, fc, rate_hz);
    if (gain2 <= 0.0) throw ConfigError("butter_bandpass: degenerate design");
    sos.front().b0 /= std::sqrt(gain2);
    sos.front().b2 = -sos.front().b0;
    return sos;
}

std::vector<double> sos_filter(const std::vector<Biquad>& sos, const std::vector<double>& x) {
    std::vector<double> y = x;
    for (const Biquad& q : sos) {
        double s1 = 0.0, s2 = 0.0;  // transposed DF-II state
        for (double& v : y) {
            const double in = v;
            const double out = q.b0 * in + s1;
            s1 = q.b1 * in - q.a1 * out + s2;
            s2 = q.b2 * in - q.a2 * out;
            v = out;
        }
    }
    return y;
}

std::vector<double> sos_filtfilt(const std::vector<Biquad>& sos, const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 2) return x;
    const std::size_t pad = n - 1;

    // Odd reflection about the end points keeps the extension continuous in
    // value and slope, which matters for near-DC passbands on short records.
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = 0; i < pad; ++i) ext.push_back(2.0 * x[0] - x[pad - i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 0; i < pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 2 - i]);

    std::vector<double> fwd = sos_filter(sos, ext);
    std::reverse(fwd.begin(), fwd.end());
    std::vector<double> bwd = sos_filter(sos, fwd);
    std::reverse(bwd.begin(), bwd.end());

    return std::vector<double>(bwd.begin() + static_cast<std::ptrdiff_t>(pad),
                               bwd.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

double sos_power_response(const std::vector<Biquad>& sos, double freq_hz, double rate_hz) {
    const double w = 2.0 * std::numbers::pi * freq_hz / rate_hz;
    const cd z = std::polar(1.0, w);
    const cd zi = 1.0 / z;
    cd h(1.0, 0.0);
    for (const Biquad& q : sos) {
        h *= (q.b0 + q.b1 * zi + q.b2 * zi * zi) / (1.0 + q.a1 * zi + q.a2 * zi * zi);
    }
    return std::norm(h);
}

PhysioSignal bandpass_zero_phase(const PhysioSignal& sig, double lo_hz, double hi_hz) {
    const std::vector<Biquad> sos = butter_bandpass(lo_hz, hi_hz, sig.rate_hz);
    PhysioSignal out = sig;
    out.samples = sos_filtfilt(sos, sig.samples);
    return out;
}

}  // namespace vitalwave
