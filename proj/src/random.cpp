#include "entsim/random.hpp"

#include <cmath>
#include <stdexcept>

namespace entsim {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa, open at 0 by the +1 offset
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

double poisson_inversion(double mean, std::mt19937_64& rng) {
    const double q = std::exp(-mean);
    double p = q;
    double cdf = q;
    const double u = uniform01(rng);
    double k = 0.0;
    while (u > cdf) {
        k += 1.0;
        p *= mean / k;
        cdf += p;
        if (p < 1e-300 && cdf < u) break;  // tail underflow guard
    }
    return k;
}

// Hoermann's PTRS transformed-rejection sampler, exact for mean >= 10.
double poisson_ptrs(double mean, std::mt19937_64& rng) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform01(rng) - 0.5;
        const double v = uniform01(rng);
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return k;
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            k * loglam - mean - std::lgamma(k + 1.0)) {
            return k;
        }
    }
}

}  // namespace

double sample_poisson(double mean, std::mt19937_64& rng) {
    if (!(mean >= 0.0)) throw std::invalid_argument("sample_poisson: negative mean");
    if (mean == 0.0) return 0.0;
    if (mean < 10.0) return poisson_inversion(mean, rng);
    if (mean <= kPoissonNormalCutoff) return poisson_ptrs(mean, rng);
    std::normal_distribution<double> gauss(mean, std::sqrt(mean));
    return std::max(0.0, std::round(gauss(rng)));
}

}  // namespace entsim
