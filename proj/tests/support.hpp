#pragma once

// Shared fixtures for the test binaries.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "tailfactor/loading.hpp"
#include "tailfactor/matrix.hpp"
#include "tailfactor/rng.hpp"

namespace support {

// Strong-signal loading matrix: identity pure block plus mixed rows whose
// positive entries stay inside [2*delta + margin, 1 - 2*delta - margin].
inline tailfactor::LoadingMatrix strong_signal_loading(std::size_t d, std::size_t K,
                                                       double delta, double margin,
                                                       std::uint64_t seed) {
    tailfactor::Rng rng(seed);
    tailfactor::Matrix a(d, K, 0.0);
    for (std::size_t i = 0; i < K; ++i) a(i, i) = 1.0;
    const double lo = 2.0 * delta + margin;
    const double hi = 1.0 - 2.0 * delta - margin;
    for (std::size_t j = K; j < d; ++j) {
        const std::size_t s_max = std::min<std::size_t>(K, 4);
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt > 100000)
                throw std::runtime_error("strong_signal_loading: rejection sampling stalled");
            const std::size_t s = 2 + rng.uniform_index(s_max - 1);
            // Leave normalization room so rejection sampling terminates.
            if (lo * static_cast<double>(s) > 0.9) continue;
            std::vector<std::size_t> pool(K);
            std::iota(pool.begin(), pool.end(), std::size_t{0});
            for (std::size_t i = 0; i < s; ++i)
                std::swap(pool[i], pool[i + rng.uniform_index(K - i)]);
            std::vector<double> w(s);
            double sum = 0.0;
            for (auto& x : w) {
                x = rng.uniform(lo, hi);
                sum += x;
            }
            bool ok = true;
            for (auto& x : w) {
                x /= sum;
                if (x < lo || x > hi) ok = false;
            }
            if (!ok) continue;
            for (std::size_t i = 0; i < s; ++i) a(j, pool[i]) = w[i];
            break;
        }
    }
    return tailfactor::LoadingMatrix(std::move(a));
}

} // namespace support
