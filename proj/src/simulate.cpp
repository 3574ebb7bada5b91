#include "tailfactor/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tailfactor/rng.hpp"

namespace tailfactor {

namespace {

void validate_config(const SimConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("simulate: n must be >= 1");
    if (cfg.d < 2) throw std::invalid_argument("simulate: d must be >= 2");
    if (cfg.k_factors < 1 || cfg.k_factors > cfg.d)
        throw std::invalid_argument("simulate: need 1 <= K <= d");
    if (!(cfg.rho > 0.0 && cfg.rho < 1.0))
        throw std::invalid_argument("simulate: rho must lie in (0, 1)");
    if (cfg.theta <= 0.0) throw std::invalid_argument("simulate: theta must be positive");
}

// One multivariate innovation: shared frailty V, then one exponential per
// coordinate. expm1/log1p keep 1-U away from an exact zero so the Pareto
// transform stays finite.
void draw_innovation_row(Rng& rng, double theta, double* out, std::size_t k_factors) {
    const double v = rng.gamma(1.0 / theta);
    for (std::size_t a = 0; a < k_factors; ++a) {
        const double e = rng.exponential();
        const double one_minus_u = -std::expm1(-std::log1p(e / v) / theta);
        out[a] = 1.0 / one_minus_u;
    }
}

void draw_noise_row(Rng& rng, double* out, std::size_t d) {
    for (std::size_t j = 0; j < d; ++j) out[j] = rng.normal();
}

void mix_row(const LoadingMatrix& A, const double* z, const double* e, double* x) {
    const std::size_t d = A.d();
    const std::size_t K = A.n_factors();
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t a = 0; a < K; ++a) s += A.entries(j, a) * z[a];
        x[j] = s + e[j];
    }
}

std::vector<double> rho_powers(double rho, std::size_t p) {
    std::vector<double> pow(p + 1);
    pow[0] = 1.0;
    for (std::size_t l = 1; l <= p; ++l) pow[l] = pow[l - 1] * rho;
    return pow;
}

} // namespace

std::vector<std::size_t> default_support_sizes(std::size_t k_factors) {
    std::vector<std::size_t> sizes;
    for (std::size_t s = std::min<std::size_t>(2, k_factors);
         s <= std::min<std::size_t>(4, k_factors); ++s)
        sizes.push_back(s);
    return sizes;
}

Matrix sample_archimedean_pareto(std::size_t k_factors, double theta, std::size_t count,
                                 std::uint64_t seed) {
    if (theta <= 0.0) throw std::invalid_argument("innovations: theta must be positive");
    if (k_factors < 1) throw std::invalid_argument("innovations: need at least one factor");
    Rng rng(seed);
    Matrix out(count, k_factors);
    for (std::size_t t = 0; t < count; ++t)
        draw_innovation_row(rng, theta, out.row(t), k_factors);
    return out;
}

Matrix moving_maxima(const Matrix& eps, double rho, std::size_t p) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("moving maxima: rho must lie in (0, 1)");
    if (eps.rows() <= p)
        throw std::invalid_argument("moving maxima: need more than p innovation rows");
    const std::size_t n = eps.rows() - p;
    const std::size_t k_factors = eps.cols();
    const auto pow = rho_powers(rho, p);
    Matrix z(n, k_factors);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t a = 0; a < k_factors; ++a) {
            double best = eps(t, a);
            for (std::size_t l = 1; l <= p; ++l)
                best = std::max(best, pow[l] * eps(t + l, a));
            z(t, a) = best;
        }
    }
    return z;
}

LoadingMatrix generate_loading(std::size_t d, std::size_t k_factors,
                               std::span<const std::size_t> support_sizes,
                               std::pair<double, double> weight_range, std::uint64_t seed) {
    if (k_factors < 1 || k_factors > d)
        throw std::invalid_argument("loading generator: need 1 <= K <= d");
    if (support_sizes.empty())
        throw std::invalid_argument("loading generator: empty support size list");
    for (auto s : support_sizes)
        if (s < 1 || s > k_factors)
            throw std::invalid_argument("loading generator: support size out of range");
    if (!(weight_range.first > 0.0 && weight_range.second >= weight_range.first))
        throw std::invalid_argument("loading generator: invalid weight range");

    Rng supports_rng(derive_stream_seed(seed, "supports"));
    Rng weights_rng(derive_stream_seed(seed, "weights"));

    Matrix A(d, k_factors, 0.0);
    for (std::size_t a = 0; a < k_factors; ++a) A(a, a) = 1.0;

    std::vector<std::size_t> pool(k_factors);
    for (std::size_t j = k_factors; j < d; ++j) {
        const std::size_t s = support_sizes[supports_rng.uniform_index(support_sizes.size())];
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < s; ++i)
            std::swap(pool[i], pool[i + supports_rng.uniform_index(k_factors - i)]);
        std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(s));
        double sum = 0.0;
        std::vector<double> w(s);
        for (std::size_t i = 0; i < s; ++i) {
            w[i] = weights_rng.uniform(weight_range.first, weight_range.second);
            sum += w[i];
        }
        for (std::size_t i = 0; i < s; ++i) A(j, pool[i]) = w[i] / sum;
    }
    return LoadingMatrix(std::move(A));
}

GeneratedModel synthesize_panel(const SimConfig& cfg) {
    validate_config(cfg);
    GeneratedModel model;
    const Matrix eps = sample_archimedean_pareto(cfg.k_factors, cfg.theta, cfg.n + cfg.p,
                                                 derive_stream_seed(cfg.seed, "innovations"));
    model.Z = moving_maxima(eps, cfg.rho, cfg.p);
    model.A = generate_loading(cfg.d, cfg.k_factors, default_support_sizes(cfg.k_factors),
                               kDefaultWeightRange, cfg.seed);
    Rng noise_rng(derive_stream_seed(cfg.seed, "noise"));
    model.E = Matrix(cfg.n, cfg.d);
    for (std::size_t t = 0; t < cfg.n; ++t) draw_noise_row(noise_rng, model.E.row(t), cfg.d);
    model.X = Matrix(cfg.n, cfg.d);
    for (std::size_t t = 0; t < cfg.n; ++t)
        mix_row(model.A, model.Z.row(t), model.E.row(t), model.X.row(t));
    return model;
}

BlockMaximaPanel synthesize_block_maxima(const SimConfig& cfg, std::size_t m) {
    validate_config(cfg);
    if (m < 1 || m > cfg.n)
        throw std::invalid_argument("block size: need 1 <= m <= n");
    const std::size_t k = cfg.n / m;
    const std::size_t k_factors = cfg.k_factors;
    const auto pow = rho_powers(cfg.rho, cfg.p);

    Rng eps_rng(derive_stream_seed(cfg.seed, "innovations"));
    Rng noise_rng(derive_stream_seed(cfg.seed, "noise"));
    const LoadingMatrix A = generate_loading(cfg.d, k_factors, default_support_sizes(k_factors),
                                             kDefaultWeightRange, cfg.seed);

    // Ring buffer holding innovation rows t .. t+p.
    Matrix ring(cfg.p + 1, k_factors);
    for (std::size_t t = 0; t < cfg.p; ++t)
        draw_innovation_row(eps_rng, cfg.theta, ring.row(t % (cfg.p + 1)), k_factors);

    BlockMaximaPanel out;
    out.block_size = m;
    out.maxima = Matrix(k, cfg.d, 0.0);
    std::vector<double> z(k_factors), e(cfg.d), x(cfg.d);
    for (std::size_t i = 0; i < k; ++i) {
        double* block = out.maxima.row(i);
        for (std::size_t t_in = 0; t_in < m; ++t_in) {
            const std::size_t t = i * m + t_in;
            draw_innovation_row(eps_rng, cfg.theta, ring.row((t + cfg.p) % (cfg.p + 1)),
                                k_factors);
            for (std::size_t a = 0; a < k_factors; ++a) {
                double best = ring(t % (cfg.p + 1), a);
                for (std::size_t l = 1; l <= cfg.p; ++l)
                    best = std::max(best, pow[l] * ring((t + l) % (cfg.p + 1), a));
                z[a] = best;
            }
            draw_noise_row(noise_rng, e.data(), cfg.d);
            mix_row(A, z.data(), e.data(), x.data());
            if (t_in == 0)
                std::copy(x.begin(), x.end(), block);
            else
                for (std::size_t j = 0; j < cfg.d; ++j) block[j] = std::max(block[j], x[j]);
        }
    }
    return out;
}

} // namespace tailfactor
