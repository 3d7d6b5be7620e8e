#include "lincsp/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lincsp/error.hpp"

namespace lincsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_kd(std::size_t k, std::uint32_t d)
{
    if (k < 1)
        throw ParameterError("k must be at least 1");
    if (d < 2)
        throw ParameterError("d must be at least 2, got " + std::to_string(d));
}

void require_ell(std::size_t k, std::size_t ell)
{
    if (ell < 2 || ell > k)
        throw ParameterError("ell must satisfy 2 <= ell <= k = " + std::to_string(k) + ", got " +
                             std::to_string(ell));
}

// ln(d^k / (e d^(ell-1) k))
double log_frequent_threshold(std::size_t k, std::uint32_t d, std::size_t ell)
{
    const double ln_d = std::log(static_cast<double>(d));
    return static_cast<double>(k - (ell - 1)) * ln_d - 1.0 - std::log(static_cast<double>(k));
}

} // namespace

double lll_degree_threshold(std::size_t k, std::uint32_t d)
{
    require_kd(k, d);
    return std::exp(static_cast<double>(k) * std::log(static_cast<double>(d)) - 1.0 -
                    std::log(static_cast<double>(k)));
}

double frequent_threshold(std::size_t k, std::uint32_t d, std::size_t ell)
{
    require_kd(k, d);
    require_ell(k, ell);
    return std::exp(log_frequent_threshold(k, d, ell));
}

double max_frequent(std::size_t k, std::uint32_t d, std::size_t ell)
{
    require_kd(k, d);
    require_ell(k, ell);
    return std::exp(log_frequent_threshold(k, d, ell) / static_cast<double>(ell - 1));
}

BoundReport bound_ml(std::size_t k, std::uint32_t d, std::size_t ell)
{
    require_kd(k, d);
    require_ell(k, ell);

    const double kd = static_cast<double>(k);
    const double ln_d = std::log(static_cast<double>(d));
    const double exponent = 1.0 + 1.0 / static_cast<double>(ell - 1);
    const double log_thr = log_frequent_threshold(k, d, ell);

    BoundReport r;
    r.k = k;
    r.d = d;
    r.ell = ell;
    r.log_lower = exponent * log_thr - std::log(kd);
    // ln(e k^2 ell^-1 ln(d) d^k)
    const double log_base = 1.0 + 2.0 * std::log(kd) - std::log(static_cast<double>(ell)) + std::log(ln_d) + kd * ln_d;
    r.log_upper = exponent * log_base;
    r.lower = std::exp(r.log_lower);
    r.upper = std::exp(r.log_upper);
    r.frequent_threshold = std::exp(log_thr);
    r.max_frequent = std::exp(log_thr / static_cast<double>(ell - 1));
    return r;
}

LinearBounds linear_bounds(std::size_t k)
{
    if (k < 2)
        throw ParameterError("linear bounds need k >= 2, got " + std::to_string(k));
    const double kd = static_cast<double>(k);
    const double log_4k = kd * std::log(4.0);
    LinearBounds b;
    b.lower = std::exp(log_4k - std::log(4.0) - 2.0 - 3.0 * std::log(kd));
    b.upper = std::exp(4.0 * std::log(kd) + log_4k);
    b.upper_ln2 = std::numbers::ln2 * b.upper;
    return b;
}

BigInt complete_formula_size(std::size_t k, std::uint32_t d)
{
    if (d < 2)
        throw ParameterError("d must be at least 2, got " + std::to_string(d));
    return boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(k));
}

PszSize psz_size(std::size_t k)
{
    // log2 m(j+1) = log2 m(j) + m(j), with m(j) = 2^(log2 m(j)).
    BigInt exact = 1;
    double log2 = 0;
    double log2_log2 = -kInf;
    for (std::size_t j = 0; j < k; ++j) {
        if (j < 3)
            exact = exact << static_cast<unsigned>(exact);
        const double next_log2 = log2 + std::exp2(log2);
        if (std::isfinite(next_log2))
            log2_log2 = std::log2(next_log2);
        else if (std::isfinite(log2))
            log2_log2 = log2 + std::log2(1.0 + log2 * std::exp2(-log2));
        else
            log2_log2 = kInf;
        log2 = next_log2;
    }
    PszSize out;
    if (k <= 3)
        out.exact = exact;
    out.log2 = log2;
    out.log2_log2 = log2_log2;
    return out;
}

BigInt binomial(std::size_t n, std::size_t r)
{
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    BigInt out = 1;
    for (std::size_t i = 1; i <= r; ++i)
        out = out * (n - r + i) / i;
    return out;
}

} // namespace lincsp
