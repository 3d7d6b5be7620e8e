#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

namespace lincsp {

using BigInt = boost::multiprecision::cpp_int;

/// Degree threshold of the local-lemma criterion: d^k / (e k).
double lll_degree_threshold(std::size_t k, std::uint32_t d);

/// A variable is frequent when its degree exceeds d^k / (e d^(ell-1) k).
double frequent_threshold(std::size_t k, std::uint32_t d, std::size_t ell);

/// Largest admissible number of frequent variables: frequent_threshold^(1/(ell-1)).
double max_frequent(std::size_t k, std::uint32_t d, std::size_t ell);

/// Lower and upper bounds on m_ell(k,d), with the quantities they are built from.
///
/// `upper` omits the unspecified multiplicative constant c; read it as "upper x c".
/// All values are evaluated in log space, so `log_lower` / `log_upper` stay finite
/// when `lower` / `upper` overflow to infinity (k around 1000 and beyond).
struct BoundReport {
    std::size_t k = 0;
    std::uint32_t d = 0;
    std::size_t ell = 0;
    double lower = 0;
    double upper = 0;
    double log_lower = 0;
    double log_upper = 0;
    double frequent_threshold = 0;
    double max_frequent = 0;
};

/// Requires 2 <= ell <= k and d >= 2.
BoundReport bound_ml(std::size_t k, std::uint32_t d, std::size_t ell);

/// Bounds on m(k) for linear k-CNF formulas: 4^k/(4e^2k^3) <= m(k) < k^4 4^k.
///
/// `upper_ln2` is the variant ln(2) k^4 4^k stated in the abstract of the
/// source; both are reported and neither is preferred.
struct LinearBounds {
    double lower = 0;
    double upper = 0;
    double upper_ln2 = 0;
};

LinearBounds linear_bounds(std::size_t k);

/// d^k, the size of the smallest unsatisfiable (k,d)-CSP.
BigInt complete_formula_size(std::size_t k, std::uint32_t d);

/// Size of the recursive linear construction m(0) = 1, m(k+1) = m(k) 2^m(k).
///
/// `exact` is present for k <= 3. `log2` is finite up to k = 4 and `log2_log2`
/// up to k = 5; both are +inf beyond.
struct PszSize {
    std::optional<BigInt> exact;
    double log2 = 0;
    double log2_log2 = 0;
};

PszSize psz_size(std::size_t k);

/// Exact binomial coefficient.
BigInt binomial(std::size_t n, std::size_t r);

} // namespace lincsp
