#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lincsp/bounds.hpp"
#include "lincsp/csp.hpp"
#include "lincsp/error.hpp"
#include "lincsp/solver.hpp"

namespace lincsp {

/// A family of k-subsets of {1..n}, stored flat: edge i is vertices[i*k, (i+1)*k),
/// sorted ascending.
struct Hypergraph {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<Var> vertices;

    std::size_t size() const noexcept { return k == 0 ? 0 : vertices.size() / k; }
    std::span<const Var> edge(std::size_t i) const { return {vertices.data() + i * k, k}; }
    void add_edge(std::span<const Var> e) { vertices.insert(vertices.end(), e.begin(), e.end()); }

    bool operator==(const Hypergraph&) const = default;
};

/// Greedy ell-disjoint packing: goes through the k-subsets of {1..n} in a
/// uniformly random order fixed by `seed` and keeps a subset iff it shares at
/// most ell - 1 vertices with each subset kept so far. Subsets that can no
/// longer fit are dropped in bulk rather than drawn one by one, which leaves the
/// distribution of the result unchanged. The result is maximal, so it has at
/// least hypergraph_size_lower_bound(n, k, ell) edges.
///
/// Throws ParameterError unless 1 <= ell <= k <= n, or when C(n, k) is too large
/// to enumerate (see greedy_hypergraph for that regime).
Hypergraph greedy_maximal_hypergraph(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed);

/// The first `max_edges` edges the greedy packing keeps.
///
/// When C(n, k) is small this is a prefix of greedy_maximal_hypergraph with the
/// same seed. Otherwise k-subsets are drawn uniformly with replacement, which is
/// the same process as a random order with repeats skipped; the result is then
/// ell-disjoint but not certified maximal, and may hold fewer than `max_edges`
/// edges if the sampling budget runs out.
Hypergraph greedy_hypergraph(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed,
                             std::size_t max_edges);

/// ceil(C(n, ell) / C(k, ell)^2) in exact integer arithmetic.
BigInt hypergraph_size_lower_bound(std::size_t n, std::size_t k, std::size_t ell);

/// Vertex count ceil((e k^2/ell)^(ell/(ell-1)) (ln(d) d^k)^(1/(ell-1))) at which a
/// random instance is unsatisfiable with positive probability.
std::size_t choose_n(std::size_t k, std::uint32_t d, std::size_t ell);

/// ceil(ln(d) n d^k): constraint count that drives the expected number of
/// satisfying assignments below 1.
std::size_t required_m(std::size_t n, std::size_t k, std::uint32_t d);

/// One constraint per edge, each literal forbidding an independent uniform value.
Csp instantiate_random(const Hypergraph& h, std::uint32_t d, std::uint64_t seed);

/// Expected number of satisfying assignments of a random instance with n
/// variables and m constraints: d^n (1 - d^-k)^m, and its upper bound
/// e^(ln(d) n - d^-k m). The log forms stay finite when the values overflow.
struct ExpectedCount {
    double exact = 0;
    double upper = 0;
    double log_exact = 0;
    double log_upper = 0;
};

ExpectedCount expected_sat_count(std::size_t n, std::size_t m, std::size_t k, std::uint32_t d);

enum class VerifyMode { Oracle, TwoSat, None };

struct GenParams {
    std::size_t k = 2;
    std::uint32_t d = 2;
    std::size_t ell = 2;
    std::optional<std::size_t> n;  ///< default choose_n(k, d, ell)
    std::optional<std::size_t> m;  ///< default ceil(overshoot * required_m(n, k, d))
    std::uint64_t seed = 0;
    std::size_t trials = 200;
    VerifyMode verify = VerifyMode::TwoSat;
    double overshoot = 1.0;
    std::uint64_t node_budget = OracleOptions{}.node_budget;
};

struct TrialOutcome {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::optional<SolveStatus> verdict;  ///< empty when verification is off
};

struct SearchResult {
    Csp instance;
    std::size_t n = 0;
    std::size_t m = 0;
    bool verified_unsat = false;
    std::size_t trials_used = 0;
    ExpectedCount expected;
    std::vector<TrialOutcome> trials;
};

class SearchExhaustedError : public Error {
public:
    SearchExhaustedError(const std::string& what, std::vector<TrialOutcome> trials)
        : Error(what), trials_(std::move(trials)) {}

    const std::vector<TrialOutcome>& trials() const noexcept { return trials_; }

private:
    std::vector<TrialOutcome> trials_;
};

/// Repeats {pack, keep the first m edges, instantiate, verify} with per-trial
/// sub-seeds until an instance is verified unsatisfiable. With VerifyMode::None
/// the first instance is returned unverified.
SearchResult search_unsat(const GenParams& params);

namespace detail {
/// Full-enumeration greedy packing; `allow_masks` selects the bitmask fast path
/// when n <= 64. Both paths visit subsets in the same order and agree exactly.
Hypergraph greedy_enumerated(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed,
                             std::size_t max_edges, bool allow_masks);
} // namespace detail

/// Largest n * log2(d) the oracle verification mode accepts.
inline constexpr double kMaxOracleSearchBits = 40.0;

} // namespace lincsp
