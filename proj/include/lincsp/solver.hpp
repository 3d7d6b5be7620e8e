#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lincsp/csp.hpp"

namespace lincsp {

enum class SolveStatus { Satisfied, Unsatisfiable, BudgetExceeded };

const char* to_string(SolveStatus status) noexcept;

/// Result of any solver path. `assignment` is present iff status is Satisfied,
/// and every path verifies it against the input before returning.
struct SolveOutcome {
    SolveStatus status = SolveStatus::BudgetExceeded;
    std::optional<Assignment> assignment;
    std::uint64_t resamples = 0;
    std::uint64_t nodes = 0;

    bool satisfied() const noexcept { return status == SolveStatus::Satisfied; }
};

struct LllReport {
    bool holds = true;
    std::size_t max_degree = 0;
    double threshold = 0;
};

/// Checks deg(x, F) <= d^k / (e k) for every variable.
LllReport lll_condition(const Csp& csp);

inline constexpr std::uint64_t kDefaultResampleBudget = 1'000'000;

/// Resampling search: start from a uniform random assignment and, while some
/// constraint is violated, redraw all variables of the violated constraint with
/// the smallest index. Never reports Unsatisfiable.
SolveOutcome resample_solve(const Csp& csp, std::uint64_t seed,
                            std::uint64_t max_resamples = kDefaultResampleBudget);

/// Literals removed from one constraint by the two deletion phases of reduce_frequent.
struct ReductionRecord {
    std::vector<Var> phase1_removed;
    std::vector<Var> phase2_removed;
};

struct ReductionReport {
    /// Arity k - ell + 1, one constraint per input constraint (same index).
    /// Distinct parents may reduce to equal constraints when k - ell + 1 < ell.
    Csp reduced;
    std::vector<ReductionRecord> kept_map;
    std::vector<Var> frequent_set;
};

/// Removes frequent variables from constraints that contain fewer than ell of
/// them, then truncates every constraint to k - ell + 1 literals, dropping the
/// literal of highest current degree first (ties: smallest variable).
/// Requires an ell-disjoint input; throws PreconditionError with a witness otherwise.
ReductionReport reduce_frequent(const Csp& csp, std::size_t ell);

/// Solves an ell-disjoint CSP with few frequent variables: reduce, check the
/// degree guarantee on the reduction, then resample on it.
SolveOutcome solve_sparse_frequent(const Csp& csp, std::size_t ell, std::uint64_t seed,
                                   std::uint64_t max_resamples = kDefaultResampleBudget);

struct OracleOptions {
    std::uint64_t node_budget = 200'000'000;
};

/// Complete backtracking search over d^n assignments, bounded by a node budget.
SolveOutcome exhaustive_solve(const Csp& csp, OracleOptions options = {});

/// Implication-graph decision procedure for d = 2 and k <= 2; complete at any size.
SolveOutcome two_sat_solve(const Csp& csp);

/// Exact decision: two_sat_solve when d = 2 and k <= 2, exhaustive_solve otherwise.
SolveOutcome oracle_solve(const Csp& csp, OracleOptions options = {});

} // namespace lincsp
