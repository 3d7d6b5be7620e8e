#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lincsp/csp.hpp"

namespace lincsp {

struct MinLinear2CnfReport {
    std::size_t max_clauses = 0;
    /// Connected simple graphs with 1..max_clauses edges, up to isomorphism.
    std::size_t graphs = 0;
    /// Formulas decided, one per class under variable renaming and sign flips.
    std::size_t formulas = 0;
    /// formulas_by_clauses[e] counts the classes with e clauses.
    std::vector<std::size_t> formulas_by_clauses;
    std::size_t unsatisfiable = 0;
    std::optional<Csp> first_unsat;

    bool all_satisfiable() const noexcept { return unsatisfiable == 0; }
};

/// Decides every linear 2-CNF formula with at most `max_clauses` clauses, one
/// representative per isomorphism class. Requires max_clauses <= 6.
MinLinear2CnfReport experiment_min_linear_2cnf(std::size_t max_clauses = 5);

} // namespace lincsp
