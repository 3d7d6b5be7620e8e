#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lincsp {

/// Variables are dense 1-based indices.
using Var = std::uint32_t;
/// Domain elements 0..d-1.
using Value = std::uint32_t;

/// The disequality `var != value`.
struct Literal {
    Var var = 0;
    Value value = 0;

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Total (or partial, while being built) map from variables to domain values.
class Assignment {
public:
    static constexpr Value kUnset = ~Value{0};

    Assignment() = default;
    explicit Assignment(std::size_t num_vars, Value fill = kUnset) : values_(num_vars, fill) {}
    /// values[i] is the value of variable i + 1.
    explicit Assignment(std::vector<Value> values) : values_(std::move(values)) {}

    std::size_t num_vars() const noexcept { return values_.size(); }

    /// Throws MissingVariableError when `var` is unset or outside the map.
    Value at(Var var) const;
    bool is_set(Var var) const noexcept
    {
        return var >= 1 && var <= values_.size() && values_[var - 1] != kUnset;
    }
    void set(Var var, Value value) { values_.at(var - 1) = value; }
    void unset(Var var) { values_.at(var - 1) = kUnset; }

    std::span<const Value> values() const noexcept { return values_; }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<Value> values_;
};

/// A set of literals over pairwise distinct variables, stored sorted by variable.
/// Forbids exactly one assignment to its variables.
class Constraint {
public:
    Constraint() = default;
    explicit Constraint(std::vector<Literal> literals);
    Constraint(std::initializer_list<Literal> literals) : Constraint(std::vector<Literal>(literals)) {}

    std::span<const Literal> literals() const noexcept { return literals_; }
    std::size_t size() const noexcept { return literals_.size(); }
    bool empty() const noexcept { return literals_.empty(); }
    const Literal& operator[](std::size_t i) const { return literals_[i]; }

    bool contains(Var var) const noexcept;

    /// True iff every literal is falsified, i.e. alpha(x) == b for each x != b.
    bool violated_by(const Assignment& alpha) const;

    /// A copy with the literals on the given variables removed.
    Constraint without(std::span<const Var> vars) const;

    friend auto operator<=>(const Constraint&, const Constraint&) = default;
    friend bool operator==(const Constraint&, const Constraint&) = default;

private:
    std::vector<Literal> literals_;
};

enum class Duplicates { Reject, Keep };

/// A (k,d)-CSP: constraints of arity k over variables 1..num_vars with domain {0..d-1}.
///
/// Immutable after construction. `num_vars` is the size of the variable universe;
/// it defaults to the largest variable mentioned and may be larger (unused
/// vertices of a generated instance stay in the universe). Constraint order is
/// preserved, equality compares constraint sets.
class Csp {
public:
    Csp(std::size_t k, Value d, std::vector<Constraint> constraints,
        std::size_t num_vars = 0, Duplicates duplicates = Duplicates::Reject);

    std::size_t k() const noexcept { return k_; }
    Value d() const noexcept { return d_; }
    std::size_t num_vars() const noexcept { return num_vars_; }
    std::size_t size() const noexcept { return constraints_.size(); }
    bool empty() const noexcept { return constraints_.empty(); }

    std::span<const Constraint> constraints() const noexcept { return constraints_; }
    const Constraint& operator[](std::size_t i) const { return constraints_[i]; }

    /// Indices of the constraints mentioning `var`, ascending. Empty for unknown variables.
    std::span<const std::uint32_t> occurrences(Var var) const noexcept;

    /// Sorted distinct variables occurring in some constraint (vbl(F)).
    std::vector<Var> mentioned_variables() const;

    /// Same constraints sorted lexicographically (variables first, then values).
    Csp canonical() const;

    friend bool operator==(const Csp& a, const Csp& b);

private:
    std::size_t k_;
    Value d_;
    std::size_t num_vars_;
    std::vector<Constraint> constraints_;
    std::vector<std::uint32_t> occ_offsets_;
    std::vector<std::uint32_t> occ_;
};

/// True iff alpha satisfies every constraint. Throws MissingVariableError if alpha
/// leaves a mentioned variable undefined.
bool evaluate(const Csp& csp, const Assignment& alpha);

/// Ascending indices of the constraints alpha falsifies.
std::vector<std::size_t> violated_constraints(const Csp& csp, const Assignment& alpha);

/// deg(x, F): number of constraints mentioning `var`.
std::size_t degree(const Csp& csp, Var var) noexcept;

struct DisjointnessResult {
    bool ok = true;
    /// A pair of constraint indices sharing >= ell variables, when !ok.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Checks that no two distinct constraints share ell or more variables.
/// Requires 2 <= ell <= k.
DisjointnessResult check_l_disjoint(const Csp& csp, std::size_t ell);

/// Variables whose degree strictly exceeds d^k / (e d^(ell-1) k), ascending.
std::vector<Var> frequent_variables(const Csp& csp, std::size_t ell);

/// Double-counting identity: sum of constraint sizes equals sum of degrees.
bool degree_sum_check(const Csp& csp);

/// Clause notation for d = 2: literal x != 0 is the positive literal +x, x != 1 is -x.
std::vector<std::vector<int>> to_clauses(const Csp& csp);
Csp from_clauses(const std::vector<std::vector<int>>& clauses, std::size_t k, std::size_t num_vars = 0);

} // namespace lincsp
