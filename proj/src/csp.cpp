#include "lincsp/csp.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "lincsp/bounds.hpp"
#include "lincsp/error.hpp"

namespace lincsp {

Value Assignment::at(Var var) const
{
    if (!is_set(var))
        throw MissingVariableError(var);
    return values_[var - 1];
}

Constraint::Constraint(std::vector<Literal> literals) : literals_(std::move(literals))
{
    std::sort(literals_.begin(), literals_.end());
    for (std::size_t i = 0; i < literals_.size(); ++i) {
        if (literals_[i].var == 0)
            throw InvalidCspError("variable identifiers are 1-based");
        if (i > 0 && literals_[i].var == literals_[i - 1].var)
            throw InvalidCspError("variable " + std::to_string(literals_[i].var) +
                                  " occurs twice in one constraint");
    }
}

bool Constraint::contains(Var var) const noexcept
{
    auto it = std::lower_bound(literals_.begin(), literals_.end(), var,
                               [](const Literal& l, Var v) { return l.var < v; });
    return it != literals_.end() && it->var == var;
}

bool Constraint::violated_by(const Assignment& alpha) const
{
    bool violated = true;
    for (const auto& lit : literals_)
        if (alpha.at(lit.var) != lit.value)
            violated = false;
    return violated;
}

Constraint Constraint::without(std::span<const Var> vars) const
{
    Constraint out;
    for (const auto& lit : literals_)
        if (std::find(vars.begin(), vars.end(), lit.var) == vars.end())
            out.literals_.push_back(lit);
    return out;
}

Csp::Csp(std::size_t k, Value d, std::vector<Constraint> constraints, std::size_t num_vars,
         Duplicates duplicates)
    : k_(k), d_(d), num_vars_(num_vars), constraints_(std::move(constraints))
{
    if (k_ < 1)
        throw ParameterError("arity k must be at least 1");
    if (d_ < 2)
        throw ParameterError("domain size d must be at least 2, got " + std::to_string(d_));

    std::size_t max_var = 0;
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        const auto& c = constraints_[i];
        if (c.size() != k_)
            throw InvalidCspError("constraint " + std::to_string(i) + " has " + std::to_string(c.size()) +
                                  " literals, expected " + std::to_string(k_));
        for (const auto& lit : c.literals()) {
            if (lit.value >= d_)
                throw InvalidCspError("value " + std::to_string(lit.value) + " out of range for d = " +
                                      std::to_string(d_));
            max_var = std::max<std::size_t>(max_var, lit.var);
        }
    }
    if (num_vars_ == 0)
        num_vars_ = max_var;
    else if (num_vars_ < max_var)
        throw InvalidCspError("variable " + std::to_string(max_var) + " exceeds declared count " +
                              std::to_string(num_vars_));

    if (duplicates == Duplicates::Reject) {
        std::vector<std::size_t> order(constraints_.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return constraints_[a] < constraints_[b]; });
        for (std::size_t i = 1; i < order.size(); ++i)
            if (constraints_[order[i]] == constraints_[order[i - 1]])
                throw InvalidCspError("constraints " + std::to_string(std::min(order[i], order[i - 1])) + " and " +
                                      std::to_string(std::max(order[i], order[i - 1])) + " are equal");
    }

    // Occurrence lists in CSR layout, indexed by variable.
    occ_offsets_.assign(num_vars_ + 2, 0);
    for (const auto& c : constraints_)
        for (const auto& lit : c.literals())
            ++occ_offsets_[lit.var + 1];
    for (std::size_t v = 1; v < occ_offsets_.size(); ++v)
        occ_offsets_[v] += occ_offsets_[v - 1];
    occ_.resize(occ_offsets_.back());
    auto fill = occ_offsets_;
    for (std::size_t i = 0; i < constraints_.size(); ++i)
        for (const auto& lit : constraints_[i].literals())
            occ_[fill[lit.var]++] = static_cast<std::uint32_t>(i);
}

std::span<const std::uint32_t> Csp::occurrences(Var var) const noexcept
{
    if (var == 0 || var > num_vars_)
        return {};
    return std::span<const std::uint32_t>(occ_).subspan(occ_offsets_[var], occ_offsets_[var + 1] - occ_offsets_[var]);
}

std::vector<Var> Csp::mentioned_variables() const
{
    std::vector<Var> out;
    for (Var v = 1; v <= num_vars_; ++v)
        if (!occurrences(v).empty())
            out.push_back(v);
    return out;
}

Csp Csp::canonical() const
{
    auto sorted = constraints_;
    std::sort(sorted.begin(), sorted.end(), [](const Constraint& a, const Constraint& b) {
        // Variable lists first, then values.
        auto va = a.literals(), vb = b.literals();
        for (std::size_t i = 0; i < std::min(va.size(), vb.size()); ++i)
            if (va[i].var != vb[i].var)
                return va[i].var < vb[i].var;
        if (va.size() != vb.size())
            return va.size() < vb.size();
        return a < b;
    });
    return Csp(k_, d_, std::move(sorted), num_vars_, Duplicates::Keep);
}

bool operator==(const Csp& a, const Csp& b)
{
    if (a.k_ != b.k_ || a.d_ != b.d_ || a.num_vars_ != b.num_vars_ || a.size() != b.size())
        return false;
    auto ca = a.constraints_, cb = b.constraints_;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
}

bool evaluate(const Csp& csp, const Assignment& alpha)
{
    bool satisfied = true;
    for (const auto& c : csp.constraints())
        if (c.violated_by(alpha))
            satisfied = false;
    return satisfied;
}

std::vector<std::size_t> violated_constraints(const Csp& csp, const Assignment& alpha)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < csp.size(); ++i)
        if (csp[i].violated_by(alpha))
            out.push_back(i);
    return out;
}

std::size_t degree(const Csp& csp, Var var) noexcept
{
    return csp.occurrences(var).size();
}

namespace {

void require_ell(const Csp& csp, std::size_t ell)
{
    if (ell < 2 || ell > csp.k())
        throw ParameterError("ell must satisfy 2 <= ell <= k = " + std::to_string(csp.k()) + ", got " +
                             std::to_string(ell));
}

} // namespace

DisjointnessResult check_l_disjoint(const Csp& csp, std::size_t ell)
{
    require_ell(csp, ell);

    // shared[j] counts variables constraint i shares with each later constraint j.
    std::vector<std::uint32_t> shared(csp.size(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t i = 0; i < csp.size(); ++i) {
        for (const auto& lit : csp[i].literals()) {
            for (auto j : csp.occurrences(lit.var)) {
                if (j <= i)
                    continue;
                if (shared[j]++ == 0)
                    touched.push_back(j);
                if (shared[j] >= ell)
                    return {false, std::pair<std::size_t, std::size_t>{i, j}};
            }
        }
        for (auto j : touched)
            shared[j] = 0;
        touched.clear();
    }
    return {true, std::nullopt};
}

std::vector<Var> frequent_variables(const Csp& csp, std::size_t ell)
{
    require_ell(csp, ell);
    const double threshold = frequent_threshold(csp.k(), csp.d(), ell);
    std::vector<Var> out;
    for (Var v = 1; v <= csp.num_vars(); ++v)
        if (static_cast<double>(degree(csp, v)) > threshold)
            out.push_back(v);
    return out;
}

bool degree_sum_check(const Csp& csp)
{
    std::size_t by_constraint = 0, by_variable = 0;
    for (const auto& c : csp.constraints())
        by_constraint += c.size();
    for (Var v = 1; v <= csp.num_vars(); ++v)
        by_variable += degree(csp, v);
    return by_constraint == by_variable;
}

std::vector<std::vector<int>> to_clauses(const Csp& csp)
{
    if (csp.d() != 2)
        throw UnsupportedDomainError("clause notation requires d = 2, got d = " + std::to_string(csp.d()));
    std::vector<std::vector<int>> out;
    out.reserve(csp.size());
    for (const auto& c : csp.constraints()) {
        auto& clause = out.emplace_back();
        for (const auto& lit : c.literals()) {
            const int v = static_cast<int>(lit.var);
            clause.push_back(lit.value == 0 ? v : -v);
        }
    }
    return out;
}

Csp from_clauses(const std::vector<std::vector<int>>& clauses, std::size_t k, std::size_t num_vars)
{
    std::vector<Constraint> constraints;
    constraints.reserve(clauses.size());
    for (const auto& clause : clauses) {
        std::vector<Literal> lits;
        for (int l : clause) {
            if (l == 0)
                throw InvalidCspError("literal 0 is not a variable");
            lits.push_back({static_cast<Var>(std::abs(l)), l > 0 ? Value{0} : Value{1}});
        }
        constraints.emplace_back(std::move(lits));
    }
    return Csp(k, 2, std::move(constraints), num_vars);
}

} // namespace lincsp
