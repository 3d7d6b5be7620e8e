#include "lincsp/experiment.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "lincsp/error.hpp"
#include "lincsp/solver.hpp"

namespace lincsp {

// A linear 2-CNF is a simple graph on its variables with two signs per edge.
// A formula is unsatisfiable iff one of its connected components is, and a
// component has no more clauses than the whole formula, so it suffices to
// enumerate connected graphs.

namespace {

using Edge = std::pair<std::uint8_t, std::uint8_t>;

struct Graph {
    std::uint8_t vertices = 0;
    std::vector<Edge> edges;  // a < b, sorted

    friend auto operator<=>(const Graph&, const Graph&) = default;
};

std::vector<Edge> relabel(const std::vector<Edge>& edges, const std::vector<std::uint8_t>& perm)
{
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (auto [a, b] : edges) {
        auto x = perm[a], y = perm[b];
        out.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Graph canonical(const Graph& g)
{
    std::vector<std::uint8_t> perm(g.vertices);
    std::iota(perm.begin(), perm.end(), 0);
    Graph best = g;
    best.edges = relabel(g.edges, perm);
    do {
        auto img = relabel(g.edges, perm);
        if (img < best.edges)
            best.edges = std::move(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<std::vector<std::uint8_t>> automorphisms(const Graph& g)
{
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> perm(g.vertices);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (relabel(g.edges, perm) == g.edges)
            out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Sign classes of one graph. Bit 2i (2i+1) is the sign of the first (second)
/// endpoint of edge i; 1 means the negative literal, i.e. x != 1.
class SignClasses {
public:
    explicit SignClasses(const Graph& g) : g_(g), auts_(automorphisms(g)), first_(g.vertices, 0)
    {
        std::vector<char> seen(g.vertices, 0);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const std::uint8_t ends[2] = {g.edges[i].first, g.edges[i].second};
            for (int s = 0; s < 2; ++s)
                if (!seen[ends[s]]) {
                    seen[ends[s]] = 1;
                    first_[ends[s]] = static_cast<std::uint8_t>(2 * i + s);
                }
        }
    }

    /// Per-variable flips fixing the sign at each vertex's first occurrence to 0.
    std::uint32_t flip_normal(std::uint32_t bits) const
    {
        std::uint32_t out = bits;
        for (std::uint8_t u = 0; u < g_.vertices; ++u) {
            if (!((bits >> first_[u]) & 1))
                continue;
            for (std::size_t i = 0; i < g_.edges.size(); ++i) {
                if (g_.edges[i].first == u)
                    out ^= 1u << (2 * i);
                if (g_.edges[i].second == u)
                    out ^= 1u << (2 * i + 1);
            }
        }
        return out;
    }

    bool is_representative(std::uint32_t bits) const
    {
        if (flip_normal(bits) != bits)
            return false;
        for (const auto& p : auts_) {
            std::uint32_t img = 0;
            for (std::size_t i = 0; i < g_.edges.size(); ++i) {
                auto [a, b] = g_.edges[i];
                std::uint32_t sa = (bits >> (2 * i)) & 1, sb = (bits >> (2 * i + 1)) & 1;
                std::uint8_t x = p[a], y = p[b];
                if (x > y) {
                    std::swap(x, y);
                    std::swap(sa, sb);
                }
                const auto j = static_cast<std::size_t>(
                    std::lower_bound(g_.edges.begin(), g_.edges.end(), Edge{x, y}) - g_.edges.begin());
                img |= (sa << (2 * j)) | (sb << (2 * j + 1));
            }
            if (flip_normal(img) < bits)
                return false;
        }
        return true;
    }

    Csp formula(std::uint32_t bits) const
    {
        std::vector<Constraint> cs;
        for (std::size_t i = 0; i < g_.edges.size(); ++i) {
            auto [a, b] = g_.edges[i];
            cs.push_back(Constraint{{Var{a} + 1u, (bits >> (2 * i)) & 1u}, {Var{b} + 1u, (bits >> (2 * i + 1)) & 1u}});
        }
        return Csp(2, 2, std::move(cs), g_.vertices);
    }

private:
    const Graph& g_;
    std::vector<std::vector<std::uint8_t>> auts_;
    std::vector<std::uint8_t> first_;
};

} // namespace

MinLinear2CnfReport experiment_min_linear_2cnf(std::size_t max_clauses)
{
    if (max_clauses > 6)
        throw ParameterError("max_clauses must be at most 6, got " + std::to_string(max_clauses));

    MinLinear2CnfReport report;
    report.max_clauses = max_clauses;
    report.formulas_by_clauses.assign(max_clauses + 1, 0);
    if (max_clauses == 0)
        return report;

    // Connected graphs with e + 1 edges arise from those with e edges by adding an
    // edge between two old vertices or from an old vertex to a new one.
    std::set<Graph> level{Graph{2, {{0, 1}}}};
    for (std::size_t e = 1; e <= max_clauses; ++e) {
        for (const auto& g : level) {
            ++report.graphs;
            SignClasses classes(g);
            for (std::uint32_t bits = 0; bits < (1u << (2 * e)); ++bits) {
                if (!classes.is_representative(bits))
                    continue;
                ++report.formulas;
                ++report.formulas_by_clauses[e];
                auto f = classes.formula(bits);
                if (two_sat_solve(f).status == SolveStatus::Unsatisfiable) {
                    ++report.unsatisfiable;
                    if (!report.first_unsat)
                        report.first_unsat = std::move(f);
                }
            }
        }
        if (e == max_clauses)
            break;
        std::set<Graph> next;
        for (const auto& g : level) {
            for (std::uint8_t a = 0; a < g.vertices; ++a) {
                for (std::uint8_t b = a + 1; b <= g.vertices; ++b) {
                    Graph h = g;
                    if (b == g.vertices)
                        ++h.vertices;
                    else if (std::binary_search(g.edges.begin(), g.edges.end(), Edge{a, b}))
                        continue;
                    h.edges.emplace_back(a, b);
                    std::sort(h.edges.begin(), h.edges.end());
                    next.insert(canonical(h));
                }
            }
        }
        level = std::move(next);
    }
    return report;
}

} // namespace lincsp
