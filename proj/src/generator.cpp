#include "lincsp/generator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_set>

#include "lincsp/random.hpp"

namespace lincsp {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
// Largest C(n, k) the greedy packing enumerates in full.
constexpr std::uint64_t kMaxEnumerated = std::uint64_t{1} << 23;
// Coverage bitsets larger than this fall back to a hash set.
constexpr std::uint64_t kMaxCoverageBits = std::uint64_t{1} << 28;

void require_nkl(std::size_t n, std::size_t k, std::size_t ell)
{
    if (ell < 1 || ell > k || k > n)
        throw ParameterError("need 1 <= ell <= k <= n, got n = " + std::to_string(n) + ", k = " +
                             std::to_string(k) + ", ell = " + std::to_string(ell));
}

/// binom(a, b) for a <= rows, b <= cols, saturating at 2^64 - 1.
class BinomialTable {
public:
    BinomialTable(std::size_t rows, std::size_t cols) : cols_(cols + 1), table_((rows + 1) * (cols + 1), 0)
    {
        for (std::size_t a = 0; a <= rows; ++a) {
            at(a, 0) = 1;
            for (std::size_t b = 1; b <= std::min(a, cols); ++b) {
                const auto x = at(a - 1, b - 1);
                const auto y = b <= a - 1 ? at(a - 1, b) : 0;
                at(a, b) = (x > kSaturated - y) ? kSaturated : x + y;
            }
        }
    }

    std::uint64_t operator()(std::size_t a, std::size_t b) const { return table_[a * cols_ + b]; }

private:
    std::uint64_t& at(std::size_t a, std::size_t b) { return table_[a * cols_ + b]; }

    std::size_t cols_;
    std::vector<std::uint64_t> table_;
};

/// All r-subsets of positions {0..k-1}, flattened, in colex order.
std::vector<std::uint8_t> position_combinations(std::size_t k, std::size_t r)
{
    std::vector<std::uint8_t> out;
    std::vector<std::size_t> c(r);
    for (std::size_t i = 0; i < r; ++i)
        c[i] = i;
    while (true) {
        for (auto x : c)
            out.push_back(static_cast<std::uint8_t>(x));
        std::size_t i = 0;
        while (i < r && c[i] + 1 == (i + 1 < r ? c[i + 1] : k))
            ++i;
        if (i == r)
            break;
        ++c[i];
        for (std::size_t j = 0; j < i; ++j)
            c[j] = j;
    }
    return out;
}

/// Set of covered ell-subsets keyed by combinatorial rank.
class Coverage {
public:
    explicit Coverage(std::uint64_t universe)
    {
        if (universe <= kMaxCoverageBits)
            bits_.assign((universe + 63) / 64, 0);
        else
            use_hash_ = true;
    }

    bool contains(std::uint64_t rank) const
    {
        if (use_hash_)
            return hash_.contains(rank);
        return (bits_[rank >> 6] >> (rank & 63)) & 1;
    }

    void insert(std::uint64_t rank)
    {
        if (use_hash_)
            hash_.insert(rank);
        else
            bits_[rank >> 6] |= std::uint64_t{1} << (rank & 63);
    }

private:
    bool use_hash_ = false;
    std::vector<std::uint64_t> bits_;
    std::unordered_set<std::uint64_t> hash_;
};

/// Greedy packing state over sorted 0-based vertex arrays: a k-set is addable
/// iff none of its ell-subsets is covered by an earlier edge.
class GeneralPacker {
public:
    GeneralPacker(std::size_t n, std::size_t k, std::size_t ell)
        : binom_(n, ell), combos_(position_combinations(k, ell)), ell_(ell), coverage_(binom_(n, ell))
    {
        if (binom_(n, ell) == kSaturated)
            throw ParameterError("C(n, ell) too large to index ell-subsets");
        ranks_.resize(combos_.size() / ell_);
    }

    /// Whether the k-set fits; on success remembers its ell-subsets for commit().
    bool fits(std::span<const std::uint32_t> vertices)
    {
        for (std::size_t c = 0; c < ranks_.size(); ++c) {
            std::uint64_t r = 0;
            for (std::size_t j = 0; j < ell_; ++j)
                r += binom_(vertices[combos_[c * ell_ + j]], j + 1);
            if (coverage_.contains(r))
                return false;
            ranks_[c] = r;
        }
        return true;
    }

    void commit()
    {
        for (auto r : ranks_)
            coverage_.insert(r);
    }

    bool try_add(std::span<const std::uint32_t> vertices)
    {
        if (!fits(vertices))
            return false;
        commit();
        return true;
    }

private:
    BinomialTable binom_;
    std::vector<std::uint8_t> combos_;
    std::size_t ell_;
    Coverage coverage_;
    std::vector<std::uint64_t> ranks_;
};

void append_edge(Hypergraph& h, std::span<const std::uint32_t> vertices)
{
    const auto at = h.vertices.size();
    h.vertices.resize(at + vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        h.vertices[at + i] = vertices[i] + 1;
}

std::uint64_t subset_count(std::size_t n, std::size_t k)
{
    return BinomialTable(n, k)(n, k);
}

/// Runs the greedy pass: repeatedly draws a uniformly random unvisited item
/// (a Fisher-Yates shuffle taken lazily from the back) and keeps it if it fits.
/// `fits(item)` tests an item, `keep(item)` is called right after a successful
/// test and returns false to stop.
///
/// The packing only grows, so an item that does not fit now never will. When
/// most recent draws are rejected, the unvisited items are compacted to those
/// that still fit; drawing from the compacted list picks the next kept item
/// with the same distribution, and the pass ends when it is empty.
template <typename T, typename Fits, typename Keep>
void greedy_pass(std::vector<T>& items, CounterRng& rng, Fits&& fits, Keep&& keep)
{
    constexpr std::size_t kMinWindow = 256;
    std::size_t live = items.size(), drawn = 0, rejected = 0, window = kMinWindow;
    while (live > 0) {
        if (live > 1)
            std::swap(items[live - 1], items[static_cast<std::size_t>(rng.below(live))]);
        const T item = items[--live];
        ++drawn;
        if (fits(item)) {
            if (!keep(item))
                return;
        }
        else {
            ++rejected;
        }
        if (drawn < window)
            continue;
        window = kMinWindow;
        if (16 * rejected >= 15 * drawn) {
            std::size_t out = 0;
            for (std::size_t t = 0; t < live; ++t)
                if (fits(items[t]))
                    items[out++] = items[t];
            live = out;
            // Draw at least half the survivors before compacting again, so
            // compaction work stays proportional to the draws.
            window = std::max(kMinWindow, live / 2);
        }
        drawn = rejected = 0;
    }
}

// Fast path for n <= 64: k-sets as bitmasks. cover[T] is the union of kept edges
// containing the (ell-1)-set T; S conflicts iff some (ell-1)-subset T of S has
// another vertex of S in cover[T].
/// Visits the (Left + depth)-subsets T of pos[0..k) extending a partial choice,
/// carrying T's colex rank and vertex mask. Without Commit, reports whether
/// cover[T] meets s outside T; with Commit, adds s to every cover[T].
template <std::size_t Left, bool Commit, typename Mask>
[[gnu::always_inline]] inline bool walk_subsets(const std::uint32_t* pos, std::size_t k, std::size_t from, std::size_t depth, std::uint64_t rank,
                  Mask tmask, Mask s, const BinomialTable& binom, std::vector<Mask>& cover)
{
    if constexpr (Left == 0) {
        if constexpr (Commit) {
            cover[rank] |= s;
            return false;
        }
        else {
            return (cover[rank] & s & static_cast<Mask>(~tmask)) != 0;
        }
    }
    else {
        for (std::size_t i = from; i + Left <= k; ++i) {
            const auto v = pos[i];
            if (walk_subsets<Left - 1, Commit>(pos, k, i + 1, depth + 1, rank + binom(v, depth + 1),
                                               static_cast<Mask>(tmask | (Mask{1} << v)), s, binom, cover))
                return true;
        }
        return false;
    }
}

template <bool Commit, typename Mask>
bool walk_all(std::size_t r, const std::uint32_t* pos, std::size_t k, Mask s, const BinomialTable& binom,
              std::vector<Mask>& cover)
{
    switch (r) {
    case 0: return walk_subsets<0, Commit>(pos, k, 0, 0, 0, Mask{0}, s, binom, cover);
    case 1: return walk_subsets<1, Commit>(pos, k, 0, 0, 0, Mask{0}, s, binom, cover);
    case 2: return walk_subsets<2, Commit>(pos, k, 0, 0, 0, Mask{0}, s, binom, cover);
    case 3: return walk_subsets<3, Commit>(pos, k, 0, 0, 0, Mask{0}, s, binom, cover);
    case 4: return walk_subsets<4, Commit>(pos, k, 0, 0, 0, Mask{0}, s, binom, cover);
    case 5: return walk_subsets<5, Commit>(pos, k, 0, 0, 0, Mask{0}, s, binom, cover);
    case 6: return walk_subsets<6, Commit>(pos, k, 0, 0, 0, Mask{0}, s, binom, cover);
    default: return walk_subsets<7, Commit>(pos, k, 0, 0, 0, Mask{0}, s, binom, cover);
    }
}

// K > 0 fixes k at compile time (K <= 8) so the per-subset loops unroll; K = 0
// is the general runtime-k loop.
template <typename Mask, std::size_t K>
Hypergraph greedy_masks(std::size_t n, std::size_t k_arg, std::size_t ell, std::uint64_t seed, std::size_t max_edges)
{
    const std::size_t k = K ? K : k_arg;
    constexpr std::size_t bits = 8 * sizeof(Mask);
    const auto count = subset_count(n, k);
    std::vector<Mask> order(count);
    Mask x = k == bits ? static_cast<Mask>(~Mask{0}) : static_cast<Mask>((Mask{1} << k) - 1);
    for (std::uint64_t i = 0; i < count; ++i) {
        order[i] = x;
        if (i + 1 < count) {
            // Gosper's hack: next integer with the same popcount.
            const int low = std::countr_zero(x);
            const Mask r = static_cast<Mask>(x + (Mask{1} << low));
            x = static_cast<Mask>((((r ^ x) >> 2) >> low) | r);
        }
    }

    const BinomialTable binom(n, ell);
    const std::size_t r = ell - 1;
    const auto combos = position_combinations(k, r);
    const std::size_t ncombos = r == 0 ? 1 : combos.size() / r;
    std::vector<Mask> cover(binom(n, r), 0);
    std::vector<std::uint64_t> ranks(ncombos);
    std::uint32_t pos[64];

    auto positions = [&](Mask s) {
        for (std::size_t i = 0; i < k; ++i) {
            pos[i] = static_cast<std::uint32_t>(std::countr_zero(s));
            s &= static_cast<Mask>(s - 1);
        }
    };
    auto fits = [&](Mask s) {
        // Distinct k-sets never share k vertices.
        if (ell == k)
            return true;
        positions(s);
        if constexpr (K > 0)
            return !walk_all<false>(r, pos, k, s, binom, cover);
        for (std::size_t c = 0; c < ncombos; ++c) {
            std::uint64_t rank = 0;
            Mask tmask = 0;
            for (std::size_t j = 0; j < r; ++j) {
                const auto v = pos[combos[c * r + j]];
                rank += binom(v, j + 1);
                tmask |= static_cast<Mask>(Mask{1} << v);
            }
            if ((cover[rank] & s & static_cast<Mask>(~tmask)) != 0)
                return false;
            ranks[c] = rank;
        }
        return true;
    };

    Hypergraph h{n, k, {}};
    if (ell == k)
        h.vertices.reserve(std::min<std::uint64_t>(count, max_edges) * k);
    std::size_t kept = 0;
    auto keep = [&](Mask s) {
        positions(s);
        if (ell < k) {
            if constexpr (K > 0) {
                walk_all<true>(r, pos, k, s, binom, cover);
            }
            else {
                for (std::size_t c = 0; c < ncombos; ++c)
                    cover[ranks[c]] |= s;
            }
        }
        append_edge(h, std::span<const std::uint32_t>(pos, k));
        return ++kept < max_edges;
    };
    CounterRng rng(seed, 2);
    greedy_pass(order, rng, fits, keep);
    return h;
}

template <typename Mask>
Hypergraph greedy_masks_dispatch(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed,
                                 std::size_t max_edges)
{
    switch (k) {
    case 2: return greedy_masks<Mask, 2>(n, k, ell, seed, max_edges);
    case 3: return greedy_masks<Mask, 3>(n, k, ell, seed, max_edges);
    case 4: return greedy_masks<Mask, 4>(n, k, ell, seed, max_edges);
    case 5: return greedy_masks<Mask, 5>(n, k, ell, seed, max_edges);
    case 6: return greedy_masks<Mask, 6>(n, k, ell, seed, max_edges);
    case 7: return greedy_masks<Mask, 7>(n, k, ell, seed, max_edges);
    case 8: return greedy_masks<Mask, 8>(n, k, ell, seed, max_edges);
    default: return greedy_masks<Mask, 0>(n, k, ell, seed, max_edges);
    }
}

Hypergraph greedy_enumerated_general(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed,
                                     std::size_t max_edges)
{
    const auto count = subset_count(n, k);
    std::vector<std::uint32_t> flat;
    flat.reserve(count * k);
    std::vector<std::uint32_t> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t t = 0; t < count; ++t) {
        flat.insert(flat.end(), c.begin(), c.end());
        std::size_t i = 0;
        while (i < k && c[i] + 1 == (i + 1 < k ? c[i + 1] : n))
            ++i;
        if (i == k)
            break;
        ++c[i];
        for (std::size_t j = 0; j < i; ++j)
            c[j] = static_cast<std::uint32_t>(j);
    }
    std::vector<std::uint32_t> order(count);
    for (std::uint32_t i = 0; i < count; ++i)
        order[i] = i;

    GeneralPacker packer(n, k, ell);
    Hypergraph h{n, k, {}};
    auto subset = [&](std::uint32_t idx) { return std::span<const std::uint32_t>(flat.data() + std::size_t{idx} * k, k); };
    auto fits = [&](std::uint32_t idx) { return packer.fits(subset(idx)); };
    auto keep = [&](std::uint32_t idx) {
        packer.commit();
        append_edge(h, subset(idx));
        return h.size() < max_edges;
    };
    CounterRng rng(seed, 2);
    greedy_pass(order, rng, fits, keep);
    return h;
}

Hypergraph greedy_sampled(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed, std::size_t max_edges)
{
    CounterRng rng(seed, 2);
    GeneralPacker packer(n, k, ell);
    Hypergraph h{n, k, {}};
    const std::uint64_t attempts = std::max<std::uint64_t>(std::uint64_t{1} << 20, 64 * std::uint64_t{max_edges});
    std::vector<std::uint32_t> s;
    for (std::uint64_t a = 0; a < attempts && h.size() < max_edges; ++a) {
        // Floyd's algorithm for a uniform k-subset of {0..n-1}.
        s.clear();
        for (std::size_t j = n - k; j < n; ++j) {
            auto t = static_cast<std::uint32_t>(rng.below(j + 1));
            if (std::find(s.begin(), s.end(), t) != s.end())
                t = static_cast<std::uint32_t>(j);
            s.push_back(t);
        }
        std::sort(s.begin(), s.end());
        if (packer.try_add(s))
            append_edge(h, s);
    }
    return h;
}

} // namespace

namespace detail {

Hypergraph greedy_enumerated(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed,
                             std::size_t max_edges, bool allow_masks)
{
    require_nkl(n, k, ell);
    if (subset_count(n, k) > kMaxEnumerated)
        throw ParameterError("C(" + std::to_string(n) + ", " + std::to_string(k) + ") k-subsets are too many to enumerate");
    if (allow_masks && n <= 64 && BinomialTable(n, ell)(n, ell - 1) <= (std::uint64_t{1} << 26))
        return n <= 32 ? greedy_masks_dispatch<std::uint32_t>(n, k, ell, seed, max_edges)
                       : greedy_masks_dispatch<std::uint64_t>(n, k, ell, seed, max_edges);
    return greedy_enumerated_general(n, k, ell, seed, max_edges);
}

} // namespace detail

Hypergraph greedy_maximal_hypergraph(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed)
{
    return detail::greedy_enumerated(n, k, ell, seed, std::numeric_limits<std::size_t>::max(), true);
}

Hypergraph greedy_hypergraph(std::size_t n, std::size_t k, std::size_t ell, std::uint64_t seed, std::size_t max_edges)
{
    require_nkl(n, k, ell);
    if (max_edges == 0)
        return Hypergraph{n, k, {}};
    if (subset_count(n, k) <= kMaxEnumerated)
        return detail::greedy_enumerated(n, k, ell, seed, max_edges, true);
    return greedy_sampled(n, k, ell, seed, max_edges);
}

BigInt hypergraph_size_lower_bound(std::size_t n, std::size_t k, std::size_t ell)
{
    require_nkl(n, k, ell);
    const BigInt num = binomial(n, ell);
    const BigInt den = binomial(k, ell) * binomial(k, ell);
    return (num + den - 1) / den;
}

std::size_t choose_n(std::size_t k, std::uint32_t d, std::size_t ell)
{
    if (d < 2)
        throw ParameterError("d must be at least 2, got " + std::to_string(d));
    if (ell < 2 || ell > k)
        throw ParameterError("need 2 <= ell <= k, got k = " + std::to_string(k) + ", ell = " + std::to_string(ell));
    const double kd = static_cast<double>(k), ld = static_cast<double>(ell);
    const double ln_d = std::log(static_cast<double>(d));
    double n = std::pow(std::numbers::e * kd * kd / ld, ld / (ld - 1)) *
               std::pow(ln_d * std::pow(static_cast<double>(d), kd), 1.0 / (ld - 1));
    if (!std::isfinite(n))
        n = std::exp(ld / (ld - 1) * std::log(std::numbers::e * kd * kd / ld) +
                     (std::log(ln_d) + kd * ln_d) / (ld - 1));
    n = std::ceil(n);
    if (!(n < 0x1p63))
        throw ParameterError("chosen n overflows for k = " + std::to_string(k));
    return static_cast<std::size_t>(n);
}

std::size_t required_m(std::size_t n, std::size_t k, std::uint32_t d)
{
    if (d < 2)
        throw ParameterError("d must be at least 2, got " + std::to_string(d));
    const double m = std::ceil(std::log(static_cast<double>(d)) * static_cast<double>(n) *
                               std::pow(static_cast<double>(d), static_cast<double>(k)));
    if (!(m < 0x1p63))
        throw ParameterError("required m overflows");
    return static_cast<std::size_t>(m);
}

Csp instantiate_random(const Hypergraph& h, std::uint32_t d, std::uint64_t seed)
{
    if (d < 2)
        throw ParameterError("d must be at least 2, got " + std::to_string(d));
    CounterRng rng(seed, 3);
    std::vector<Constraint> constraints;
    constraints.reserve(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto edge = h.edge(i);
        std::vector<Literal> lits;
        lits.reserve(edge.size());
        for (auto v : edge)
            lits.push_back({v, static_cast<Value>(rng.below(d))});
        constraints.emplace_back(std::move(lits));
    }
    return Csp(h.k, d, std::move(constraints), h.n);
}

ExpectedCount expected_sat_count(std::size_t n, std::size_t m, std::size_t k, std::uint32_t d)
{
    if (d < 2)
        throw ParameterError("d must be at least 2, got " + std::to_string(d));
    const double ln_d = std::log(static_cast<double>(d));
    const double miss = std::exp(-static_cast<double>(k) * ln_d);  // d^-k
    const double nd = static_cast<double>(n), md = static_cast<double>(m);

    ExpectedCount out;
    out.log_exact = nd * ln_d + md * std::log1p(-miss);
    out.log_upper = nd * ln_d - md * miss;
    const double direct = std::pow(static_cast<double>(d), nd) * std::pow(1.0 - miss, md);
    out.exact = (std::isfinite(direct) && direct > 0) ? direct : std::exp(out.log_exact);
    out.upper = std::exp(out.log_upper);
    return out;
}

SearchResult search_unsat(const GenParams& p)
{
    if (p.d < 2)
        throw ParameterError("d must be at least 2, got " + std::to_string(p.d));
    if (p.ell < 2 || p.ell > p.k)
        throw ParameterError("need 2 <= ell <= k, got k = " + std::to_string(p.k) + ", ell = " + std::to_string(p.ell));
    if (p.trials == 0)
        throw ParameterError("trials must be positive");
    if (!(p.overshoot > 0))
        throw ParameterError("overshoot must be positive");

    const std::size_t n = p.n.value_or(choose_n(p.k, p.d, p.ell));
    if (n < p.k)
        throw ParameterError("n = " + std::to_string(n) + " is smaller than k = " + std::to_string(p.k));
    const std::size_t m =
        p.m.value_or(static_cast<std::size_t>(std::ceil(p.overshoot * static_cast<double>(required_m(n, p.k, p.d)))));

    if (p.verify == VerifyMode::TwoSat && (p.d != 2 || p.k > 2))
        throw PreconditionError("two-sat verification needs d = 2 and k <= 2");
    if (p.verify == VerifyMode::Oracle &&
        static_cast<double>(n) * std::log2(static_cast<double>(p.d)) > kMaxOracleSearchBits)
        throw PreconditionError("n = " + std::to_string(n) + " variables with d = " + std::to_string(p.d) +
                                    " exceeds exhaustive search",
                                std::nullopt, n);
    if (binomial(n, p.k) < m)
        throw ParameterError("m = " + std::to_string(m) + " exceeds the number of k-subsets of " + std::to_string(n) +
                             " vertices");

    SearchResult result{Csp(p.k, p.d, {}, n), n, m, false, 0, expected_sat_count(n, m, p.k, p.d), {}};
    for (std::size_t t = 0; t < p.trials; ++t) {
        const auto sub = derive_seed(p.seed, t);
        auto h = greedy_hypergraph(n, p.k, p.ell, sub, m);
        if (h.size() < m)
            throw ParameterError("m = " + std::to_string(m) + " exceeds the " + std::to_string(h.size()) +
                                 " edges of the ell-disjoint packing");
        auto csp = instantiate_random(h, p.d, sub);
        result.trials_used = t + 1;

        if (p.verify == VerifyMode::None) {
            result.trials.push_back({t, sub, std::nullopt});
            result.instance = std::move(csp);
            return result;
        }

        auto verify = [&](const Csp& f) {
            return p.verify == VerifyMode::TwoSat ? two_sat_solve(f).status
                                                  : exhaustive_solve(f, {p.node_budget}).status;
        };
        const auto verdict = verify(csp);
        result.trials.push_back({t, sub, verdict});
        if (verdict == SolveStatus::Unsatisfiable) {
            if (verify(csp.canonical()) != SolveStatus::Unsatisfiable)
                throw InvariantError("verification is not stable under constraint reordering");
            result.verified_unsat = true;
            result.instance = std::move(csp);
            return result;
        }
    }
    throw SearchExhaustedError("no unsatisfiable instance within " + std::to_string(p.trials) + " trials",
                               std::move(result.trials));
}

} // namespace lincsp
