#include "lincsp/io.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <vector>

#include "lincsp/error.hpp"

namespace lincsp {

namespace {

/// Splits text into lines, tracking 1-based line numbers.
class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    bool next(std::string_view& line)
    {
        if (pos_ >= text_.size())
            return false;
        auto end = text_.find('\n', pos_);
        if (end == std::string_view::npos)
            end = text_.size();
        line = text_.substr(pos_, end - pos_);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        pos_ = end + 1;
        ++number_;
        return true;
    }

    std::size_t number() const noexcept { return number_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t number_ = 0;
};

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        auto j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view token, T& out)
{
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

bool is_comment(std::string_view line)
{
    return line == "c" || line.starts_with("c ") || line.starts_with("c\t");
}

} // namespace

std::string serialize(const Csp& csp, std::span<const std::string> comments)
{
    std::ostringstream out;
    for (const auto& c : comments)
        out << "c " << c << '\n';
    out << "p csp " << csp.num_vars() << ' ' << csp.d() << ' ' << csp.k() << ' ' << csp.size() << '\n';
    const auto canon = csp.canonical();
    for (const auto& c : canon.constraints()) {
        bool first = true;
        for (const auto& lit : c.literals()) {
            if (!first)
                out << ' ';
            out << lit.var << ':' << lit.value;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

Csp parse(std::string_view text)
{
    LineReader reader(text);
    std::string_view line;
    bool have_header = false;
    std::size_t n = 0, k = 0, m = 0;
    Value d = 0;
    std::vector<Constraint> constraints;
    std::set<Constraint> seen;

    while (reader.next(line)) {
        const auto ln = reader.number();
        if (line.empty() || is_comment(line))
            continue;
        const auto tokens = split(line);
        if (tokens.empty())
            continue;
        if (!have_header) {
            if (tokens.size() != 6 || tokens[0] != "p" || tokens[1] != "csp" || !parse_number(tokens[2], n) ||
                !parse_number(tokens[3], d) || !parse_number(tokens[4], k) || !parse_number(tokens[5], m))
                throw ParseError(ln, "expected header 'p csp <n_vars> <d> <k> <m>'");
            if (d < 2)
                throw ParseError(ln, "domain size must be at least 2");
            if (k < 1)
                throw ParseError(ln, "arity must be at least 1");
            have_header = true;
            continue;
        }
        if (tokens[0] == "p")
            throw ParseError(ln, "duplicate header");
        if (tokens.size() != k)
            throw ParseError(ln, "expected " + std::to_string(k) + " literals, found " + std::to_string(tokens.size()));
        std::vector<Literal> lits;
        Var prev = 0;
        for (auto tok : tokens) {
            const auto colon = tok.find(':');
            Var v = 0;
            Value b = 0;
            if (colon == std::string_view::npos || !parse_number(tok.substr(0, colon), v) ||
                !parse_number(tok.substr(colon + 1), b))
                throw ParseError(ln, "malformed literal '" + std::string(tok) + "'");
            if (v < 1 || v > n)
                throw ParseError(ln, "variable " + std::to_string(v) + " outside 1.." + std::to_string(n));
            if (b >= d)
                throw ParseError(ln, "value " + std::to_string(b) + " outside 0.." + std::to_string(d - 1));
            if (v == prev)
                throw ParseError(ln, "variable " + std::to_string(v) + " repeated");
            if (v < prev)
                throw ParseError(ln, "variables must be ascending");
            prev = v;
            lits.push_back({v, b});
        }
        Constraint c(std::move(lits));
        if (!seen.insert(c).second)
            throw ParseError(ln, "duplicate constraint");
        if (constraints.size() == m)
            throw ParseError(ln, "more than the " + std::to_string(m) + " declared constraints");
        constraints.push_back(std::move(c));
    }
    if (!have_header)
        throw ParseError(reader.number(), "missing header 'p csp'");
    if (constraints.size() != m)
        throw ParseError(reader.number(), "declared " + std::to_string(m) + " constraints, found " +
                                              std::to_string(constraints.size()));
    return Csp(k, d, std::move(constraints), n);
}

std::string to_dimacs(const Csp& csp, std::span<const std::string> comments)
{
    const auto clauses = to_clauses(csp.canonical());
    std::ostringstream out;
    for (const auto& c : comments)
        out << "c " << c << '\n';
    out << "p cnf " << csp.num_vars() << ' ' << csp.size() << '\n';
    for (const auto& clause : clauses) {
        for (int l : clause)
            out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

Csp from_dimacs(std::string_view text, std::size_t empty_k)
{
    LineReader reader(text);
    std::string_view line;
    bool have_header = false;
    std::size_t n = 0, m = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<int> current;
    std::set<std::vector<int>> seen;
    std::size_t k = 0;

    while (reader.next(line)) {
        const auto ln = reader.number();
        if (line.empty() || is_comment(line))
            continue;
        const auto tokens = split(line);
        if (tokens.empty())
            continue;
        if (tokens[0] == "%")
            break;
        if (!have_header) {
            if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf" || !parse_number(tokens[2], n) ||
                !parse_number(tokens[3], m))
                throw ParseError(ln, "expected header 'p cnf <n> <m>'");
            have_header = true;
            continue;
        }
        for (auto tok : tokens) {
            int l = 0;
            if (!parse_number(tok, l))
                throw ParseError(ln, "malformed literal '" + std::string(tok) + "'");
            if (l != 0) {
                const auto v = static_cast<std::size_t>(l < 0 ? -static_cast<long>(l) : l);
                if (v > n)
                    throw ParseError(ln, "variable " + std::to_string(v) + " exceeds " + std::to_string(n));
                for (int prev : current)
                    if (prev == l || prev == -l)
                        throw ParseError(ln, "variable " + std::to_string(v) + " repeated in clause");
                current.push_back(l);
                continue;
            }
            if (k == 0)
                k = current.size();
            if (current.empty() || current.size() != k)
                throw ParseError(ln, "clause of length " + std::to_string(current.size()) + ", expected " +
                                         std::to_string(k == 0 ? 1 : k));
            auto key = current;
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second)
                throw ParseError(ln, "duplicate clause");
            clauses.push_back(std::move(current));
            current.clear();
        }
    }
    if (!have_header)
        throw ParseError(reader.number(), "missing header 'p cnf'");
    if (!current.empty())
        throw ParseError(reader.number(), "last clause is not terminated by 0");
    if (clauses.size() != m)
        throw ParseError(reader.number(),
                         "declared " + std::to_string(m) + " clauses, found " + std::to_string(clauses.size()));
    return from_clauses(clauses, k == 0 ? empty_k : k, n);
}

Csp parse_any(std::string_view text)
{
    LineReader reader(text);
    std::string_view line;
    while (reader.next(line)) {
        if (line.empty() || is_comment(line))
            continue;
        const auto tokens = split(line);
        if (tokens.size() >= 2 && tokens[0] == "p") {
            if (tokens[1] == "csp")
                return parse(text);
            if (tokens[1] == "cnf")
                return from_dimacs(text);
        }
        throw ParseError(reader.number(), "expected a 'p csp' or 'p cnf' header");
    }
    throw ParseError(reader.number(), "empty input");
}

} // namespace lincsp
