#include "pdbs/edgelist.hpp"

#include <charconv>
#include <optional>

#include "pdbs/errors.hpp"

namespace pdbs {

std::string serialize(const Graph& g) {
    std::string out = "n " + std::to_string(g.n()) + "\n";
    for (int i = 0; i < g.n(); ++i)
        for (int j = i + 1; j < g.n(); ++j)
            if (g.has_edge(i, j)) out += std::to_string(i) + " " + std::to_string(j) + "\n";
    return out;
}

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;
    long line = 0;

    std::optional<std::string_view> next_line() {
        while (pos < text.size()) {
            size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view raw = text.substr(pos, end - pos);
            pos = end + 1;
            ++line;
            size_t a = raw.find_first_not_of(" \t\r");
            if (a == std::string_view::npos) continue;  // blank
            size_t b = raw.find_last_not_of(" \t\r");
            std::string_view trimmed = raw.substr(a, b - a + 1);
            if (trimmed.front() == '#') continue;  // comment
            return trimmed;
        }
        return std::nullopt;
    }
};

// Splits a trimmed line into whitespace-separated tokens parsed as ints.
std::vector<long> parse_ints(std::string_view s, long line) {
    std::vector<long> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i >= s.size()) break;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        long value = 0;
        auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, value);
        if (ec != std::errc{} || ptr != s.data() + j)
            throw ParseError(line, "expected integer, got '" + std::string(s.substr(i, j - i)) + "'");
        out.push_back(value);
        i = j;
    }
    return out;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
    Cursor cur{text};
    auto header = cur.next_line();
    if (!header) throw ParseError(cur.line ? cur.line : 1, "missing header line 'n <N>'");
    if (header->substr(0, 1) != "n" ||
        (header->size() > 1 && (*header)[1] != ' ' && (*header)[1] != '\t'))
        throw ParseError(cur.line, "header must start with 'n'");
    auto nums = parse_ints(header->substr(1), cur.line);
    if (nums.size() != 1 || nums[0] < 1)
        throw ParseError(cur.line, "header must be 'n <N>' with N >= 1");
    long n = nums[0];

    Graph g(static_cast<int>(n));
    while (auto ln = cur.next_line()) {
        auto pair = parse_ints(*ln, cur.line);
        if (pair.size() != 2) throw ParseError(cur.line, "expected 'i j'");
        long i = pair[0], j = pair[1];
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw ParseError(cur.line, "vertex out of range [0," + std::to_string(n) + ")");
        if (i == j) throw ParseError(cur.line, "self loop");
        if (i > j) throw ParseError(cur.line, "edge must satisfy i < j");
        if (g.has_edge(static_cast<int>(i), static_cast<int>(j)))
            throw ParseError(cur.line, "duplicate edge");
        g.set_edge(static_cast<int>(i), static_cast<int>(j));
    }
    return g;
}

}  // namespace pdbs
