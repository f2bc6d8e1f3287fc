#include "pdbs/graph.hpp"

#include <bit>
#include <string>

#include "pdbs/errors.hpp"

namespace pdbs {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
    if (n < 1) throw ParamError("graph needs at least one vertex");
    bits_.assign(static_cast<size_t>(n_) * words_, 0);
}

void Graph::check_vertex(int i) const {
    if (i < 0 || i >= n_)
        throw ParamError("vertex " + std::to_string(i) + " out of range [0," +
                         std::to_string(n_) + ")");
}

bool Graph::has_edge(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    if (i == j) return false;
    return (bits_[static_cast<size_t>(i) * words_ + j / 64] >> (j % 64)) & 1u;
}

void Graph::set_edge(int i, int j, bool present) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw ParamError("self loop rejected at vertex " + std::to_string(i));
    uint64_t bi = uint64_t{1} << (j % 64);
    uint64_t bj = uint64_t{1} << (i % 64);
    size_t wi = static_cast<size_t>(i) * words_ + j / 64;
    size_t wj = static_cast<size_t>(j) * words_ + i / 64;
    if (present) {
        bits_[wi] |= bi;
        bits_[wj] |= bj;
    } else {
        bits_[wi] &= ~bi;
        bits_[wj] &= ~bj;
    }
}

int Graph::degree(int i) const {
    check_vertex(i);
    int d = 0;
    for (uint64_t w : row(i)) d += std::popcount(w);
    return d;
}

int Graph::max_degree() const {
    int best = 0;
    for (int i = 0; i < n_; ++i) best = std::max(best, degree(i));
    return best;
}

int64_t Graph::edge_count() const {
    int64_t total = 0;
    for (uint64_t w : bits_) total += std::popcount(w);
    return total / 2;
}

int intersect_count(std::span<const uint64_t> row, std::span<const uint64_t> mask) {
    int c = 0;
    size_t m = std::min(row.size(), mask.size());
    for (size_t w = 0; w < m; ++w) c += std::popcount(row[w] & mask[w]);
    return c;
}

}  // namespace pdbs
