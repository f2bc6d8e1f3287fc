#ifndef PDBS_GRAPH_HPP
#define PDBS_GRAPH_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace pdbs {

// Undirected simple graph on vertices 0..n-1, stored as n rows of n-bit
// adjacency sets. Rows make degree and block-sum statistics plain popcounts.
// set_edge writes both directions and rejects self loops, so symmetry and
// loop-freeness hold by construction. Immutable sharing across threads is
// safe once building is done.
class Graph {
public:
    explicit Graph(int n);

    int n() const { return n_; }
    int words_per_row() const { return words_; }

    bool has_edge(int i, int j) const;
    void set_edge(int i, int j, bool present = true);

    std::span<const uint64_t> row(int i) const {
        return {bits_.data() + static_cast<size_t>(i) * words_, static_cast<size_t>(words_)};
    }

    int degree(int i) const;
    int max_degree() const;
    int64_t edge_count() const;

    bool operator==(const Graph& other) const = default;

private:
    void check_vertex(int i) const;

    int n_;
    int words_;
    std::vector<uint64_t> bits_;
};

// Popcount of the intersection of a row with an arbitrary vertex mask.
int intersect_count(std::span<const uint64_t> row, std::span<const uint64_t> mask);

}  // namespace pdbs

#endif
