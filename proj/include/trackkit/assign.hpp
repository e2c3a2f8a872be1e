#pragma once

#include <utility>
#include <vector>

namespace trackkit::assign {

/// Cost a pair must never take part in a matching; forbidden entries are set
/// to this sentinel and any returned match touching it is stripped.
inline constexpr double kForbiddenCost = 1e9;

/// Dense rectangular cost matrix with an optional forbidden mask.
struct CostMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> costs;
    std::vector<std::uint8_t> forbidden;

    CostMatrix() = default;
    CostMatrix(int n, int m)
        : rows(n), cols(m),
          costs(static_cast<std::size_t>(n) * m, 0.0),
          forbidden(static_cast<std::size_t>(n) * m, 0) {}

    double& at(int i, int j) { return costs[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return costs[static_cast<std::size_t>(i) * cols + j]; }
    void forbid(int i, int j) { forbidden[static_cast<std::size_t>(i) * cols + j] = 1; }
    bool is_forbidden(int i, int j) const {
        return forbidden[static_cast<std::size_t>(i) * cols + j] != 0;
    }
};

/// Minimum-cost bipartite matching over the allowed entries, covering
/// min(rows, cols) pairs when feasible. Rows or columns whose entries are all
/// forbidden stay unmatched. Among equal-cost optima the lexicographically
/// smallest (row, col) set is returned.
std::vector<std::pair<int, int>> solve(const CostMatrix& c);

/// Total cost of a matching under a cost matrix (test helper).
double matching_cost(const CostMatrix& c, const std::vector<std::pair<int, int>>& m);

/// Exhaustive minimum over all matchings; factorial time, test oracle only.
double brute_force_min_cost(const CostMatrix& c);

}  // namespace trackkit::assign
