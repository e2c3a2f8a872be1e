// Kuhn-Munkres with potentials and shortest augmenting paths, O(n^2 m).
// A lexicographic refinement pass pins ties deterministically.

#include "trackkit/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trackkit::assign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimum-cost assignment of every row when rows <= cols; returns col -> row
// (-1 for unassigned columns). Deterministic for fixed input.
std::vector<int> km_solve(const std::vector<std::vector<double>>& a, int n, int m) {
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, kInf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_of_col(m, -1);
    for (int j = 1; j <= m; ++j)
        if (p[j] != 0) row_of_col[j - 1] = p[j] - 1;
    return row_of_col;
}

struct Objective {
    int sentinels = 0;  // matches on forbidden entries
    double real = 0.0;  // cost over allowed entries

    bool better_or_equal(const Objective& o, double tol) const {
        if (sentinels != o.sentinels) return sentinels < o.sentinels;
        return real <= o.real + tol;
    }
};

// Solve the subproblem over the given row/col subsets and return the
// objective of an optimal matching. Sentinels are counted separately so the
// comparison is immune to the 1e9 scale.
Objective subproblem_value(const CostMatrix& c, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    const int n = static_cast<int>(rows.size());
    const int m = static_cast<int>(cols.size());
    if (n == 0 || m == 0) return {};
    const bool transposed = n > m;
    const int nn = transposed ? m : n;
    const int mm = transposed ? n : m;
    std::vector<std::vector<double>> a(nn, std::vector<double>(mm));
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < mm; ++j) {
            const int r = rows[transposed ? j : i];
            const int cidx = cols[transposed ? i : j];
            a[i][j] = c.is_forbidden(r, cidx) ? kForbiddenCost : c.at(r, cidx);
        }
    const auto row_of_col = km_solve(a, nn, mm);
    Objective obj;
    for (int j = 0; j < mm; ++j) {
        if (row_of_col[j] < 0) continue;
        const int r = rows[transposed ? j : row_of_col[j]];
        const int cidx = cols[transposed ? row_of_col[j] : j];
        if (c.is_forbidden(r, cidx))
            ++obj.sentinels;
        else
            obj.real += c.at(r, cidx);
    }
    return obj;
}

}  // namespace

std::vector<std::pair<int, int>> solve(const CostMatrix& c) {
    std::vector<std::pair<int, int>> result;
    if (c.rows == 0 || c.cols == 0) return result;

    std::vector<int> rows(c.rows), cols(c.cols);
    for (int i = 0; i < c.rows; ++i) rows[i] = i;
    for (int j = 0; j < c.cols; ++j) cols[j] = j;

    const Objective best = subproblem_value(c, rows, cols);
    const double tol = 1e-9 * std::max(1.0, std::abs(best.real));

    // Greedy re-derivation: walk rows in order and pin the smallest column
    // that keeps the optimum; this yields the lexicographically smallest
    // optimal matching.
    Objective remaining = best;
    std::vector<int> free_cols = cols;
    for (int i = 0; i < c.rows; ++i) {
        std::vector<int> rest_rows;
        for (int r = i + 1; r < c.rows; ++r) rest_rows.push_back(r);

        int chosen = -1;
        for (const int j : free_cols) {
            Objective cand;
            if (c.is_forbidden(i, j))
                cand.sentinels = 1;
            else
                cand.real = c.at(i, j);
            std::vector<int> rest_cols;
            for (const int jj : free_cols)
                if (jj != j) rest_cols.push_back(jj);
            const Objective sub = subproblem_value(c, rest_rows, rest_cols);
            cand.sentinels += sub.sentinels;
            cand.real += sub.real;
            if (cand.better_or_equal(remaining, tol)) {
                chosen = j;
                remaining = sub;
                break;
            }
        }
        if (chosen >= 0) {
            if (!c.is_forbidden(i, chosen)) result.emplace_back(i, chosen);
            free_cols.erase(std::find(free_cols.begin(), free_cols.end(), chosen));
        }
        // Unmatched row: the optimum over the remaining rows is unchanged.
    }
    return result;
}

double matching_cost(const CostMatrix& c, const std::vector<std::pair<int, int>>& m) {
    double total = 0.0;
    for (const auto& [i, j] : m) total += c.at(i, j);
    return total;
}

double brute_force_min_cost(const CostMatrix& c) {
    // Enumerate all injective row->col maps covering min(rows, cols) pairs,
    // allowing sentinel-valued entries so infeasible pairings stay comparable
    // with the solver's objective.
    const int n = c.rows, m = c.cols;
    if (n == 0 || m == 0) return 0.0;
    if (n <= m) {
        std::vector<int> perm(m);
        for (int j = 0; j < m; ++j) perm[j] = j;
        double best = kInf;
        do {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                const int j = perm[i];
                total += c.is_forbidden(i, j) ? kForbiddenCost : c.at(i, j);
            }
            best = std::min(best, total);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double best = kInf;
    do {
        double total = 0.0;
        for (int j = 0; j < m; ++j) {
            const int i = perm[j];
            total += c.is_forbidden(i, j) ? kForbiddenCost : c.at(i, j);
        }
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace trackkit::assign
