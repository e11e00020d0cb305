#ifndef MDISC_QUADRATIC_RANK_HPP
#define MDISC_QUADRATIC_RANK_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace mdisc {

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t bareiss_rank(std::vector<std::vector<Integer>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

/// Symmetric matrix of the degree-2 homogeneous part: entry (i,i) is the
/// coefficient of x_i^2, entry (i,j) half the coefficient of x_i x_j.
inline std::vector<std::vector<Rational>> quadratic_matrix(const Polynomial& g) {
    const std::size_t n = g.ring().size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& [mono, c] : g.terms()) {
        if (mono.degree() != 2) continue;
        std::vector<std::size_t> vars;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned k = 0; k < mono[i]; ++k) vars.push_back(i);
        if (vars[0] == vars[1]) {
            m[vars[0]][vars[0]] = c;
        } else {
            m[vars[0]][vars[1]] = c / 2;
            m[vars[1]][vars[0]] = c / 2;
        }
    }
    return m;
}

/// Rank of the quadratic part of g.
inline std::size_t quadratic_rank(const Polynomial& g) {
    const auto m = quadratic_matrix(g);
    Integer scale = 1;
    for (const auto& row : m)
        for (const auto& v : row) scale = lcm_of(scale, v.get_den());
    std::vector<std::vector<Integer>> z(m.size(), std::vector<Integer>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            Rational v = m[i][j] * scale;
            z[i][j] = v.get_num();
        }
    return bareiss_rank(std::move(z));
}

}  // namespace mdisc

#endif  // MDISC_QUADRATIC_RANK_HPP
