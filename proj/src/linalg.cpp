#include "heightlab/linalg.hpp"

#include "heightlab/errors.hpp"

#include <utility>

namespace heightlab {

Int bareiss_det(IntMatrix m) {
    std::size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw DomainError("determinant needs a square matrix");
    if (n == 0) return 1;
    Int prev = 1;
    int swaps = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            ++swaps;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Int d = m[n - 1][n - 1];
    return swaps % 2 ? Int(-d) : d;
}

int bareiss_rank(IntMatrix m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

RatMatrix rational_nullspace(RatMatrix m) {
    if (m.empty()) return {};
    std::size_t rows = m.size(), cols = m[0].size();
    std::vector<long> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        Rat lead = m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col_of_row.push_back(static_cast<long>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (long c : pivot_col_of_row) is_pivot[static_cast<std::size_t>(c)] = true;

    RatMatrix basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free_c] = 1;
        for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) {
            auto pc = static_cast<std::size_t>(pivot_col_of_row[i]);
            v[pc] = -m[i][free_c];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Int lattice_index_2d(const std::vector<std::array<Int, 2>>& gens) {
    // Hermite reduction of a rank-<=2 lattice in Z^2: combine generators to
    // (g1, 0) and (w, g2) and return g1*g2.
    Int w1 = 0, g2 = 0; // running vector with second coordinate g2
    std::vector<Int> firsts;
    for (const auto& g : gens) {
        if (g[1] == 0) {
            firsts.push_back(g[0]);
            continue;
        }
        if (g2 == 0) {
            w1 = g[0];
            g2 = g[1];
            continue;
        }
        Int s, t, gg;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g2.get_mpz_t(),
                   g[1].get_mpz_t());
        Int new_w1 = s * w1 + t * g[0];
        // the discarded combinations land in second coordinate 0
        firsts.push_back((g2 / gg) * g[0] - (g[1] / gg) * w1);
        w1 = new_w1;
        g2 = gg;
    }
    Int g1 = 0;
    for (const auto& u : firsts) g1 = gcd(g1, u);
    if (g1 == 0 || g2 == 0) return 0;
    return heightlab::abs(g1 * g2);
}

} // namespace heightlab
