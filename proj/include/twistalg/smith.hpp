#pragma once

#include <cstddef>
#include <vector>

#include "twistalg/rational.hpp"

namespace twistalg {

using IntMatrix = std::vector<std::vector<Int>>;

inline IntMatrix identity_int_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline void check_rectangular(const IntMatrix& a, const char* who) {
    for (const auto& row : a) {
        if (row.size() != (a.empty() ? 0 : a[0].size())) {
            throw std::invalid_argument(std::string(who) + ": ragged matrix");
        }
    }
}

// Exact determinant via fraction-free (Bareiss) elimination.
inline Int determinant(IntMatrix a) {
    check_rectangular(a, "determinant");
    const std::size_t n = a.size();
    if (n == 0) return Int(1);
    if (a[0].size() != n) throw std::invalid_argument("determinant: matrix not square");
    Int sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Smith-type diagonalization D = U * A * V with U, V unimodular.  The
// diagonal is normalized nonnegative with the divisibility chain
// d_0 | d_1 | ... ; zero entries come last.
struct SmithForm {
    IntMatrix d;  // diagonal (rows x cols shape preserved)
    IntMatrix u;  // rows x rows
    IntMatrix v;  // cols x cols
};

inline SmithForm smith_normal_form(IntMatrix a) {
    check_rectangular(a, "smith_normal_form");
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    SmithForm s{std::move(a), identity_int_matrix(m), identity_int_matrix(n)};
    IntMatrix& d = s.d;
    IntMatrix& u = s.u;
    IntMatrix& v = s.v;

    auto row_swap = [&](std::size_t i, std::size_t j) {
        std::swap(d[i], d[j]);
        std::swap(u[i], u[j]);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < m; ++r) std::swap(d[r][i], d[r][j]);
        for (std::size_t r = 0; r < n; ++r) std::swap(v[r][i], v[r][j]);
    };
    auto row_sub = [&](std::size_t i, std::size_t j, const Int& q) {  // row i -= q * row j
        for (std::size_t c = 0; c < n; ++c) d[i][c] -= q * d[j][c];
        for (std::size_t c = 0; c < m; ++c) u[i][c] -= q * u[j][c];
    };
    auto col_sub = [&](std::size_t i, std::size_t j, const Int& q) {  // col i -= q * col j
        for (std::size_t r = 0; r < m; ++r) d[r][i] -= q * d[r][j];
        for (std::size_t r = 0; r < n; ++r) v[r][i] -= q * v[r][j];
    };
    auto col_add = [&](std::size_t i, std::size_t j) { col_sub(i, j, Int(-1)); };

    const std::size_t rank_bound = std::min(m, n);

    // Euclidean elimination at pivot t; assumes d[t][t] != 0 on entry or a
    // nonzero exists in the remaining submatrix (caller arranges the pivot).
    auto eliminate_at = [&](std::size_t t) {
        for (;;) {
            std::size_t i = t + 1;
            while (i < m && d[i][t] == 0) ++i;
            if (i < m) {
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
                row_sub(i, t, q);
                if (d[i][t] != 0) row_swap(i, t);
                continue;
            }
            std::size_t j = t + 1;
            while (j < n && d[t][j] == 0) ++j;
            if (j < n) {
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
                col_sub(j, t, q);
                if (d[t][j] != 0) col_swap(j, t);
                continue;
            }
            break;
        }
    };

    for (std::size_t t = 0; t < rank_bound; ++t) {
        // Bring a nonzero of smallest magnitude to the pivot.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < m; ++i) {
            for (std::size_t j = t; j < n; ++j) {
                if (d[i][j] == 0) continue;
                if (!found || mpz_cmpabs(d[i][j].get_mpz_t(), d[pi][pj].get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        }
        if (!found) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);
        eliminate_at(t);
    }

    // Normalize signs.
    for (std::size_t t = 0; t < rank_bound; ++t) {
        if (d[t][t] < 0) {
            for (std::size_t c = 0; c < n; ++c) d[t][c] = -d[t][c];
            for (std::size_t c = 0; c < m; ++c) u[t][c] = -u[t][c];
        }
    }

    // Enforce the divisibility chain d_t | d_{t+1}.
    for (std::size_t t = 0; t + 1 < rank_bound; ++t) {
        for (std::size_t k = t + 1; k < rank_bound; ++k) {
            if (d[t][t] == 0 || d[k][k] == 0) continue;
            if (d[k][k] % d[t][t] == 0) continue;
            col_add(t, k);  // re-introduces d_k in column t, row k
            eliminate_at(t);
            k = t;  // restart the inner scan after the pivot changed
        }
    }
    // The divisibility phase can reintroduce negative diagonal entries.
    for (std::size_t t = 0; t < rank_bound; ++t) {
        if (d[t][t] < 0) {
            for (std::size_t c = 0; c < n; ++c) d[t][c] = -d[t][c];
            for (std::size_t c = 0; c < m; ++c) u[t][c] = -u[t][c];
        }
    }
    return s;
}

// Solution set of M x = rhs over the integers: a particular solution plus a
// basis of the homogeneous solution lattice.
struct IntegerSolution {
    bool solvable = false;
    std::vector<Int> particular;
    std::vector<std::vector<Int>> lattice;
};

inline IntegerSolution solve_integer_linear(const IntMatrix& mat, const std::vector<Int>& rhs) {
    check_rectangular(mat, "solve_integer_linear");
    const std::size_t m = mat.size();
    const std::size_t n = m == 0 ? 0 : mat[0].size();
    if (rhs.size() != m) {
        throw std::invalid_argument("solve_integer_linear: rhs length does not match row count");
    }
    SmithForm s = smith_normal_form(mat);

    // c = U * rhs
    std::vector<Int> c(m, Int(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) c[i] += s.u[i][j] * rhs[j];
    }

    std::vector<Int> y(n, Int(0));
    for (std::size_t i = 0; i < m; ++i) {
        const Int di = (i < n) ? s.d[i][i] : Int(0);
        if (di == 0) {
            if (c[i] != 0) return {};
        } else {
            if (!divides(di, c[i])) return {};
            y[i] = c[i] / di;
        }
    }

    IntegerSolution out;
    out.solvable = true;
    out.particular.assign(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.particular[i] += s.v[i][j] * y[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        const bool free_col = (j >= m) || (s.d[j][j] == 0);
        if (!free_col) continue;
        std::vector<Int> basis(n, Int(0));
        for (std::size_t i = 0; i < n; ++i) basis[i] = s.v[i][j];
        out.lattice.push_back(std::move(basis));
    }
    return out;
}

}  // namespace twistalg
