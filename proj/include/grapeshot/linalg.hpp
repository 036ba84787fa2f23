#ifndef GRAPESHOT_LINALG_HPP
#define GRAPESHOT_LINALG_HPP

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

#include "grapeshot/common.hpp"

namespace grapeshot {

// --------------------------------------------------------------------------
// Sparse integer matrix, column-major.
// --------------------------------------------------------------------------
struct SparseIntMatrix {
    int nrows = 0;
    int ncols = 0;
    std::vector<std::map<int, Int>> col;  // col[c] : row -> value (nonzero)

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : nrows(r), ncols(c), col(static_cast<size_t>(c)) {}

    void add(int r, int c, const Int& v) {
        if (v == 0) return;
        auto& m = col[static_cast<size_t>(c)];
        auto it = m.find(r);
        if (it == m.end()) {
            m.emplace(r, v);
        } else {
            it->second += v;
            if (it->second == 0) m.erase(it);
        }
    }

    size_t entry_count() const {
        size_t n = 0;
        for (auto& c : col) n += c.size();
        return n;
    }
};

// --------------------------------------------------------------------------
// Dense integer matrix (used for transform-carrying SNF at desk scale).
// --------------------------------------------------------------------------
struct DenseIntMatrix {
    int nr = 0;
    int nc = 0;
    std::vector<std::vector<Int>> a;

    DenseIntMatrix() = default;
    DenseIntMatrix(int r, int c) : nr(r), nc(c), a(static_cast<size_t>(r)) {
        for (auto& row : a) row.assign(static_cast<size_t>(c), Int(0));
    }

    static DenseIntMatrix identity(int n) {
        DenseIntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.a[i][i] = 1;
        return m;
    }

    static DenseIntMatrix from_sparse(const SparseIntMatrix& s) {
        DenseIntMatrix m(s.nrows, s.ncols);
        for (int c = 0; c < s.ncols; ++c)
            for (auto& [r, v] : s.col[static_cast<size_t>(c)]) m.a[r][c] = v;
        return m;
    }

    Int& at(int r, int c) { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const Int& at(int r, int c) const {
        return a[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }

    DenseIntMatrix mul(const DenseIntMatrix& o) const {
        DenseIntMatrix out(nr, o.nc);
        for (int i = 0; i < nr; ++i)
            for (int k = 0; k < nc; ++k) {
                if (a[i][k] == 0) continue;
                for (int j = 0; j < o.nc; ++j) {
                    if (o.a[k][j] == 0) continue;
                    out.a[i][j] += a[i][k] * o.a[k][j];
                }
            }
        return out;
    }

    DenseIntMatrix columns(int from, int to) const {  // [from, to)
        DenseIntMatrix out(nr, to - from);
        for (int i = 0; i < nr; ++i)
            for (int j = from; j < to; ++j) out.a[i][j - from] = a[i][j];
        return out;
    }

    bool is_zero() const {
        for (auto& row : a)
            for (auto& v : row)
                if (v != 0) return false;
        return true;
    }
};

// --------------------------------------------------------------------------
// Smith normal form.
// --------------------------------------------------------------------------
struct SnfResult {
    std::vector<Int> diag;  // positive, d1 | d2 | ... (nonzero entries only)
    int rank = 0;
    // Optional unimodular transforms with U * M * V = diag(diag).
    DenseIntMatrix U, Uinv, V;
    bool has_transforms = false;
};

namespace detail {

inline void fix_divisibility_diag_only(std::vector<Int>& d) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < d.size(); ++i) {
            for (size_t j = i + 1; j < d.size(); ++j) {
                if (d[j] % d[i] != 0) {
                    Int g = gcd(d[i], d[j]);
                    Int l = d[i] / g * d[j];
                    d[i] = g;
                    d[j] = l;
                    changed = true;
                }
            }
        }
    }
}

}  // namespace detail

// Diagonal-only SNF for large sparse matrices. Greedy pivoting: prefer
// entries of absolute value 1, tie-broken by Markowitz count
// (rowcount-1)*(colcount-1).
inline SnfResult snf_diagonal(const SparseIntMatrix& M) {
    const int nr = M.nrows, nc = M.ncols;
    // Row-major working copy plus column occupancy.
    std::vector<std::map<int, Int>> row(static_cast<size_t>(nr));
    std::vector<std::set<int>> colrows(static_cast<size_t>(nc));
    for (int c = 0; c < nc; ++c)
        for (auto& [r, v] : M.col[static_cast<size_t>(c)]) {
            row[static_cast<size_t>(r)].emplace(c, v);
            colrows[static_cast<size_t>(c)].insert(r);
        }

    std::vector<Int> diag;
    auto row_count = [&](int r) { return row[static_cast<size_t>(r)].size(); };
    auto col_count = [&](int c) { return colrows[static_cast<size_t>(c)].size(); };

    auto set_entry = [&](int r, int c, const Int& v) {
        auto& rw = row[static_cast<size_t>(r)];
        if (v == 0) {
            if (rw.erase(c)) colrows[static_cast<size_t>(c)].erase(r);
        } else {
            auto [it, inserted] = rw.insert_or_assign(c, v);
            (void)it;
            if (inserted) colrows[static_cast<size_t>(c)].insert(r);
        }
    };
    auto get_entry = [&](int r, int c) -> Int {
        auto& rw = row[static_cast<size_t>(r)];
        auto it = rw.find(c);
        return it == rw.end() ? Int(0) : it->second;
    };
    // row[r1] -= q * row[r2]
    auto row_axpy = [&](int r1, int r2, const Int& q) {
        if (q == 0) return;
        for (auto& [c, v] : row[static_cast<size_t>(r2)])
            set_entry(r1, c, get_entry(r1, c) - q * v);
    };

    std::set<int> live_rows, live_cols;
    for (int r = 0; r < nr; ++r)
        if (!row[static_cast<size_t>(r)].empty()) live_rows.insert(r);
    for (int c = 0; c < nc; ++c)
        if (!colrows[static_cast<size_t>(c)].empty()) live_cols.insert(c);

    while (!live_cols.empty()) {
        // Pivot search.
        int pr = -1, pc = -1;
        bool pivot_is_unit = false;
        long best_score = -1;
        for (int c : live_cols) {
            size_t cc = col_count(c);
            for (int r : colrows[static_cast<size_t>(c)]) {
                const Int& v = row[static_cast<size_t>(r)].at(c);
                bool unit = (v == 1 || v == -1);
                long score = static_cast<long>((row_count(r) - 1) * (cc - 1));
                if (pr < 0 || (unit && !pivot_is_unit) ||
                    (unit == pivot_is_unit && score < best_score)) {
                    pr = r;
                    pc = c;
                    pivot_is_unit = unit;
                    best_score = score;
                }
            }
            if (pivot_is_unit && best_score == 0) break;
        }
        if (pr < 0) break;

        // Clear column pc and row pr.
        for (;;) {
            bool touched = false;
            // Column: row operations.
            for (;;) {
                int other = -1;
                for (int r : colrows[static_cast<size_t>(pc)])
                    if (r != pr) {
                        other = r;
                        break;
                    }
                if (other < 0) break;
                touched = true;
                Int a = get_entry(pr, pc), b = get_entry(other, pc);
                if (b % a == 0) {
                    row_axpy(other, pr, b / a);
                } else {
                    Int g, s, t;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                               a.get_mpz_t(), b.get_mpz_t());
                    // (row_pr, row_other) <- (s*pr + t*other, (a/g)*other - (b/g)*pr)
                    std::map<int, Int> new_pr, new_other;
                    auto& rp = row[static_cast<size_t>(pr)];
                    auto& ro = row[static_cast<size_t>(other)];
                    std::set<int> cols;
                    for (auto& [c, v] : rp) cols.insert(c);
                    for (auto& [c, v] : ro) cols.insert(c);
                    Int adg = a / g, bdg = b / g;
                    for (int c : cols) {
                        Int x = get_entry(pr, c), y = get_entry(other, c);
                        Int np = s * x + t * y;
                        Int no = adg * y - bdg * x;
                        if (np != 0) new_pr.emplace(c, np);
                        if (no != 0) new_other.emplace(c, no);
                    }
                    for (int c : cols) {
                        set_entry(pr, c, new_pr.count(c) ? new_pr[c] : Int(0));
                        set_entry(other, c, new_other.count(c) ? new_other[c] : Int(0));
                    }
                }
            }
            // Row: column operations (work on the row map directly).
            for (;;) {
                int other = -1;
                for (auto& [c, v] : row[static_cast<size_t>(pr)])
                    if (c != pc) {
                        other = c;
                        break;
                    }
                if (other < 0) break;
                touched = true;
                Int a = get_entry(pr, pc), b = get_entry(pr, other);
                if (b % a == 0) {
                    Int q = b / a;
                    // col_other -= q * col_pc
                    std::vector<int> rows_pc(colrows[static_cast<size_t>(pc)].begin(),
                                             colrows[static_cast<size_t>(pc)].end());
                    for (int r : rows_pc)
                        set_entry(r, other, get_entry(r, other) - q * get_entry(r, pc));
                } else {
                    Int g, s, t;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                               a.get_mpz_t(), b.get_mpz_t());
                    Int adg = a / g, bdg = b / g;
                    std::set<int> rows;
                    for (int r : colrows[static_cast<size_t>(pc)]) rows.insert(r);
                    for (int r : colrows[static_cast<size_t>(other)]) rows.insert(r);
                    for (int r : rows) {
                        Int x = get_entry(r, pc), y = get_entry(r, other);
                        Int np = s * x + t * y;
                        Int no = adg * y - bdg * x;
                        set_entry(r, pc, np);
                        set_entry(r, other, no);
                    }
                }
            }
            if (!touched) break;
            // Column ops may have refilled the pivot column; loop until both
            // the row and the column are clear.
            if (colrows[static_cast<size_t>(pc)].size() == 1 &&
                row[static_cast<size_t>(pr)].size() == 1)
                break;
        }

        Int d = get_entry(pr, pc);
        diag.push_back(abs(d));
        set_entry(pr, pc, 0);
        live_rows.erase(pr);
        live_cols.erase(pc);
        // Columns may have dropped to zero during elimination.
        for (auto it = live_cols.begin(); it != live_cols.end();) {
            if (colrows[static_cast<size_t>(*it)].empty())
                it = live_cols.erase(it);
            else
                ++it;
        }
    }

    detail::fix_divisibility_diag_only(diag);
    SnfResult out;
    out.diag = diag;
    out.rank = static_cast<int>(diag.size());
    return out;
}

struct SnfOpts {
    bool want_U = true;
    bool want_Uinv = true;
    bool want_V = true;
};

// Dense SNF with unimodular transforms: U * M * V = D. Pivot choice follows
// the same greedy rule (minimal absolute value, then fewest nonzeros); a
// nonzero bitmap with incrementally maintained counts keeps the search and
// the row/column operations proportional to the actual support.
inline SnfResult snf_with_transforms(DenseIntMatrix M, SnfOpts opts = {}) {
    const int nr = M.nr, nc = M.nc;
    SnfResult out;
    if (opts.want_U) out.U = DenseIntMatrix::identity(nr);
    if (opts.want_Uinv) out.Uinv = DenseIntMatrix::identity(nr);
    if (opts.want_V) out.V = DenseIntMatrix::identity(nc);
    out.has_transforms = true;

    std::vector<std::vector<uint8_t>> nz(static_cast<size_t>(nr));
    std::vector<long> row_cnt(static_cast<size_t>(nr), 0), col_cnt(static_cast<size_t>(nc), 0);
    for (int r = 0; r < nr; ++r) {
        nz[static_cast<size_t>(r)].assign(static_cast<size_t>(nc), 0);
        for (int c = 0; c < nc; ++c)
            if (M.a[r][c] != 0) {
                nz[static_cast<size_t>(r)][static_cast<size_t>(c)] = 1;
                ++row_cnt[static_cast<size_t>(r)];
                ++col_cnt[static_cast<size_t>(c)];
            }
    }
    auto refresh = [&](int r, int c) {
        bool now = M.a[r][c] != 0;
        bool was = nz[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0;
        if (was == now) return;
        nz[static_cast<size_t>(r)][static_cast<size_t>(c)] = now ? 1 : 0;
        long d = now ? 1 : -1;
        row_cnt[static_cast<size_t>(r)] += d;
        col_cnt[static_cast<size_t>(c)] += d;
    };

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        std::swap(M.a[i], M.a[j]);
        std::swap(nz[static_cast<size_t>(i)], nz[static_cast<size_t>(j)]);
        std::swap(row_cnt[static_cast<size_t>(i)], row_cnt[static_cast<size_t>(j)]);
        if (opts.want_U) std::swap(out.U.a[i], out.U.a[j]);
        if (opts.want_Uinv)
            for (int r = 0; r < nr; ++r) std::swap(out.Uinv.a[r][i], out.Uinv.a[r][j]);
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < nr; ++r) {
            std::swap(M.a[r][i], M.a[r][j]);
            std::swap(nz[static_cast<size_t>(r)][static_cast<size_t>(i)],
                      nz[static_cast<size_t>(r)][static_cast<size_t>(j)]);
        }
        std::swap(col_cnt[static_cast<size_t>(i)], col_cnt[static_cast<size_t>(j)]);
        if (opts.want_V)
            for (int r = 0; r < nc; ++r) std::swap(out.V.a[r][i], out.V.a[r][j]);
    };
    // row_i -= q * row_j
    auto row_axpy = [&](int i, int j, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < nc; ++c) {
            if (!nz[static_cast<size_t>(j)][static_cast<size_t>(c)]) continue;
            M.a[i][c] -= q * M.a[j][c];
            refresh(i, c);
        }
        if (opts.want_U)
            for (int c = 0; c < nr; ++c) out.U.a[i][c] -= q * out.U.a[j][c];
        if (opts.want_Uinv)
            for (int r = 0; r < nr; ++r) out.Uinv.a[r][j] += q * out.Uinv.a[r][i];
    };
    // col_i -= q * col_j
    auto col_axpy = [&](int i, int j, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < nr; ++r) {
            if (!nz[static_cast<size_t>(r)][static_cast<size_t>(j)]) continue;
            M.a[r][i] -= q * M.a[r][j];
            refresh(r, i);
        }
        if (opts.want_V)
            for (int r = 0; r < nc; ++r) out.V.a[r][i] -= q * out.V.a[r][j];
    };
    // (row_i, row_j) <- (s*row_i + t*row_j, (a/g)*row_j - (b/g)*row_i),
    // a = leading entry of row_i, b of row_j. Determinant 1.
    auto row_gcd_combine = [&](int i, int j, const Int& a, const Int& b) {
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                   b.get_mpz_t());
        Int adg = a / g, bdg = b / g;
        for (int c = 0; c < nc; ++c) {
            if (!nz[static_cast<size_t>(i)][static_cast<size_t>(c)] &&
                !nz[static_cast<size_t>(j)][static_cast<size_t>(c)])
                continue;
            Int x = M.a[i][c], y = M.a[j][c];
            M.a[i][c] = s * x + t * y;
            M.a[j][c] = adg * y - bdg * x;
            refresh(i, c);
            refresh(j, c);
        }
        if (opts.want_U)
            for (int c = 0; c < nr; ++c) {
                Int x = out.U.a[i][c], y = out.U.a[j][c];
                out.U.a[i][c] = s * x + t * y;
                out.U.a[j][c] = adg * y - bdg * x;
            }
        // Inverse of [[s, t], [-b/g, a/g]] is [[a/g, -t], [b/g, s]].
        if (opts.want_Uinv)
            for (int r = 0; r < nr; ++r) {
                Int x = out.Uinv.a[r][i], y = out.Uinv.a[r][j];
                out.Uinv.a[r][i] = adg * x + bdg * y;
                out.Uinv.a[r][j] = -t * x + s * y;
            }
    };
    auto col_gcd_combine = [&](int i, int j, const Int& a, const Int& b) {
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                   b.get_mpz_t());
        Int adg = a / g, bdg = b / g;
        for (int r = 0; r < nr; ++r) {
            if (!nz[static_cast<size_t>(r)][static_cast<size_t>(i)] &&
                !nz[static_cast<size_t>(r)][static_cast<size_t>(j)])
                continue;
            Int x = M.a[r][i], y = M.a[r][j];
            M.a[r][i] = s * x + t * y;
            M.a[r][j] = adg * y - bdg * x;
            refresh(r, i);
            refresh(r, j);
        }
        if (opts.want_V)
            for (int r = 0; r < nc; ++r) {
                Int x = out.V.a[r][i], y = out.V.a[r][j];
                out.V.a[r][i] = s * x + t * y;
                out.V.a[r][j] = adg * y - bdg * x;
            }
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < nc; ++c) M.a[i][c] = -M.a[i][c];
        if (opts.want_U)
            for (int c = 0; c < nr; ++c) out.U.a[i][c] = -out.U.a[i][c];
        if (opts.want_Uinv)
            for (int r = 0; r < nr; ++r) out.Uinv.a[r][i] = -out.Uinv.a[r][i];
    };

    int t = 0;
    const int tmax = std::min(nr, nc);
    while (t < tmax) {
        int pr = -1, pc = -1;
        bool best_unit = false;
        long best_cnt = 0;
        Int best_abs;
        for (int r = t; r < nr; ++r) {
            if (row_cnt[static_cast<size_t>(r)] == 0) continue;
            const auto& flags = nz[static_cast<size_t>(r)];
            for (int c = t; c < nc; ++c) {
                if (!flags[static_cast<size_t>(c)]) continue;
                bool unit = M.a[r][c] == 1 || M.a[r][c] == -1;
                long cnt = row_cnt[static_cast<size_t>(r)] + col_cnt[static_cast<size_t>(c)];
                if (pr < 0 || (unit && !best_unit) ||
                    (unit == best_unit &&
                     (unit ? cnt < best_cnt
                           : (abs(M.a[r][c]) < best_abs ||
                              (abs(M.a[r][c]) == best_abs && cnt < best_cnt))))) {
                    pr = r;
                    pc = c;
                    best_unit = unit;
                    best_cnt = cnt;
                    if (!unit) best_abs = abs(M.a[r][c]);
                }
            }
        }
        if (pr < 0) break;
        swap_rows(t, pr);
        swap_cols(t, pc);

        for (;;) {
            bool clean = true;
            for (int r = t + 1; r < nr; ++r) {
                if (!nz[static_cast<size_t>(r)][static_cast<size_t>(t)]) continue;
                clean = false;
                if (M.a[r][t] % M.a[t][t] == 0)
                    row_axpy(r, t, M.a[r][t] / M.a[t][t]);
                else
                    row_gcd_combine(t, r, M.a[t][t], M.a[r][t]);
            }
            for (int c = t + 1; c < nc; ++c) {
                if (!nz[static_cast<size_t>(t)][static_cast<size_t>(c)]) continue;
                clean = false;
                if (M.a[t][c] % M.a[t][t] == 0)
                    col_axpy(c, t, M.a[t][c] / M.a[t][t]);
                else
                    col_gcd_combine(t, c, M.a[t][t], M.a[t][c]);
            }
            if (clean) break;
        }
        if (M.a[t][t] < 0) negate_row(t);
        ++t;
    }
    out.rank = t;

    // Enforce the divisibility chain with explicit transforms.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i + 1 < out.rank; ++i) {
            if (M.a[i + 1][i + 1] % M.a[i][i] == 0) continue;
            changed = true;
            // col_i += col_{i+1}, then re-clear the 2x2 block.
            col_axpy(i, i + 1, Int(-1));
            row_gcd_combine(i, i + 1, M.a[i][i], M.a[i + 1][i]);
            if (M.a[i][i + 1] != 0)
                col_axpy(i + 1, i, M.a[i][i + 1] / M.a[i][i]);
            if (M.a[i][i] < 0) negate_row(i);
            if (M.a[i + 1][i + 1] < 0) negate_row(i + 1);
        }
    }

    out.diag.clear();
    for (int i = 0; i < out.rank; ++i) out.diag.push_back(M.a[i][i]);
    return out;
}

inline SnfResult smith_normal_form(const SparseIntMatrix& M, bool transforms = false) {
    if (!transforms) return snf_diagonal(M);
    return snf_with_transforms(DenseIntMatrix::from_sparse(M));
}

// --------------------------------------------------------------------------
// Dense rational matrices.
// --------------------------------------------------------------------------
struct QMat {
    int nr = 0;
    int nc = 0;
    std::vector<std::vector<Rat>> a;

    QMat() = default;
    QMat(int r, int c) : nr(r), nc(c), a(static_cast<size_t>(r)) {
        for (auto& row : a) row.assign(static_cast<size_t>(c), Rat(0));
    }

    static QMat identity(int n) {
        QMat m(n, n);
        for (int i = 0; i < n; ++i) m.a[i][i] = 1;
        return m;
    }
    static QMat from_int(const DenseIntMatrix& d) {
        QMat m(d.nr, d.nc);
        for (int i = 0; i < d.nr; ++i)
            for (int j = 0; j < d.nc; ++j) m.a[i][j] = Rat(d.a[i][j]);
        return m;
    }

    QMat mul(const QMat& o) const {
        QMat out(nr, o.nc);
        for (int i = 0; i < nr; ++i)
            for (int k = 0; k < nc; ++k) {
                if (a[i][k] == 0) continue;
                for (int j = 0; j < o.nc; ++j) {
                    if (o.a[k][j] == 0) continue;
                    out.a[i][j] += a[i][k] * o.a[k][j];
                }
            }
        return out;
    }

    QMat hcat(const QMat& o) const {
        QMat out(nr, nc + o.nc);
        for (int i = 0; i < nr; ++i) {
            for (int j = 0; j < nc; ++j) out.a[i][j] = a[i][j];
            for (int j = 0; j < o.nc; ++j) out.a[i][nc + j] = o.a[i][j];
        }
        return out;
    }
};

inline int q_rank(QMat M) {
    int rank = 0;
    for (int c = 0; c < M.nc && rank < M.nr; ++c) {
        int piv = -1;
        for (int r = rank; r < M.nr; ++r)
            if (M.a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M.a[rank], M.a[piv]);
        Rat inv = 1 / M.a[rank][c];
        for (int j = c; j < M.nc; ++j) M.a[rank][j] *= inv;
        for (int r = 0; r < M.nr; ++r) {
            if (r == rank || M.a[r][c] == 0) continue;
            Rat f = M.a[r][c];
            for (int j = c; j < M.nc; ++j) M.a[r][j] -= f * M.a[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Basis of the right kernel, returned as columns.
inline QMat q_kernel(QMat M) {
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < M.nc && rank < M.nr; ++c) {
        int piv = -1;
        for (int r = rank; r < M.nr; ++r)
            if (M.a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M.a[rank], M.a[piv]);
        Rat inv = 1 / M.a[rank][c];
        for (int j = c; j < M.nc; ++j) M.a[rank][j] *= inv;
        for (int r = 0; r < M.nr; ++r) {
            if (r == rank || M.a[r][c] == 0) continue;
            Rat f = M.a[r][c];
            for (int j = c; j < M.nc; ++j) M.a[r][j] -= f * M.a[rank][j];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(M.nc), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    int free_cnt = M.nc - rank;
    QMat K(M.nc, free_cnt);
    int kcol = 0;
    for (int c = 0; c < M.nc; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        K.a[c][kcol] = 1;
        for (int r = 0; r < rank; ++r) K.a[pivot_col[static_cast<size_t>(r)]][kcol] = -M.a[r][c];
        ++kcol;
    }
    return K;
}

// Subspace spanned by columns of A contains/equals the one spanned by B.
inline bool q_same_column_space(const QMat& A, const QMat& B) {
    int ra = q_rank(A);
    int rb = q_rank(B);
    if (ra != rb) return false;
    return q_rank(A.hcat(B)) == ra;
}

inline bool q_invertible(const QMat& A) { return A.nr == A.nc && q_rank(A) == A.nr; }

// Gauss-Jordan inverse; throws if singular.
inline QMat q_inverse(QMat M) {
    if (M.nr != M.nc) throw std::logic_error("q_inverse: not square");
    const int n = M.nr;
    QMat inv = QMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (M.a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("q_inverse: singular matrix");
        std::swap(M.a[c], M.a[piv]);
        std::swap(inv.a[c], inv.a[piv]);
        Rat f = 1 / M.a[c][c];
        for (int j = 0; j < n; ++j) {
            M.a[c][j] *= f;
            inv.a[c][j] *= f;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || M.a[r][c] == 0) continue;
            Rat g = M.a[r][c];
            for (int j = 0; j < n; ++j) {
                M.a[r][j] -= g * M.a[c][j];
                inv.a[r][j] -= g * inv.a[c][j];
            }
        }
    }
    return inv;
}

}  // namespace grapeshot

#endif
