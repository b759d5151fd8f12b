#include "ccc/lattice.hpp"

#include <algorithm>

namespace ccc {

LatticeMap::LatticeMap(int source, int target, IntMat m)
    : source_rank(source), target_rank(target), matrix(std::move(m)) {
    if (matrix.rows != target_rank || matrix.cols != source_rank)
        throw Error("LatticeMap: matrix shape does not match ranks");
}

LatticeMap compose(const LatticeMap& a, const LatticeMap& b) {
    if (b.target_rank != a.source_rank) throw Error("compose: rank mismatch");
    return LatticeMap(b.source_rank, a.target_rank, mul(a.matrix, b.matrix));
}

LatticeMap dual_map(const LatticeMap& a) {
    return LatticeMap(a.target_rank, a.source_rank, transpose(a.matrix));
}

namespace {

struct SnfState {
    IntMat d, u, v;

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    }
    // row i -= q * row j
    void row_sub(int i, const Int& q, int j) {
        if (q == 0) return;
        for (int c = 0; c < d.cols; ++c) d.at(i, c) -= q * d.at(j, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(j, c);
    }
    // col i -= q * col j
    void col_sub(int i, const Int& q, int j) {
        if (q == 0) return;
        for (int r = 0; r < d.rows; ++r) d.at(r, i) -= q * d.at(r, j);
        for (int r = 0; r < v.rows; ++r) v.at(r, i) -= q * v.at(r, j);
    }
    void row_negate(int i) {
        for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    }

    // Smallest nonzero |entry| in the block starting at (t,t); ties by lowest
    // (row, col). Returns false when the block is zero.
    bool find_pivot(int t, int& pi, int& pj) const {
        bool found = false;
        Int best = 0;
        for (int i = t; i < d.rows; ++i)
            for (int j = t; j < d.cols; ++j) {
                const Int& x = d.at(i, j);
                if (x == 0) continue;
                Int ax = int_abs(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }
};

} // namespace

SmithDecomposition smith_normal_form(const IntMat& a) {
    SnfState s{a, IntMat::identity(a.rows), IntMat::identity(a.cols)};
    int steps = std::min(a.rows, a.cols);
    for (int t = 0; t < steps; ++t) {
        int pi, pj;
        if (!s.find_pivot(t, pi, pj)) break;
        s.row_swap(t, pi);
        s.col_swap(t, pj);
        for (;;) {
            // Clear column t and row t with Euclidean steps; pivot may move.
            bool dirty = false;
            for (int i = t + 1; i < s.d.rows; ++i) {
                if (s.d.at(i, t) == 0) continue;
                Int q = s.d.at(i, t) / s.d.at(t, t);
                s.row_sub(i, q, t);
                if (s.d.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < s.d.cols; ++j) {
                if (s.d.at(t, j) == 0) continue;
                Int q = s.d.at(t, j) / s.d.at(t, t);
                s.col_sub(j, q, t);
                if (s.d.at(t, j) != 0) dirty = true;
            }
            if (dirty) {
                if (!s.find_pivot(t, pi, pj)) break;
                s.row_swap(t, pi);
                s.col_swap(t, pj);
                continue;
            }
            // Column and row are clear; enforce divisibility of the rest.
            bool fixed = true;
            for (int i = t + 1; i < s.d.rows && fixed; ++i)
                for (int j = t + 1; j < s.d.cols && fixed; ++j)
                    if (s.d.at(i, j) % s.d.at(t, t) != 0) {
                        s.row_sub(t, Int(-1), i); // row t += row i
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (s.d.at(t, t) < 0) s.row_negate(t);
    }
    return SmithDecomposition{s.u, s.d, s.v};
}

std::vector<Int> invariant_factors(const IntMat& a) {
    SmithDecomposition snf = smith_normal_form(a);
    std::vector<Int> out;
    int n = std::min(a.rows, a.cols);
    for (int i = 0; i < n; ++i)
        if (snf.d.at(i, i) != 0) out.push_back(snf.d.at(i, i));
    return out;
}

std::string to_string(const FinAbGroup& g) {
    std::string s;
    if (g.free_rank > 0) s = "Z^" + std::to_string(g.free_rank);
    for (const auto& t : g.torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + to_string(t);
    }
    return s.empty() ? "0" : s;
}

CokernelGroup cokernel_group(const IntMat& a) {
    SmithDecomposition snf = smith_normal_form(a);
    int m = a.rows;
    int r = 0;
    int n = std::min(a.rows, a.cols);
    for (int i = 0; i < n; ++i)
        if (snf.d.at(i, i) != 0) ++r;
    CokernelGroup out;
    out.group.free_rank = m - r;
    std::vector<int> torsion_rows;
    for (int i = 0; i < r; ++i)
        if (snf.d.at(i, i) >= 2) {
            out.group.torsion.push_back(snf.d.at(i, i));
            out.moduli.push_back(snf.d.at(i, i));
            torsion_rows.push_back(i);
        }
    out.torsion_proj = IntMat(static_cast<int>(torsion_rows.size()), m);
    for (size_t k = 0; k < torsion_rows.size(); ++k)
        for (int j = 0; j < m; ++j) out.torsion_proj.at(static_cast<int>(k), j) = snf.u.at(torsion_rows[k], j);
    out.free_proj = IntMat(m - r, m);
    for (int i = r; i < m; ++i)
        for (int j = 0; j < m; ++j) out.free_proj.at(i - r, j) = snf.u.at(i, j);
    return out;
}

IntMat hermite_basis(const IntMat& gens) {
    IntMat m = gens;
    int placed = 0;
    for (int row = 0; row < m.rows && placed < m.cols; ++row) {
        for (;;) {
            int best = -1;
            for (int j = placed; j < m.cols; ++j) {
                if (m.at(row, j) == 0) continue;
                if (best < 0 || int_abs(m.at(row, j)) < int_abs(m.at(row, best))) best = j;
            }
            if (best < 0) break; // no pivot in this row
            if (best != placed)
                for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, placed), m.at(i, best));
            bool clear = true;
            for (int j = placed + 1; j < m.cols; ++j) {
                Int q = m.at(row, j) / m.at(row, placed);
                if (q != 0)
                    for (int i = 0; i < m.rows; ++i) m.at(i, j) -= q * m.at(i, placed);
                if (m.at(row, j) != 0) clear = false;
            }
            if (!clear) continue; // another Euclid pass on this row
            if (m.at(row, placed) < 0)
                for (int i = 0; i < m.rows; ++i) m.at(i, placed) = -m.at(i, placed);
            // Normalize earlier columns against the fresh pivot so the result
            // is unique, not merely a basis.
            for (int j = 0; j < placed; ++j) {
                Int q = int_floor_div(m.at(row, j), m.at(row, placed));
                if (q != 0)
                    for (int i = 0; i < m.rows; ++i) m.at(i, j) -= q * m.at(i, placed);
            }
            ++placed;
            break;
        }
    }
    // Columns past the pivots are zero by construction.
    std::vector<IntVec> cols;
    for (int j = 0; j < placed; ++j) cols.push_back(m.col(j));
    return IntMat::from_cols(cols, m.rows);
}

IntMat kernel_basis(const IntMat& a) {
    SmithDecomposition snf = smith_normal_form(a);
    int n = std::min(a.rows, a.cols);
    int r = 0;
    for (int i = 0; i < n; ++i)
        if (snf.d.at(i, i) != 0) ++r;
    std::vector<IntVec> cols;
    for (int j = r; j < a.cols; ++j) cols.push_back(snf.v.col(j));
    return hermite_basis(IntMat::from_cols(cols, a.cols));
}

IntMat image_basis(const IntMat& a) { return hermite_basis(a); }

IntMat saturate(const IntMat& gens) {
    SmithDecomposition snf = smith_normal_form(gens);
    int n = std::min(gens.rows, gens.cols);
    int r = 0;
    for (int i = 0; i < n; ++i)
        if (snf.d.at(i, i) != 0) ++r;
    IntMat uinv = unimodular_inverse(snf.u);
    std::vector<IntVec> cols;
    for (int i = 0; i < r; ++i) cols.push_back(uinv.col(i));
    return hermite_basis(IntMat::from_cols(cols, gens.rows));
}

IntMat unimodular_inverse(const IntMat& u) {
    if (u.rows != u.cols) throw Error("unimodular_inverse: square matrix required");
    int n = u.rows;
    std::vector<RatVec> m(n, RatVec(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = Rat(u.at(i, j));
        m[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) throw Error("unimodular_inverse: singular matrix");
        std::swap(m[c], m[p]);
        Rat inv = m[c][c];
        for (int j = 0; j < 2 * n; ++j) m[c][j] /= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    IntMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat x = m[i][n + j];
            if (denominator(x) != 1) throw Error("unimodular_inverse: input not unimodular");
            out.at(i, j) = numerator(x);
        }
    return out;
}

IntMat left_inverse(const IntMat& basis) {
    SmithDecomposition snf = smith_normal_form(basis);
    int r = basis.cols;
    if (r > basis.rows) throw Error("left_inverse: more columns than rows");
    for (int i = 0; i < r; ++i)
        if (snf.d.at(i, i) != 1) throw Error("left_inverse: basis not saturated");
    // basis = u^-1 [I; 0] v^-1, so v [I 0] u is a left inverse.
    IntMat cut(r, basis.rows);
    for (int i = 0; i < r; ++i) cut.at(i, i) = 1;
    return mul(snf.v, mul(cut, snf.u));
}

bool lattice_contains(const IntMat& basis, const RatVec& x) {
    if (static_cast<int>(x.size()) != basis.rows) throw Error("lattice_contains: size mismatch");
    SmithDecomposition snf = smith_normal_form(basis);
    int n = std::min(basis.rows, basis.cols);
    RatVec z = mul(snf.u, x);
    for (int i = 0; i < basis.rows; ++i) {
        if (i < n && snf.d.at(i, i) != 0) {
            Rat q = z[i] / Rat(snf.d.at(i, i));
            if (denominator(q) != 1) return false;
        } else if (z[i] != 0) {
            return false;
        }
    }
    return true;
}

bool lattice_contains(const IntMat& basis, const IntVec& x) {
    return lattice_contains(basis, to_rat(x));
}

bool lattice_equal(const IntMat& a, const IntMat& b) {
    return a.rows == b.rows && hermite_basis(a) == hermite_basis(b);
}

Int lattice_index(const IntMat& super, const IntMat& sub) {
    if (sub.rows != super.rows) throw Error("lattice_index: ambient mismatch");
    int r = rank(super);
    if (rank(sub) != r || rank(hstack(sub, super)) != r)
        throw Error("lattice_index: spans differ");
    // Express a basis of sub in super-basis coordinates; the index is |det|.
    IntMat sub_basis = image_basis(sub);
    IntMat super_basis = image_basis(super);
    IntMat t(r, r);
    for (int j = 0; j < r; ++j) {
        auto sol = solve(super_basis, to_rat(sub_basis.col(j)));
        if (sol.empty()) throw Error("lattice_index: spans differ");
        for (int i = 0; i < r; ++i) {
            if (denominator(sol[0][i]) != 1) throw Error("lattice_index: not a sublattice");
            t.at(i, j) = numerator(sol[0][i]);
        }
    }
    Int idx = int_abs(det(t));
    if (idx == 0) throw Error("lattice_index: infinite index");
    return idx;
}

namespace {

void check_generator_rows(const IntMat& m, const FinAbGroup& g, const char* who) {
    if (m.rows != g.generator_count())
        throw Error(std::string(who) + ": matrix rows must match the generator count");
}

} // namespace

IntMat reduce_mod_torsion(IntMat m, const FinAbGroup& g) {
    check_generator_rows(m, g, "reduce_mod_torsion");
    for (int i = 0; i < static_cast<int>(g.torsion.size()); ++i) {
        const Int& d = g.torsion[i];
        for (int j = 0; j < m.cols; ++j) {
            Int r = m.at(g.free_rank + i, j) % d;
            if (r < 0) r += d;
            m.at(g.free_rank + i, j) = r;
        }
    }
    return m;
}

IntMat relation_matrix(const FinAbGroup& g) {
    IntMat r(g.generator_count(), static_cast<int>(g.torsion.size()));
    for (int i = 0; i < static_cast<int>(g.torsion.size()); ++i)
        r.at(g.free_rank + i, i) = g.torsion[i];
    return r;
}

bool is_zero_in(const IntVec& x, const FinAbGroup& g) {
    if (static_cast<int>(x.size()) != g.generator_count())
        throw Error("is_zero_in: coordinate count must match the generator count");
    for (int i = 0; i < g.free_rank; ++i)
        if (x[i] != 0) return false;
    for (int i = 0; i < static_cast<int>(g.torsion.size()); ++i)
        if (x[g.free_rank + i] % g.torsion[i] != 0) return false;
    return true;
}

bool surjects_onto(const IntMat& m, const FinAbGroup& g) {
    check_generator_rows(m, g, "surjects_onto");
    return cokernel_group(hstack(m, relation_matrix(g))).group.trivial();
}

IntMat kernel_into(const IntMat& m, const FinAbGroup& g) {
    check_generator_rows(m, g, "kernel_into");
    IntMat lifted = kernel_basis(hstack(m, relation_matrix(g)));
    IntMat head(m.cols, lifted.cols);
    for (int i = 0; i < m.cols; ++i)
        for (int j = 0; j < lifted.cols; ++j) head.at(i, j) = lifted.at(i, j);
    return hermite_basis(head);
}

FinAbGroup cokernel_into(const IntMat& m, const FinAbGroup& g) {
    check_generator_rows(m, g, "cokernel_into");
    return cokernel_group(hstack(m, relation_matrix(g))).group;
}

} // namespace ccc
