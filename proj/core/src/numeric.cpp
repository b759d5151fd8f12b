#include "ccc/numeric.hpp"

#include <boost/multiprecision/integer.hpp>

#include <sstream>

namespace ccc {

Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

IntMat::IntMat(int r, int c, std::vector<Int> entries) : rows(r), cols(c), a(std::move(entries)) {
    if (a.size() != static_cast<size_t>(r) * c)
        throw Error("IntMat: entry count does not match shape");
}

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, int cols) {
    IntMat m(static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols)
            throw Error("IntMat::from_rows: ragged input");
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    }
    return m;
}

IntMat IntMat::from_cols(const std::vector<IntVec>& cols, int rows) {
    IntMat m(rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows)
            throw Error("IntMat::from_cols: ragged input");
        for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
    }
    return m;
}

IntVec IntMat::row(int i) const {
    IntVec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

IntVec IntMat::col(int j) const {
    IntVec c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

std::vector<IntVec> IntMat::row_list() const {
    std::vector<IntVec> out;
    out.reserve(rows);
    for (int i = 0; i < rows; ++i) out.push_back(row(i));
    return out;
}

std::vector<IntVec> IntMat::col_list() const {
    std::vector<IntVec> out;
    out.reserve(cols);
    for (int j = 0; j < cols; ++j) out.push_back(col(j));
    return out;
}

IntMat mul(const IntMat& a, const IntMat& b) {
    if (a.cols != b.rows) throw Error("mul: shape mismatch");
    IntMat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

IntMat transpose(const IntMat& a) {
    IntMat t(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
    return t;
}

IntMat hstack(const IntMat& a, const IntMat& b) {
    if (a.rows != b.rows) throw Error("hstack: row mismatch");
    IntMat c(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) c.at(i, a.cols + j) = b.at(i, j);
    }
    return c;
}

IntMat vstack(const IntMat& a, const IntMat& b) {
    if (a.cols != b.cols) throw Error("vstack: column mismatch");
    IntMat c(a.rows + b.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) c.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < a.cols; ++j) c.at(a.rows + i, j) = b.at(i, j);
    return c;
}

IntMat neg(const IntMat& a) {
    IntMat c = a;
    for (auto& x : c.a) x = -x;
    return c;
}

IntVec mul(const IntMat& a, const IntVec& x) {
    if (static_cast<int>(x.size()) != a.cols) throw Error("apply: shape mismatch");
    IntVec y(a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) y[i] += a.at(i, j) * x[j];
    return y;
}

RatVec mul(const IntMat& a, const RatVec& x) {
    if (static_cast<int>(x.size()) != a.cols) throw Error("apply: shape mismatch");
    RatVec y(a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) y[i] += Rat(a.at(i, j)) * x[j];
    return y;
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error("dot: size mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw Error("dot: size mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw Error("dot: size mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
    IntVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
    IntVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

IntVec vec_neg(const IntVec& a) {
    IntVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return c;
}

IntVec vec_scale(const Int& c, const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

RatVec rat_add(const RatVec& a, const RatVec& b) {
    RatVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

RatVec rat_sub(const RatVec& a, const RatVec& b) {
    RatVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

RatVec rat_scale(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

RatVec to_rat(const IntVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
    return r;
}

bool is_zero(const IntVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

bool is_zero(const RatVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

IntVec primitive(IntVec v) {
    Int g = 0;
    for (const auto& x : v) g = int_gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

IntVec primitive_of_rat(const RatVec& v) {
    Int l = 1;
    for (const auto& x : v) l = int_lcm(l, denominator(x));
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * l;
        w[i] = numerator(s);
    }
    return primitive(std::move(w));
}

bool lex_less(const IntVec& a, const IntVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

bool lex_less(const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

Int det(const IntMat& a) {
    if (a.rows != a.cols) throw Error("det: square matrix required");
    int n = a.rows;
    if (n == 0) return 1;
    IntMat m = a;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

namespace {

// Gaussian elimination over the rationals; returns pivot columns and leaves
// the reduced matrix in place.
std::vector<int> reduce_rows(std::vector<RatVec>& m, int cols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
        int p = -1;
        for (int i = r; i < static_cast<int>(m.size()); ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        Rat inv = m[r][c];
        for (int j = 0; j < cols; ++j) m[r][j] /= inv;
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

int rank(const IntMat& a) {
    std::vector<RatVec> m;
    m.reserve(a.rows);
    for (int i = 0; i < a.rows; ++i) m.push_back(to_rat(a.row(i)));
    return static_cast<int>(reduce_rows(m, a.cols).size());
}

int rank_rows(const std::vector<IntVec>& rows, int cols) {
    std::vector<RatVec> m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.push_back(to_rat(r));
    return static_cast<int>(reduce_rows(m, cols).size());
}

std::vector<RatVec> solve(const IntMat& a, const RatVec& b) {
    if (static_cast<int>(b.size()) != a.rows) throw Error("solve: shape mismatch");
    std::vector<RatVec> m;
    m.reserve(a.rows);
    for (int i = 0; i < a.rows; ++i) {
        RatVec r = to_rat(a.row(i));
        r.push_back(b[i]);
        m.push_back(std::move(r));
    }
    std::vector<int> pivots = reduce_rows(m, a.cols + 1);
    for (int p : pivots)
        if (p == a.cols) return {}; // inconsistent
    RatVec x(a.cols, Rat(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][a.cols];
    return {x};
}

std::string to_string(const Int& x) { return x.str(); }

std::string to_string(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

std::string to_string(const RatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

std::string to_string(const IntMat& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows; ++i) {
        if (i) s += ";";
        s += to_string(m.row(i));
    }
    return s + "]";
}

Int parse_int(const std::string& s) {
    if (s.empty()) throw SchemaError("empty integer literal");
    size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw SchemaError("malformed integer literal '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw SchemaError("malformed integer literal '" + s + "'");
    return Int(s);
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den <= 0) throw SchemaError("malformed rational literal '" + s + "'");
    return Rat(num) / Rat(den);
}

} // namespace ccc
