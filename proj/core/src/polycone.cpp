#include "ccc/polycone.hpp"

#include <algorithm>

#include "ccc/errors.hpp"
#include "ccc/lattice.hpp"

namespace ccc {

namespace {

struct DdState {
    std::vector<IntVec> lineality;
    std::vector<IntVec> rays;
    std::vector<Constraint> inserted;
};

// Rays p, n of the current cone span a common 2-face iff the constraints
// tight at both cut the ambient space down to lineality + 2 dimensions.
bool adjacent(const DdState& s, int dim, const IntVec& p, const IntVec& n) {
    std::vector<IntVec> tight;
    for (const Constraint& c : s.inserted) {
        if (c.is_equality || (dot(c.normal, p) == 0 && dot(c.normal, n) == 0))
            tight.push_back(c.normal);
    }
    IntMat t = IntMat::from_rows(tight, dim);
    return rank(t) == dim - static_cast<int>(s.lineality.size()) - 2;
}

void insert_constraint(DdState& s, int dim, const Constraint& c) {
    const IntVec& h = c.normal;
    // A lineality generator off the hyperplane absorbs the constraint.
    int hit = -1;
    for (size_t i = 0; i < s.lineality.size(); ++i)
        if (dot(h, s.lineality[i]) != 0) { hit = static_cast<int>(i); break; }
    if (hit >= 0) {
        IntVec l0 = s.lineality[hit];
        if (dot(h, l0) < 0) l0 = vec_neg(l0);
        Int hl = dot(h, l0);
        s.lineality.erase(s.lineality.begin() + hit);
        for (IntVec& l : s.lineality) {
            Int a = dot(h, l);
            if (a != 0) {
                for (int i = 0; i < dim; ++i) l[i] = hl * l[i] - a * l0[i];
                l = primitive(std::move(l));
            }
        }
        for (IntVec& r : s.rays) {
            Int a = dot(h, r);
            if (a != 0) {
                for (int i = 0; i < dim; ++i) r[i] = hl * r[i] - a * l0[i];
                r = primitive(std::move(r));
            }
        }
        if (!c.is_equality) s.rays.push_back(primitive(std::move(l0)));
        s.inserted.push_back(c);
        return;
    }

    std::vector<IntVec> pos, zero, neg;
    for (IntVec& r : s.rays) {
        Int a = dot(h, r);
        if (a > 0)
            pos.push_back(std::move(r));
        else if (a == 0)
            zero.push_back(std::move(r));
        else
            neg.push_back(std::move(r));
    }
    std::vector<IntVec> next = std::move(zero);
    for (const IntVec& p : pos)
        for (const IntVec& n : neg) {
            if (!adjacent(s, dim, p, n)) continue;
            Int hp = dot(h, p), hn = dot(h, n);
            IntVec comb(dim);
            for (int i = 0; i < dim; ++i) comb[i] = hp * n[i] - hn * p[i];
            next.push_back(primitive(std::move(comb)));
        }
    if (!c.is_equality)
        for (IntVec& p : pos) next.push_back(std::move(p));
    std::sort(next.begin(), next.end(), [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
    next.erase(std::unique(next.begin(), next.end()), next.end());
    s.rays = std::move(next);
    s.inserted.push_back(c);
}

} // namespace

GeneratorSet dual_description(int dim, std::vector<Constraint> constraints) {
    for (Constraint& c : constraints) {
        if (static_cast<int>(c.normal.size()) != dim)
            throw Error("dual_description: constraint dimension mismatch");
        c.normal = primitive(std::move(c.normal));
    }
    std::erase_if(constraints, [](const Constraint& c) { return is_zero(c.normal); });
    std::sort(constraints.begin(), constraints.end(), [](const Constraint& a, const Constraint& b) {
        if (a.is_equality != b.is_equality) return a.is_equality;
        return lex_less(a.normal, b.normal);
    });
    constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());

    DdState s;
    for (int i = 0; i < dim; ++i) {
        IntVec e(dim, Int(0));
        e[i] = 1;
        s.lineality.push_back(std::move(e));
    }
    for (const Constraint& c : constraints) insert_constraint(s, dim, c);

    GeneratorSet out;
    out.lineality = hermite_basis(IntMat::from_cols(s.lineality, dim));
    out.rays = std::move(s.rays);
    std::sort(out.rays.begin(), out.rays.end(), [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
    return out;
}

PolyCone::PolyCone(int dim, std::vector<IntVec> equalities, std::vector<IntVec> inequalities)
    : dim_(dim), eq_(std::move(equalities)), ineq_(std::move(inequalities)) {
    std::vector<Constraint> cs;
    for (const IntVec& e : eq_) cs.push_back({e, true});
    for (const IntVec& i : ineq_) cs.push_back({i, false});
    gens_ = dual_description(dim_, std::move(cs));
}

PolyCone PolyCone::from_generators(int dim, const IntMat& lineality, const std::vector<IntVec>& rays) {
    // Polar duality: facets of the cone are the generators of its dual
    // {y : <y, r> >= 0 for rays r, <y, l> = 0 on the lineality}.
    std::vector<Constraint> cs;
    for (const IntVec& r : rays) cs.push_back({r, false});
    for (const IntVec& l : lineality.col_list()) cs.push_back({l, true});
    GeneratorSet dual = dual_description(dim, std::move(cs));
    std::vector<IntVec> eqs = dual.lineality.col_list();
    return PolyCone(dim, std::move(eqs), std::move(dual.rays));
}

PolyCone PolyCone::full_space(int dim) { return PolyCone(dim, {}, {}); }

PolyCone PolyCone::origin(int dim) {
    std::vector<IntVec> eqs;
    for (int i = 0; i < dim; ++i) {
        IntVec e(dim, Int(0));
        e[i] = 1;
        eqs.push_back(std::move(e));
    }
    return PolyCone(dim, std::move(eqs), {});
}

int PolyCone::dim() const {
    IntMat m = gens_.lineality;
    for (const IntVec& r : gens_.rays) m = hstack(m, IntMat::from_cols({r}, dim_));
    return rank(m);
}

bool PolyCone::contains(const RatVec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw Error("PolyCone::contains: dimension mismatch");
    for (const IntVec& e : eq_)
        if (dot(e, x) != 0) return false;
    for (const IntVec& i : ineq_)
        if (dot(i, x) < 0) return false;
    return true;
}

bool PolyCone::contains(const IntVec& x) const { return contains(to_rat(x)); }

bool PolyCone::contains(const PolyCone& other) const {
    if (other.dim_ != dim_) throw Error("PolyCone::contains: dimension mismatch");
    for (const IntVec& r : other.gens_.rays)
        if (!contains(r)) return false;
    for (const IntVec& l : other.gens_.lineality.col_list()) {
        if (!contains(l)) return false;
        if (!contains(vec_neg(l))) return false;
    }
    return true;
}

bool PolyCone::equals(const PolyCone& other) const {
    return contains(other) && other.contains(*this);
}

PolyCone PolyCone::intersect(const PolyCone& other) const {
    if (other.dim_ != dim_) throw Error("PolyCone::intersect: dimension mismatch");
    std::vector<IntVec> eqs = eq_, ineqs = ineq_;
    eqs.insert(eqs.end(), other.eq_.begin(), other.eq_.end());
    ineqs.insert(ineqs.end(), other.ineq_.begin(), other.ineq_.end());
    return PolyCone(dim_, std::move(eqs), std::move(ineqs));
}

RatVec PolyCone::relative_interior_point() const {
    RatVec x(dim_, Rat(0));
    for (const IntVec& r : gens_.rays)
        for (int i = 0; i < dim_; ++i) x[i] += Rat(r[i]);
    return x;
}

PolyCone dual(const PolyCone& c) {
    return PolyCone(c.ambient_dim(), c.generators().lineality.col_list(),
                    c.generators().rays);
}

} // namespace ccc
