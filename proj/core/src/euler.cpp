#include "ccc/euler.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "ccc/errors.hpp"
#include "ccc/fan.hpp"

namespace ccc {

namespace {

void check_region(const LCRegion& r) {
    auto check = [&](const std::vector<AffineFunctional>& fns) {
        for (const auto& f : fns)
            if (static_cast<int>(f.coeffs.size()) != r.rank)
                throw Error("region constraint arity does not match the rank");
    };
    check(r.equalities);
    check(r.stricts);
    check(r.weak);
}

void check_confun(const ConFun& f) {
    for (const auto& t : f.terms) {
        if (t.region.rank != f.rank) throw Error("term rank does not match the function rank");
        check_region(t.region);
    }
    if (f.deck && f.deck->rows != f.rank) throw Error("deck rows do not match the rank");
}

Rat feval(const AffineFunctional& a, const RatVec& x) { return Rat(a.offset) + dot(a.coeffs, x); }

AffineFunctional negated(const AffineFunctional& a) { return {vec_neg(a.coeffs), Int(-a.offset)}; }

// Clears denominators of a rational functional; positive scaling preserves
// the constraint.
AffineFunctional clear_denominators(const RatVec& coeffs, const Rat& offset) {
    Int l = denominator(offset);
    for (const auto& c : coeffs) l = int_lcm(l, denominator(c));
    AffineFunctional out;
    out.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) out.coeffs.push_back(numerator(Rat(c * l)));
    out.offset = numerator(Rat(offset * l));
    return out;
}

// Joint coefficient/offset vector, for deduplication and wall arithmetic.
IntVec joint_of(const AffineFunctional& a) {
    IntVec j = a.coeffs;
    j.push_back(a.offset);
    return j;
}

AffineFunctional functional_of(IntVec joint) {
    Int off = joint.back();
    joint.pop_back();
    return {std::move(joint), std::move(off)};
}

// Primitive, first nonzero entry positive; the canonical representative of
// the wall through the functional. Zero coefficient vectors carry no wall.
std::optional<IntVec> canon_wall_joint(const AffineFunctional& a) {
    bool flat = true;
    for (const auto& c : a.coeffs)
        if (c != 0) flat = false;
    if (flat) return std::nullopt;
    IntVec j = primitive(joint_of(a));
    for (auto& c : j) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& e : j) e = -e;
        break;
    }
    return j;
}

CellDomain domain_of(const LCRegion& r) { return {r.equalities, r.stricts, r.weak}; }

// The cell as a locally closed region: fixed domain constraints plus one
// strict or equality constraint per wall sign.
LCRegion region_from_cell(int rank, const std::vector<AffineFunctional>& walls,
                          const ArrangementCell& cell, const CellDomain& dom) {
    LCRegion r{rank, dom.equalities, dom.stricts, dom.weak};
    for (size_t i = 0; i < walls.size(); ++i) {
        if (cell.signs[i] == 0)
            r.equalities.push_back(walls[i]);
        else if (cell.signs[i] > 0)
            r.stricts.push_back(walls[i]);
        else
            r.stricts.push_back(negated(walls[i]));
    }
    return r;
}

Int value_plain(const std::vector<ConFunTerm>& terms, const RatVec& x) {
    Int v = 0;
    for (const auto& t : terms)
        if (region_contains(t.region, x)) v += t.coeff;
    return v;
}

std::vector<AffineFunctional> collect_walls(const std::vector<ConFunTerm>& terms) {
    std::set<IntVec> seen;
    for (const auto& t : terms) {
        auto take = [&](const std::vector<AffineFunctional>& fns) {
            for (const auto& f : fns)
                if (auto w = canon_wall_joint(f)) seen.insert(*w);
        };
        take(t.region.equalities);
        take(t.region.stricts);
        take(t.region.weak);
    }
    std::vector<AffineFunctional> walls;
    walls.reserve(seen.size());
    for (const auto& j : seen) walls.push_back(functional_of(j));
    return walls;
}

// ---------------------------------------------------------------------------
// Exact Fourier--Motzkin machinery over the rationals, used to enumerate the
// integer points of bounded polyhedra (deck translate searches) and to
// project constraint systems.

enum class CKind { eq, ge, gt };

// b + a . z  (==|>=|>)  0
struct QCons {
    RatVec a;
    Rat b;
    CKind kind;
};

// Eliminates variable v: substitution through an equality pivot when one
// exists, classical pair combination otherwise (strict iff either side is
// strict). The projection is exact over the rationals; eliminated
// coordinates are kept as zeros.
std::vector<QCons> elim_var(std::vector<QCons> cs, int v) {
    for (size_t p = 0; p < cs.size(); ++p) {
        if (cs[p].kind != CKind::eq || cs[p].a[v] == 0) continue;
        std::vector<QCons> out;
        for (size_t i = 0; i < cs.size(); ++i) {
            if (i == p) continue;
            QCons r = cs[i];
            if (r.a[v] != 0) {
                Rat c = r.a[v] / cs[p].a[v];
                r.a = rat_sub(r.a, rat_scale(c, cs[p].a));
                r.b = r.b - c * cs[p].b;
            }
            out.push_back(std::move(r));
        }
        return out;
    }
    std::vector<QCons> out;
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].a[v] == 0)
            out.push_back(cs[i]);
        else if (cs[i].a[v] > 0)
            pos.push_back(i);
        else
            neg.push_back(i);
    }
    for (size_t p : pos)
        for (size_t q : neg) {
            QCons w;
            Rat alpha = cs[p].a[v], beta = -cs[q].a[v];
            w.a = rat_add(rat_scale(beta, cs[p].a), rat_scale(alpha, cs[q].a));
            w.b = beta * cs[p].b + alpha * cs[q].b;
            w.kind = (cs[p].kind == CKind::gt || cs[q].kind == CKind::gt) ? CKind::gt : CKind::ge;
            out.push_back(std::move(w));
        }
    return out;
}

Int rat_floor(const Rat& x) { return int_floor_div(numerator(x), denominator(x)); }
Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

std::vector<QCons> substitute_front(const std::vector<QCons>& cs, const Int& z) {
    std::vector<QCons> out;
    out.reserve(cs.size());
    for (const auto& c : cs) {
        QCons r;
        r.a.assign(c.a.begin() + 1, c.a.end());
        r.b = c.b + c.a[0] * z;
        r.kind = c.kind;
        out.push_back(std::move(r));
    }
    return out;
}

// All integer points of {z in Z^k : constraints hold}. The real projection
// onto each coordinate must be bounded whenever it is nonempty; an unbounded
// feasible direction throws NotFiberFiniteError.
void fm_enum(const std::vector<QCons>& cs, int k, IntVec& prefix,
             std::vector<IntVec>& out) {
    if (k == 0) {
        for (const auto& c : cs) {
            if (c.kind == CKind::eq && c.b != 0) return;
            if (c.kind == CKind::ge && c.b < 0) return;
            if (c.kind == CKind::gt && c.b <= 0) return;
        }
        out.push_back(prefix);
        return;
    }
    std::vector<QCons> line = cs;
    for (int v = k - 1; v >= 1; --v) line = elim_var(std::move(line), v);
    bool has_lo = false, has_hi = false;
    Int lo = 0, hi = 0;
    for (const auto& c : line) {
        if (c.a[0] == 0) {
            if (c.kind == CKind::eq && c.b != 0) return;
            if (c.kind == CKind::ge && c.b < 0) return;
            if (c.kind == CKind::gt && c.b <= 0) return;
            continue;
        }
        Rat v = -c.b / c.a[0];
        bool lower = c.a[0] > 0, upper = c.a[0] < 0;
        if (c.kind == CKind::eq) lower = upper = true;
        if (lower) {
            Int cand = (c.kind == CKind::gt) ? Int(rat_floor(v) + 1) : rat_ceil(v);
            if (!has_lo || cand > lo) lo = cand;
            has_lo = true;
        }
        if (upper) {
            Int cand = (c.kind == CKind::gt) ? Int(rat_ceil(v) - 1) : rat_floor(v);
            if (!has_hi || cand < hi) hi = cand;
            has_hi = true;
        }
    }
    if (!has_lo || !has_hi)
        throw NotFiberFiniteError("unbounded direction while enumerating lattice translates");
    for (Int z = lo; z <= hi; ++z) {
        prefix.push_back(z);
        fm_enum(substitute_front(cs, z), k - 1, prefix, out);
        prefix.pop_back();
    }
}

std::vector<IntVec> fm_integer_points(const std::vector<QCons>& cs, int k) {
    std::vector<IntVec> out;
    IntVec prefix;
    fm_enum(cs, k, prefix, out);
    return out;
}

CKind kind_of_list(int which) { return which == 0 ? CKind::eq : (which == 1 ? CKind::gt : CKind::ge); }

// Constraints of the region evaluated at x - D z, as a system over z.
std::vector<QCons> translate_membership(const LCRegion& r, const IntMat& deck, const RatVec& x) {
    std::vector<QCons> cs;
    IntMat dt = transpose(deck);
    const std::vector<AffineFunctional>* lists[3] = {&r.equalities, &r.stricts, &r.weak};
    for (int which = 0; which < 3; ++which)
        for (const auto& f : *lists[which]) {
            QCons c;
            c.a = to_rat(vec_neg(mul(dt, f.coeffs)));
            c.b = feval(f, x);
            c.kind = kind_of_list(which);
            cs.push_back(std::move(c));
        }
    return cs;
}

Int value_periodic(const ConFun& f, const RatVec& x) {
    Int v = 0;
    int k = f.deck->cols;
    for (const auto& t : f.terms) {
        auto hits = fm_integer_points(translate_membership(t.region, *f.deck, x), k);
        v += t.coeff * Int(hits.size());
    }
    return v;
}

std::vector<ConFunTerm> canonical_terms(int rank, const std::vector<ConFunTerm>& terms,
                                        const std::vector<AffineFunctional>& walls,
                                        const CellDomain& dom) {
    std::vector<ConFunTerm> out;
    for (const auto& cell : arrangement_cells(rank, walls, dom)) {
        Int v = value_plain(terms, cell.sample);
        if (v != 0) out.push_back({v, region_from_cell(rank, walls, cell, dom)});
    }
    return out;
}

// Fundamental half-open domain of the deck: 0 <= t_i(x) < 1 for the rational
// coordinate functionals t with t(deck) = identity. Returns the functional
// u_i = l_i t_i together with its scale l_i.
std::vector<std::pair<AffineFunctional, Int>> deck_domain(const IntMat& deck) {
    IntMat dt = transpose(deck);
    std::vector<std::pair<AffineFunctional, Int>> out;
    for (int i = 0; i < deck.cols; ++i) {
        RatVec e(deck.cols, Rat(0));
        e[i] = 1;
        auto sol = solve(dt, e);
        if (sol.empty()) throw Error("deck columns are not independent");
        Int l = 1;
        for (const auto& c : sol[0]) l = int_lcm(l, denominator(c));
        AffineFunctional u = clear_denominators(sol[0], Rat(0));
        out.emplace_back(std::move(u), l);
    }
    return out;
}

// Rewrites a periodic function on the fundamental domain: every deck
// translate of a term that meets the closed domain is materialized, then the
// domain is cut into cells. Requires finitely many such translates.
ConFun canonical_periodic(const ConFun& f) {
    int n = f.rank, k = f.deck->cols;
    auto dom_fns = deck_domain(*f.deck);
    CellDomain dom;
    for (const auto& [u, l] : dom_fns) {
        dom.weak.push_back(u);
        dom.stricts.push_back({vec_neg(u.coeffs), Int(l - u.offset)});
    }
    std::vector<ConFunTerm> effective;
    for (const auto& t : f.terms) {
        // (z, x)-system: x - deck z in closure(region), x in closure(domain).
        std::vector<QCons> cs;
        IntMat dt = transpose(*f.deck);
        const std::vector<AffineFunctional>* lists[3] = {&t.region.equalities, &t.region.stricts,
                                                         &t.region.weak};
        for (int which = 0; which < 3; ++which)
            for (const auto& fn : *lists[which]) {
                QCons c;
                c.a = to_rat(vec_neg(mul(dt, fn.coeffs)));
                IntVec xpart = fn.coeffs;
                for (const auto& e : xpart) c.a.push_back(Rat(e));
                c.b = Rat(fn.offset);
                c.kind = which == 0 ? CKind::eq : CKind::ge;
                cs.push_back(std::move(c));
            }
        for (const auto& [u, l] : dom_fns) {
            QCons lo{RatVec(k, Rat(0)), Rat(u.offset), CKind::ge};
            QCons hi{RatVec(k, Rat(0)), Rat(l - u.offset), CKind::ge};
            for (int j = 0; j < n; ++j) {
                lo.a.push_back(Rat(u.coeffs[j]));
                hi.a.push_back(Rat(-u.coeffs[j]));
            }
            cs.push_back(std::move(lo));
            cs.push_back(std::move(hi));
        }
        for (int v = k + n - 1; v >= k; --v) cs = elim_var(std::move(cs), v);
        for (auto& c : cs) c.a.resize(k);
        std::vector<IntVec> zs;
        try {
            zs = fm_integer_points(cs, k);
        } catch (const NotFiberFiniteError&) {
            throw Error("periodic representative is unbounded along the deck directions");
        }
        for (const auto& z : zs)
            effective.push_back({t.coeff, region_translate(t.region, to_rat(mul(*f.deck, z)))});
    }
    ConFun out{n, canonical_terms(n, effective, collect_walls(effective), dom), f.deck};
    return out;
}

std::optional<IntMat> merged_deck(const ConFun& f, const ConFun& g) {
    bool fp = f.deck.has_value(), gp = g.deck.has_value();
    if (fp && gp) {
        if (!lattice_equal(*f.deck, *g.deck)) throw Error("functions live on different tori");
        return f.deck;
    }
    if (fp && g.terms.empty()) return f.deck;
    if (gp && f.terms.empty()) return g.deck;
    if (fp || gp) throw Error("cannot combine a plain function with a periodic one");
    return std::nullopt;
}

// Pushforward along a surjective linear map, for terms that are already
// pairwise disjoint relatively open cells (so per-term recession checks see
// the true support). Fibers are parametrized as x = X y + K s; the cells of
// the projected wall arrangement have constant fiber combinatorics, and on
// each one the value is the alternating cell-count of every fiber slice.
ConFun pushforward_cells(int n, const std::vector<ConFunTerm>& terms, const LatticeMap& map) {
    int m = map.target_rank;
    if (rank(map.matrix) != m) throw Error("pushforward needs a surjective map");
    if (terms.empty()) return ConFun{m, {}, std::nullopt};
    IntMat kb = kernel_basis(map.matrix);
    int d = kb.cols;
    if (d > 0) {
        PolyCone fiber_dirs = PolyCone::from_generators(n, kb, {});
        for (const auto& t : terms)
            if (region_recession(t.region).intersect(fiber_dirs).dim() > 0)
                throw NotFiberFiniteError("support is not fiberwise compact");
    }
    std::vector<RatVec> xcols;
    for (int j = 0; j < m; ++j) {
        RatVec e(m, Rat(0));
        e[j] = 1;
        xcols.push_back(solve(map.matrix, e)[0]);
    }
    // Constraints over (y, s), with integer coefficients, kind per list.
    struct Slice {
        AffineFunctional fn;
        CKind kind;
    };
    std::vector<std::vector<Slice>> slices(terms.size());
    std::set<IntVec> rows;
    for (size_t ti = 0; ti < terms.size(); ++ti) {
        const LCRegion& r = terms[ti].region;
        const std::vector<AffineFunctional>* lists[3] = {&r.equalities, &r.stricts, &r.weak};
        for (int which = 0; which < 3; ++which)
            for (const auto& f : *lists[which]) {
                RatVec co;
                co.reserve(m + d);
                for (int j = 0; j < m; ++j) co.push_back(dot(f.coeffs, xcols[j]));
                for (int i = 0; i < d; ++i) {
                    Int s = 0;
                    for (int rr = 0; rr < n; ++rr) s += f.coeffs[rr] * kb.at(rr, i);
                    co.push_back(Rat(s));
                }
                AffineFunctional g = clear_denominators(co, Rat(f.offset));
                slices[ti].push_back({g, kind_of_list(which)});
                if (auto w = canon_wall_joint(g)) rows.insert(*w);
            }
    }
    // Wall closure: all iterated combinations cancelling the s-coordinates.
    // Every Fourier--Motzkin derivation of any subsystem of slice constraints
    // is such a combination, so the signs of these rows determine every
    // slice's combinatorics.
    for (int v = m + d - 1; v >= m; --v) {
        std::set<IntVec> next;
        std::vector<IntVec> act;
        for (const auto& j : rows) {
            if (j[v] == 0)
                next.insert(j);
            else
                act.push_back(j);
        }
        for (size_t p = 0; p < act.size(); ++p)
            for (size_t q = p + 1; q < act.size(); ++q) {
                IntVec w = vec_sub(vec_scale(act[q][v], act[p]), vec_scale(act[p][v], act[q]));
                AffineFunctional fw = functional_of(std::move(w));
                if (auto cw = canon_wall_joint(fw)) next.insert(*cw);
            }
        rows = std::move(next);
    }
    std::vector<AffineFunctional> walls;
    for (const auto& j : rows) {
        AffineFunctional f = functional_of(j);
        f.coeffs.resize(m);
        if (auto w = canon_wall_joint(f)) walls.push_back(functional_of(*w));
    }
    std::vector<ConFunTerm> out;
    for (const auto& cell : arrangement_cells(m, walls, {})) {
        Int total = 0;
        for (size_t ti = 0; ti < terms.size(); ++ti) {
            CellDomain dom;
            std::vector<ConFunTerm> probe(1);
            LCRegion& sr = probe[0].region;
            sr.rank = d;
            for (const auto& s : slices[ti]) {
                Rat off(s.fn.offset);
                for (int j = 0; j < m; ++j) off += s.fn.coeffs[j] * cell.sample[j];
                RatVec co;
                for (int i = 0; i < d; ++i) co.push_back(Rat(s.fn.coeffs[m + i]));
                AffineFunctional g = clear_denominators(co, off);
                if (s.kind == CKind::eq)
                    sr.equalities.push_back(g);
                else if (s.kind == CKind::gt)
                    sr.stricts.push_back(g);
                else
                    sr.weak.push_back(g);
            }
            Int chi = 0;
            for (const auto& sc : arrangement_cells(d, collect_walls(probe), domain_of(sr)))
                chi += (sc.dim % 2 ? Int(-1) : Int(1));
            total += terms[ti].coeff * chi;
        }
        if (total != 0) out.push_back({total, region_from_cell(m, walls, cell, {})});
    }
    return ConFun{m, out, std::nullopt};
}

Int sign_pow(int s) { return (s % 2 + 2) % 2 ? Int(-1) : Int(1); }

} // namespace

LCRegion region_whole(int rank) { return LCRegion{rank, {}, {}, {}}; }

LCRegion region_point(const RatVec& x) {
    LCRegion r{static_cast<int>(x.size()), {}, {}, {}};
    for (size_t i = 0; i < x.size(); ++i) {
        RatVec co(x.size(), Rat(0));
        co[i] = 1;
        r.equalities.push_back(clear_denominators(co, -x[i]));
    }
    return r;
}

LCRegion region_translate(const LCRegion& r, const RatVec& t) {
    check_region(r);
    if (static_cast<int>(t.size()) != r.rank) throw Error("translation arity mismatch");
    LCRegion out{r.rank, {}, {}, {}};
    auto shift = [&](const std::vector<AffineFunctional>& fns, std::vector<AffineFunctional>& dst) {
        for (const auto& f : fns)
            dst.push_back(clear_denominators(to_rat(f.coeffs), Rat(f.offset) - dot(f.coeffs, t)));
    };
    shift(r.equalities, out.equalities);
    shift(r.stricts, out.stricts);
    shift(r.weak, out.weak);
    return out;
}

bool region_contains(const LCRegion& r, const RatVec& x) {
    check_region(r);
    if (static_cast<int>(x.size()) != r.rank) throw Error("point arity mismatch");
    for (const auto& f : r.equalities)
        if (feval(f, x) != 0) return false;
    for (const auto& f : r.stricts)
        if (feval(f, x) <= 0) return false;
    for (const auto& f : r.weak)
        if (feval(f, x) < 0) return false;
    return true;
}

bool region_empty(const LCRegion& r) {
    check_region(r);
    return arrangement_cells(r.rank, {}, domain_of(r)).empty();
}

int region_dim(const LCRegion& r) {
    check_region(r);
    auto cells = arrangement_cells(r.rank, {}, domain_of(r));
    return cells.empty() ? -1 : cells.front().dim;
}

PolyCone region_recession(const LCRegion& r) {
    check_region(r);
    std::vector<IntVec> eqs, ineqs;
    for (const auto& f : r.equalities) eqs.push_back(f.coeffs);
    for (const auto& f : r.stricts) ineqs.push_back(f.coeffs);
    for (const auto& f : r.weak) ineqs.push_back(f.coeffs);
    return PolyCone(r.rank, eqs, ineqs);
}

ConFun confun_zero(int rank) { return ConFun{rank, {}, std::nullopt}; }

ConFun confun_delta(const RatVec& x) {
    return ConFun{static_cast<int>(x.size()), {{Int(1), region_point(x)}}, std::nullopt};
}

Int confun_value(const ConFun& f, const RatVec& x) {
    check_confun(f);
    if (static_cast<int>(x.size()) != f.rank) throw Error("point arity mismatch");
    return f.deck ? value_periodic(f, x) : value_plain(f.terms, x);
}

ConFun confun_add(const ConFun& f, const ConFun& g) {
    check_confun(f);
    check_confun(g);
    if (f.rank != g.rank) throw Error("rank mismatch");
    ConFun out{f.rank, f.terms, merged_deck(f, g)};
    out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
    return out;
}

ConFun confun_scale(const Int& c, const ConFun& f) {
    check_confun(f);
    ConFun out = f;
    if (c == 0) {
        out.terms.clear();
        return out;
    }
    for (auto& t : out.terms) t.coeff *= c;
    return out;
}

ConFun confun_canonical(const ConFun& f) {
    check_confun(f);
    if (f.deck && f.deck->cols > 0) return canonical_periodic(f);
    return ConFun{f.rank, canonical_terms(f.rank, f.terms, collect_walls(f.terms), {}),
                  std::nullopt};
}

bool confun_equal(const ConFun& f, const ConFun& g) {
    if (f.rank != g.rank) throw Error("rank mismatch");
    return confun_canonical(confun_add(f, confun_scale(Int(-1), g))).terms.empty();
}

ConFun region_chi(const SheafSymbol& s) {
    check_region(s.region);
    int d = region_dim(s.region);
    if (d < 0) return confun_zero(s.region.rank);
    Int c = sign_pow(s.shift);
    if (s.kind == SheafSymbol::Kind::costandard) c *= sign_pow(d);
    return ConFun{s.region.rank, {{c, s.region}}, std::nullopt};
}

ConFun confun_combine(CombineOp op, const ConFun& a, const ConFun& b) {
    if (op == CombineOp::cofib) return confun_add(b, confun_scale(Int(-1), a));
    return confun_add(a, confun_scale(Int(-1), b));
}

ConFun confun_shift(const ConFun& f, int s) { return confun_scale(sign_pow(s), f); }

ConFun confun_pushforward(const ConFun& f, const IntMat& deck) {
    check_confun(f);
    if (deck.rows != f.rank) throw Error("deck rows do not match the rank");
    IntMat old = f.deck ? *f.deck : IntMat(f.rank, 0);
    IntMat full = hermite_basis(hstack(old, deck));
    ConFun base = confun_canonical(f);
    if (full.cols == 0) return base;
    PolyCone span = PolyCone::from_generators(f.rank, full, {});
    for (const auto& t : base.terms)
        if (region_recession(t.region).intersect(span).dim() > 0)
            throw NotFiberFiniteError("a support cell recedes along the deck");
    return ConFun{f.rank, base.terms, full};
}

ConFun confun_pushforward(const ConFun& f, const LatticeMap& map) {
    check_confun(f);
    if (f.deck) throw Error("linear pushforward needs a plain function");
    if (map.source_rank != f.rank) throw Error("map source does not match the rank");
    return pushforward_cells(f.rank, confun_canonical(f).terms, map);
}

ConFun confun_convolve(const ConFun& f, const ConFun& g) {
    check_confun(f);
    check_confun(g);
    if (f.rank != g.rank) throw Error("rank mismatch");
    if (f.terms.empty() || g.terms.empty()) return ConFun{f.rank, {}, merged_deck(f, g)};
    bool fp = f.deck.has_value(), gp = g.deck.has_value();
    if (fp != gp) throw Error("cannot convolve a plain function with a periodic one");
    if (fp && !lattice_equal(*f.deck, *g.deck)) throw Error("functions live on different tori");
    int n = f.rank;
    ConFun a = f, b = g;
    a.deck.reset();
    b.deck.reset();
    a = confun_canonical(a);
    b = confun_canonical(b);
    std::vector<ConFunTerm> prod;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            LCRegion r{2 * n, {}, {}, {}};
            auto lift = [&](const std::vector<AffineFunctional>& fns, bool right,
                            std::vector<AffineFunctional>& dst) {
                for (const auto& fn : fns) {
                    IntVec co(2 * n, Int(0));
                    for (int i = 0; i < n; ++i) co[right ? n + i : i] = fn.coeffs[i];
                    dst.push_back({std::move(co), fn.offset});
                }
            };
            lift(ta.region.equalities, false, r.equalities);
            lift(ta.region.stricts, false, r.stricts);
            lift(ta.region.weak, false, r.weak);
            lift(tb.region.equalities, true, r.equalities);
            lift(tb.region.stricts, true, r.stricts);
            lift(tb.region.weak, true, r.weak);
            prod.push_back({Int(ta.coeff * tb.coeff), std::move(r)});
        }
    LatticeMap add(2 * n, n, hstack(IntMat::identity(n), IntMat::identity(n)));
    ConFun h = pushforward_cells(2 * n, prod, add);
    if (!fp) return h;
    return confun_pushforward(h, *f.deck);
}

ConFun unit_chi(const StackyFan& x) {
    const Fan& fan = x.fan;
    int n = fan.ambient_dim();
    const std::vector<Cone>& cones = fan.cones();
    std::vector<size_t> order(cones.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return cones[a].dim() > cones[b].dim(); });
    // Alternating chain count: a chain ending at sigma contributes (-1)^k,
    // so the coefficient of sigma is 1 minus the coefficients of everything
    // strictly containing it.
    std::vector<Int> coeff(cones.size());
    for (size_t i : order) {
        Int c = 1;
        for (size_t j = 0; j < cones.size(); ++j)
            if (cones[j].dim() > cones[i].dim() && cones[j].contains(cones[i])) c -= coeff[j];
        coeff[i] = c;
    }
    std::vector<ConFunTerm> terms;
    for (size_t i = 0; i < cones.size(); ++i) {
        if (coeff[i] == 0) continue;
        PolyCone dv = dual(cones[i].poly());
        LCRegion r{n, {}, {}, {}};
        for (const auto& e : dv.equalities()) r.equalities.push_back({e, Int(0)});
        for (const auto& q : dv.inequalities()) r.stricts.push_back({q, Int(0)});
        terms.push_back({Int(coeff[i] * sign_pow(n)), std::move(r)});
    }
    ConFun pre{n, std::move(terms), std::nullopt};
    return confun_pushforward(pre, torus_data(x).deck_lattice);
}

} // namespace ccc
