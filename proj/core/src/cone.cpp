#include "ccc/cone.hpp"

#include <algorithm>
#include <set>

#include "ccc/errors.hpp"

namespace ccc {

Cone::Cone(int ambient_dim) : dim_(ambient_dim), span_(ambient_dim, 0) {
    IntMat perp = kernel_basis(transpose(span_));
    perp_ = perp.col_list();
}

Cone Cone::from_rays(int ambient_dim, const std::vector<IntVec>& rays) {
    Cone c(ambient_dim);
    std::vector<IntVec> gens;
    for (const IntVec& r : rays) {
        if (static_cast<int>(r.size()) != ambient_dim)
            throw Error("Cone::from_rays: ray dimension mismatch");
        if (!ccc::is_zero(r)) gens.push_back(primitive(r));
    }
    if (gens.empty()) return c;

    c.span_ = saturate(IntMat::from_cols(gens, ambient_dim));
    c.perp_ = kernel_basis(transpose(c.span_)).col_list();
    int r = c.span_.cols;

    // Work inside the span, where the cone is full-dimensional: coordinates
    // of the generators are integral because the span lattice is saturated.
    std::vector<IntVec> coords;
    for (const IntVec& g : gens) {
        auto sol = solve(c.span_, to_rat(g));
        if (sol.empty()) throw InternalInconsistencyError("generator left its own span");
        IntVec v(r);
        for (int i = 0; i < r; ++i) {
            if (denominator(sol[0][i]) != 1)
                throw InternalInconsistencyError("non-integral coordinates in a saturated basis");
            v[i] = numerator(sol[0][i]);
        }
        coords.push_back(std::move(v));
    }

    std::vector<Constraint> dual_cs;
    for (const IntVec& v : coords) dual_cs.push_back({v, false});
    GeneratorSet dual = dual_description(r, std::move(dual_cs));
    // A strongly convex cone has a full-dimensional dual.
    std::vector<Constraint> primal_cs;
    for (const IntVec& f : dual.rays) primal_cs.push_back({f, false});
    for (const IntVec& l : dual.lineality.col_list()) primal_cs.push_back({l, true});
    GeneratorSet extreme = dual_description(r, std::move(primal_cs));
    if (extreme.lineality.cols != 0)
        throw NotStronglyConvexError("cone contains a line");

    IntMat lift = transpose(left_inverse(c.span_));
    for (const IntVec& f : dual.rays) c.facets_.push_back(mul(lift, f));
    for (const IntVec& ray : extreme.rays) c.rays_.push_back(mul(c.span_, ray));
    std::sort(c.rays_.begin(), c.rays_.end(),
              [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
    return c;
}

bool Cone::is_smooth() const { return is_simplicial() && multiplicity() == 1; }

Int Cone::multiplicity() const {
    if (!is_simplicial()) throw Error("Cone::multiplicity: cone is not simplicial");
    if (rays_.empty()) return 1;
    return lattice_index(span_, IntMat::from_cols(rays_, dim_));
}

bool Cone::contains(const RatVec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw Error("Cone::contains: dimension mismatch");
    for (const IntVec& e : perp_)
        if (dot(e, x) != 0) return false;
    for (const IntVec& f : facets_)
        if (dot(f, x) < 0) return false;
    return true;
}

bool Cone::contains(const IntVec& x) const { return contains(to_rat(x)); }

bool Cone::contains(const Cone& other) const {
    for (const IntVec& r : other.rays_)
        if (!contains(r)) return false;
    return true;
}

bool Cone::interior_contains(const RatVec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw Error("Cone::interior_contains: dimension mismatch");
    for (const IntVec& e : perp_)
        if (dot(e, x) != 0) return false;
    for (const IntVec& f : facets_)
        if (dot(f, x) <= 0) return false;
    return true;
}

RatVec Cone::relative_interior_point() const {
    RatVec x(dim_, Rat(0));
    for (const IntVec& r : rays_)
        for (int i = 0; i < dim_; ++i) x[i] += Rat(r[i]);
    return x;
}

bool Cone::operator<(const Cone& other) const {
    if (dim() != other.dim()) return dim() < other.dim();
    if (rays_.size() != other.rays_.size()) return rays_.size() < other.rays_.size();
    for (size_t i = 0; i < rays_.size(); ++i) {
        if (rays_[i] == other.rays_[i]) continue;
        return lex_less(rays_[i], other.rays_[i]);
    }
    return false;
}

std::vector<Cone> Cone::facets() const {
    std::vector<Cone> out;
    for (const IntVec& f : facets_) {
        std::vector<IntVec> sub;
        for (const IntVec& r : rays_)
            if (dot(f, r) == 0) sub.push_back(r);
        out.push_back(from_rays(dim_, sub));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Cone> Cone::faces() const {
    std::set<Cone> seen;
    std::vector<Cone> queue{*this};
    seen.insert(*this);
    while (!queue.empty()) {
        Cone c = queue.back();
        queue.pop_back();
        for (Cone& f : c.facets())
            if (seen.insert(f).second) queue.push_back(std::move(f));
    }
    return std::vector<Cone>(seen.begin(), seen.end());
}

Cone Cone::minimal_face_containing(const RatVec& x) const {
    if (!contains(x)) throw Error("Cone::minimal_face_containing: point outside the cone");
    std::vector<const IntVec*> tight;
    for (const IntVec& f : facets_)
        if (dot(f, x) == 0) tight.push_back(&f);
    std::vector<IntVec> sub;
    for (const IntVec& r : rays_) {
        bool keep = true;
        for (const IntVec* f : tight)
            if (dot(*f, r) != 0) { keep = false; break; }
        if (keep) sub.push_back(r);
    }
    return from_rays(dim_, sub);
}

Cone Cone::intersect(const Cone& other) const {
    if (other.dim_ != dim_) throw Error("Cone::intersect: dimension mismatch");
    std::vector<Constraint> cs;
    for (const IntVec& e : perp_) cs.push_back({e, true});
    for (const IntVec& e : other.perp_) cs.push_back({e, true});
    for (const IntVec& f : facets_) cs.push_back({f, false});
    for (const IntVec& f : other.facets_) cs.push_back({f, false});
    GeneratorSet gs = dual_description(dim_, std::move(cs));
    return from_rays(dim_, gs.rays);
}

PolyCone Cone::poly() const { return PolyCone(dim_, perp_, facets_); }

Cone Cone::image(const IntMat& matrix) const {
    if (matrix.cols != dim_) throw Error("Cone::image: matrix shape mismatch");
    std::vector<IntVec> mapped;
    for (const IntVec& r : rays_) mapped.push_back(mul(matrix, r));
    return from_rays(matrix.rows, mapped);
}

IntMat Cone::perp_lattice() const { return IntMat::from_cols(perp_, dim_); }

} // namespace ccc
