#include "ccc/fan.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ccc/arrangement.hpp"
#include "ccc/errors.hpp"
#include "ccc/polycone.hpp"

namespace ccc {

namespace {

// Walls of a fan: all facet normals and span equations of its cones,
// sign-normalized, deduplicated. Cell samples of this arrangement decide
// support membership exactly, because membership in each cone has constant
// sign data on every cell.
std::vector<AffineFunctional> fan_walls(const Fan& fan, bool with_axes = false) {
    auto canon = [](IntVec v) {
        v = primitive(std::move(v));
        for (const Int& x : v) {
            if (x == 0) continue;
            if (x < 0) v = vec_neg(v);
            break;
        }
        return v;
    };
    std::set<IntVec> walls;
    for (const Cone& c : fan.cones()) {
        for (const IntVec& h : c.facet_inequalities())
            if (!is_zero(h)) walls.insert(canon(h));
        for (const IntVec& e : c.span_equations()) walls.insert(canon(e));
    }
    if (with_axes)
        for (int i = 0; i < fan.ambient_dim(); ++i) {
            IntVec e(fan.ambient_dim(), Int(0));
            e[i] = 1;
            walls.insert(e);
        }
    std::vector<AffineFunctional> out;
    for (const IntVec& w : walls) out.push_back({w, Int(0)});
    return out;
}

} // namespace

Fan Fan::from_cones(int ambient_dim, const std::vector<Cone>& cones) {
    std::set<Cone> all;
    for (const Cone& c : cones) {
        if (c.ambient_dim() != ambient_dim)
            throw Error("Fan::from_cones: ambient dimension mismatch");
        for (Cone& f : c.faces()) all.insert(std::move(f));
    }
    Fan fan(ambient_dim);
    fan.cones_.assign(all.begin(), all.end());

    // Pairwise intersections must be common faces. It is enough that every
    // cone inside a maximal cone is one of its faces and that maximal cones
    // pairwise meet in common faces: faces of cones meeting in a common face
    // again meet in one.
    std::vector<Cone> max = fan.maximal_cones();
    std::vector<std::set<Cone>> face_sets;
    for (const Cone& m : max) {
        auto fs = m.faces();
        face_sets.emplace_back(fs.begin(), fs.end());
    }
    for (size_t i = 0; i < max.size(); ++i)
        for (const Cone& c : fan.cones_)
            if (max[i].contains(c) && !face_sets[i].count(c))
                throw OverlappingConesError("two cones intersect in a non-face");
    for (size_t i = 0; i < max.size(); ++i)
        for (size_t j = i + 1; j < max.size(); ++j) {
            Cone meet = max[i].intersect(max[j]);
            if (!face_sets[i].count(meet) || !face_sets[j].count(meet))
                throw OverlappingConesError("two cones intersect in a non-face");
        }
    return fan;
}

std::vector<Cone> Fan::maximal_cones() const {
    std::vector<Cone> out;
    for (const Cone& c : cones_) {
        bool top = true;
        for (const Cone& d : cones_)
            if (!(d == c) && d.contains(c)) { top = false; break; }
        if (top) out.push_back(c);
    }
    return out;
}

std::vector<Cone> Fan::cones_of_dim(int d) const {
    std::vector<Cone> out;
    for (const Cone& c : cones_)
        if (c.dim() == d) out.push_back(c);
    return out;
}

std::vector<IntVec> Fan::rays() const {
    std::vector<IntVec> out;
    for (const Cone& c : cones_)
        if (c.dim() == 1) out.push_back(c.rays()[0]);
    std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
    return out;
}

bool Fan::has_cone(const Cone& c) const {
    return std::binary_search(cones_.begin(), cones_.end(), c);
}

bool Fan::support_contains(const RatVec& x) const {
    for (const Cone& c : cones_)
        if (c.contains(x)) return true;
    return false;
}

std::optional<Cone> Fan::cone_containing(const RatVec& x) const {
    for (const Cone& c : cones_)
        if (c.interior_contains(x)) return c;
    return std::nullopt;
}

FanRelation fan_relate(const Fan& a, const Fan& b) {
    if (a.ambient_dim() != b.ambient_dim()) return FanRelation::unrelated;
    if (a == b) return FanRelation::equal;
    auto subfan = [](const Fan& x, const Fan& y) {
        for (const Cone& c : x.cones())
            if (!y.has_cone(c)) return false;
        return true;
    };
    if (subfan(a, b)) return FanRelation::first_subfan_of_second;
    if (subfan(b, a)) return FanRelation::second_subfan_of_first;
    if (support_equal(a, b)) {
        auto refines = [](const Fan& x, const Fan& y) {
            for (const Cone& c : x.cones()) {
                bool inside = false;
                for (const Cone& d : y.cones())
                    if (d.contains(c)) { inside = true; break; }
                if (!inside) return false;
            }
            return true;
        };
        if (refines(a, b)) return FanRelation::first_refines_second;
        if (refines(b, a)) return FanRelation::second_refines_first;
    }
    return FanRelation::unrelated;
}

bool is_complete(const Fan& fan) {
    if (fan.empty()) return false;
    for (const ArrangementCell& cell : arrangement_cells(fan.ambient_dim(), fan_walls(fan)))
        if (!fan.support_contains(cell.sample)) return false;
    return true;
}

bool support_equal(const Fan& a, const Fan& b) {
    if (a.ambient_dim() != b.ambient_dim()) return false;
    std::vector<AffineFunctional> walls = fan_walls(a);
    for (AffineFunctional& w : fan_walls(b)) walls.push_back(std::move(w));
    for (const ArrangementCell& cell : arrangement_cells(a.ambient_dim(), walls))
        if (a.support_contains(cell.sample) != b.support_contains(cell.sample)) return false;
    return true;
}

Fan common_refinement(const Fan& a, const Fan& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw Error("common_refinement: ambient dimension mismatch");
    std::vector<Cone> meets;
    for (const Cone& c : a.maximal_cones())
        for (const Cone& d : b.maximal_cones()) meets.push_back(c.intersect(d));
    return Fan::from_cones(a.ambient_dim(), meets);
}

Fan product_fan(const Fan& a, const Fan& b) {
    const int na = a.ambient_dim();
    const int nb = b.ambient_dim();
    std::vector<Cone> products;
    for (const Cone& c : a.maximal_cones()) {
        for (const Cone& d : b.maximal_cones()) {
            std::vector<IntVec> rays;
            for (const IntVec& r : c.rays()) {
                IntVec lift(na + nb, Int(0));
                for (int i = 0; i < na; ++i) lift[i] = r[i];
                rays.push_back(std::move(lift));
            }
            for (const IntVec& r : d.rays()) {
                IntVec lift(na + nb, Int(0));
                for (int i = 0; i < nb; ++i) lift[na + i] = r[i];
                rays.push_back(std::move(lift));
            }
            products.push_back(Cone::from_rays(na + nb, rays));
        }
    }
    return Fan::from_cones(na + nb, products);
}

Fan map_fan(const Fan& fan, const IntMat& u) {
    unimodular_inverse(u); // existence check; throws if u is not invertible over Z
    std::vector<Cone> images;
    for (const Cone& c : fan.maximal_cones()) images.push_back(c.image(u));
    return Fan::from_cones(fan.ambient_dim(), images);
}

FanMorphism::FanMorphism(LatticeMap m, Fan src, Fan tgt)
    : map(std::move(m)), source(std::move(src)), target(std::move(tgt)) {
    if (map.source_rank != source.ambient_dim() || map.target_rank != target.ambient_dim())
        throw ValidationError("fan morphism: map shape does not match the fans");
    for (const Cone& c : source.maximal_cones()) {
        bool compatible = false;
        try {
            Cone img = c.image(map.matrix);
            for (const Cone& t : target.cones())
                if (t.contains(img)) { compatible = true; break; }
        } catch (const NotStronglyConvexError&) {
            // image contains a line: certainly in no cone of the target
        }
        if (!compatible)
            throw ValidationError("fan morphism: a source cone lands in no target cone");
    }
}

PropernessCheck properness_check(const FanMorphism& phi) {
    std::vector<AffineFunctional> walls = fan_walls(phi.source);
    IntMat pullback = transpose(phi.map.matrix);
    for (const AffineFunctional& w : fan_walls(phi.target)) {
        IntVec h = mul(pullback, w.coeffs);
        if (!is_zero(h)) walls.push_back({std::move(h), Int(0)});
    }
    PropernessCheck out{true, std::nullopt};
    for (const ArrangementCell& cell : arrangement_cells(phi.source.ambient_dim(), walls)) {
        RatVec image = mul(phi.map.matrix, cell.sample);
        if (phi.target.support_contains(image) && !phi.source.support_contains(cell.sample)) {
            out.proper = false;
            if (!out.witness || lex_less(cell.sample, *out.witness)) out.witness = cell.sample;
        }
    }
    return out;
}

bool is_proper(const FanMorphism& phi) { return properness_check(phi).proper; }

Fan stellar_subdivision(const Fan& fan, const IntVec& ray) {
    IntVec v = primitive(ray);
    if (is_zero(v)) throw Error("stellar_subdivision: zero direction");
    if (!fan.support_contains(to_rat(v)))
        throw Error("stellar_subdivision: direction outside the support");
    std::vector<Cone> next;
    for (const Cone& c : fan.cones()) {
        if (!c.contains(v)) {
            next.push_back(c);
            continue;
        }
        for (const Cone& f : c.faces()) {
            if (f.contains(v)) continue;
            std::vector<IntVec> rays = f.rays();
            rays.push_back(v);
            next.push_back(Cone::from_rays(fan.ambient_dim(), rays));
        }
    }
    return Fan::from_cones(fan.ambient_dim(), next);
}

namespace {

// Nonzero lattice points of the half-open parallelepiped spanned by the rays
// of a simplicial cone. Nonempty exactly when the cone is not smooth.
std::vector<IntVec> box_points(const Cone& c) {
    const IntMat& span = c.span_lattice();
    int k = c.ray_count();
    IntMat coords(k, k);
    for (int j = 0; j < k; ++j) {
        auto sol = solve(span, to_rat(c.rays()[j]));
        if (sol.empty()) throw InternalInconsistencyError("ray left its own span");
        for (int i = 0; i < k; ++i) {
            if (denominator(sol[0][i]) != 1)
                throw InternalInconsistencyError("fractional ray coordinate in a saturated span");
            coords.at(i, j) = numerator(sol[0][i]);
        }
    }
    std::vector<Int> lo(k, Int(0)), hi(k, Int(0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (coords.at(i, j) < 0)
                lo[i] += coords.at(i, j);
            else
                hi[i] += coords.at(i, j);
        }
    std::set<IntVec> out;
    IntVec x(k);
    std::function<void(int)> sweep = [&](int i) {
        if (i == k) {
            if (ccc::is_zero(x)) return;
            auto t = solve(coords, to_rat(x));
            if (t.empty()) return;
            for (const Rat& ti : t[0])
                if (ti < 0 || ti >= 1) return;
            out.insert(mul(span, x));
            return;
        }
        for (Int v = lo[i]; v <= hi[i]; ++v) {
            x[i] = v;
            sweep(i + 1);
        }
    };
    sweep(0);
    return std::vector<IntVec>(out.begin(), out.end());
}

// Hilbert basis elements usable for subdivision: box points with no
// decomposition into two nonzero box points. (Both summands of a lattice
// point of the half-open box lie in the box themselves, so this test is
// complete; the rays are the remaining Hilbert basis elements.)
std::vector<IntVec> irreducible_box_points(const Cone& c) {
    std::vector<IntVec> box = box_points(c);
    std::set<IntVec> lookup(box.begin(), box.end());
    std::vector<IntVec> out;
    for (const IntVec& u : box) {
        bool reducible = false;
        for (const IntVec& a : box) {
            IntVec b = vec_sub(u, a);
            if (!ccc::is_zero(b) && lookup.count(b)) { reducible = true; break; }
        }
        if (!reducible) out.push_back(u);
    }
    return out;
}

// Maximal cones after subdividing at v: cones missing v survive, a cone
// containing v is replaced by the pieces raised over its facets missing v.
std::vector<Cone> stellar_replace(int ambient_dim, const std::vector<Cone>& maxes,
                                  const IntVec& v) {
    std::vector<Cone> next;
    for (const Cone& m : maxes) {
        if (!m.contains(v)) {
            next.push_back(m);
            continue;
        }
        for (const Cone& f : m.facets()) {
            if (f.contains(v)) continue;
            std::vector<IntVec> rays = f.rays();
            rays.push_back(v);
            next.push_back(Cone::from_rays(ambient_dim, rays));
        }
    }
    return next;
}

// Index of the span of the given independent rays over their integer span:
// the multiplicity of the cone they would generate, without building it.
Int ray_span_index(const std::vector<IntVec>& rays, int ambient_dim) {
    Int out = 1;
    for (const Int& d : invariant_factors(IntMat::from_cols(rays, ambient_dim)))
        out *= d;
    return out;
}

} // namespace

Fan smooth_refine(const Fan& fan) {
    // Pulling at every ray triangulates the fan and is the identity on cones
    // that are already simplicial. The loops work on the maximal cones alone
    // and assemble a fan once at the end: the multiplicity of a face divides
    // the multiplicity of its cone, so the maximal cones see every maximum.
    int n = fan.ambient_dim();
    std::vector<Cone> maxes = fan.maximal_cones();
    for (const IntVec& r : fan.rays()) maxes = stellar_replace(n, maxes, r);
    for (const Cone& c : maxes)
        if (!c.is_simplicial())
            throw InternalInconsistencyError("pulling left a non-simplicial cone");

    for (;;) {
        std::vector<Int> mult;
        for (const Cone& c : maxes) mult.push_back(c.multiplicity());

        // the worst cone: maximal multiplicity, first in cone order
        int worst = -1;
        for (size_t i = 0; i < maxes.size(); ++i) {
            if (mult[i] <= 1) continue;
            if (worst < 0 || mult[i] > mult[worst] ||
                (mult[i] == mult[worst] && maxes[i] < maxes[worst]))
                worst = static_cast<int>(i);
        }
        if (worst < 0) break;

        // Splitting at a box point scales the determinant of each piece by a
        // dropped barycentric coordinate, so every piece of every split cone
        // is strictly better than its parent; the (max multiplicity, count)
        // pair decreases and the loop terminates. A candidate is scored by
        // the pieces it would cut, not by rebuilding the fan: a cone missing
        // the point keeps its multiplicity, a cone containing it is replaced
        // by one piece per ray with a positive barycentric coordinate.
        std::optional<IntVec> best;
        Int best_score = 0;
        for (const IntVec& u : irreducible_box_points(maxes[worst])) {
            Int score = 1;
            for (size_t i = 0; i < maxes.size(); ++i) {
                if (!maxes[i].contains(u)) {
                    if (mult[i] > score) score = mult[i];
                    continue;
                }
                std::vector<IntVec> rays = maxes[i].rays();
                auto coords = solve(IntMat::from_cols(rays, n), to_rat(u));
                for (size_t g = 0; g < rays.size(); ++g) {
                    if (coords[0][g] == 0) continue;
                    std::vector<IntVec> piece = rays;
                    piece[g] = u;
                    Int m = ray_span_index(piece, n);
                    if (m > score) score = m;
                }
            }
            if (!best || score < best_score || (score == best_score && lex_less(u, *best))) {
                best = u;
                best_score = score;
            }
        }
        if (!best) throw InternalInconsistencyError("non-smooth cone with an empty box");
        maxes = stellar_replace(n, maxes, *best);
    }
    return Fan::from_cones(n, maxes);
}

namespace {

// Counterclockwise order on primitive plane vectors, starting at the
// positive x-axis.
bool ccw_less(const IntVec& a, const IntVec& b) {
    auto half = [](const IntVec& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
    if (half(a) != half(b)) return half(a) < half(b);
    Int cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

Completion complete_plane_fan(const Fan& fan) {
    std::vector<IntVec> rays = fan.rays();
    if (rays.empty()) rays.push_back({Int(1), Int(0)});
    std::sort(rays.begin(), rays.end(), ccw_less);
    // While some counterclockwise gap reaches half a turn, open it with a
    // quarter turn of its starting ray.
    for (;;) {
        bool widened = false;
        for (size_t i = 0; i < rays.size(); ++i) {
            const IntVec& a = rays[i];
            const IntVec& b = rays[(i + 1) % rays.size()];
            Int cross = a[0] * b[1] - a[1] * b[0];
            bool wide = rays.size() == 1 || cross < 0 || (cross == 0 && dot(a, b) < 0);
            if (wide) {
                rays.push_back({Int(-a[1]), a[0]});
                std::sort(rays.begin(), rays.end(), ccw_less);
                widened = true;
                break;
            }
        }
        if (!widened) break;
    }
    std::vector<Cone> cones = fan.cones();
    for (size_t i = 0; i < rays.size(); ++i) {
        const IntVec& a = rays[i];
        const IntVec& b = rays[(i + 1) % rays.size()];
        cones.push_back(Cone::from_rays(2, {a, b}));
    }
    return {Fan::from_cones(2, cones), false};
}

} // namespace

Completion complete_fan(const Fan& fan) {
    if (is_complete(fan)) return {fan, false};
    int n = fan.ambient_dim();
    if (n == 0) return {Fan::from_cones(0, {Cone(0)}), false};
    if (n == 1) {
        std::vector<Cone> cones = fan.cones();
        cones.push_back(Cone::from_rays(1, {{Int(1)}}));
        cones.push_back(Cone::from_rays(1, {{Int(-1)}}));
        return {Fan::from_cones(1, cones), false};
    }
    if (n == 2) return complete_plane_fan(fan);

    // From rank three on: the closed cells of the arrangement of all walls
    // form a complete fan refining the input. The coordinate hyperplanes keep
    // every cell strongly convex.
    std::vector<AffineFunctional> walls = fan_walls(fan, /*with_axes=*/true);
    std::vector<Cone> cones;
    for (const ArrangementCell& cell : arrangement_cells(n, walls)) {
        if (cell.dim != n) continue;
        std::vector<Constraint> cs;
        for (size_t i = 0; i < walls.size(); ++i) {
            if (cell.signs[i] == 0)
                cs.push_back({walls[i].coeffs, true});
            else
                cs.push_back({cell.signs[i] > 0 ? walls[i].coeffs : vec_neg(walls[i].coeffs), false});
        }
        GeneratorSet gs = dual_description(n, std::move(cs));
        if (gs.lineality.cols != 0)
            throw InternalInconsistencyError("arrangement cell with a line");
        cones.push_back(Cone::from_rays(n, gs.rays));
    }
    Fan result = Fan::from_cones(n, cones);
    bool subfan = true;
    for (const Cone& c : fan.cones())
        if (!result.has_cone(c)) { subfan = false; break; }
    return {std::move(result), !subfan};
}

StarQuotient star_quotient(const Fan& fan, const Cone& tau) {
    if (!fan.has_cone(tau)) throw ConeNotInFanError("the distinguished cone is not in the fan");
    std::vector<Cone> star;
    for (const Cone& c : fan.cones())
        if (c.contains(tau)) star.push_back(c);
    Fan closed_star = Fan::from_cones(fan.ambient_dim(), star);
    std::vector<Cone> boundary_cones;
    for (const Cone& c : closed_star.cones())
        if (!c.contains(tau)) boundary_cones.push_back(c);
    Fan boundary = Fan::from_cones(fan.ambient_dim(), boundary_cones);

    int n = fan.ambient_dim(), d = tau.dim();
    SmithDecomposition snf = smith_normal_form(tau.span_lattice());
    IntMat projection(n - d, n);
    for (int i = d; i < n; ++i)
        for (int j = 0; j < n; ++j) projection.at(i - d, j) = snf.u.at(i, j);

    std::vector<Cone> images;
    for (const Cone& c : star) images.push_back(c.image(projection));
    Fan quotient = Fan::from_cones(n - d, images);
    return {std::move(star), std::move(closed_star), std::move(boundary), std::move(projection),
            std::move(quotient)};
}

} // namespace ccc
