#include "ccc/stacky.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ccc/errors.hpp"

namespace ccc {

StackyFan validate_stacky(Fan fan, FinAbGroup group, IntMat beta) {
    if (group.free_rank < 0)
        throw IncompatibleBetaError("group presentation: negative free rank");
    for (const Int& d : group.torsion)
        if (d < 2) throw IncompatibleBetaError("group presentation: torsion orders must be at least two");
    if (beta.rows != group.generator_count() || beta.cols != fan.ambient_dim())
        throw IncompatibleBetaError("beta must be (group generators) x (fan rank), got " +
                                    std::to_string(beta.rows) + " x " + std::to_string(beta.cols));
    beta = reduce_mod_torsion(std::move(beta), group);
    return StackyFan{std::move(fan), std::move(group), std::move(beta)};
}

StackyFan from_cover_presentation(const CoverPresentation& p) {
    if (p.projection.source_rank != p.fan.ambient_dim())
        throw ValidationError("cover presentation: the projection must start on the fan's lattice");
    IntMat kernel = kernel_basis(p.projection.matrix);
    if (kernel.cols != p.projection.source_rank - p.projection.target_rank)
        throw NotConvertibleError("the projection does not have finite cokernel");
    FinAbGroup dual_kernel{kernel.cols, {}};
    return validate_stacky(p.fan, std::move(dual_kernel), transpose(kernel));
}

CoverPresentation to_cover_presentation(const StackyFan& x) {
    if (!surjects_onto(x.beta, x.group))
        throw NotConvertibleError("beta is not surjective onto the group");
    IntMat kernel = kernel_into(x.beta, x.group);
    int k = kernel.cols;
    return CoverPresentation{x.fan, LatticeMap(x.rank(), k, transpose(kernel))};
}

Classification classify(const StackyFan& x) {
    Classification out;
    for (const Cone& c : x.fan.maximal_cones())
        if (!surjects_onto(mul(x.beta, c.perp_lattice()), x.group)) return out;
    out.is_scheme = true;

    // K = the torsion-free quotient of N by the dual of L's free part.
    IntMat free_rows(x.group.free_rank, x.rank());
    for (int i = 0; i < x.group.free_rank; ++i)
        for (int j = 0; j < x.rank(); ++j) free_rows.at(i, j) = x.beta.at(i, j);
    CokernelGroup quotient = cokernel_group(transpose(free_rows));
    const IntMat& phi = quotient.free_proj;

    const std::vector<Cone>& cones = x.fan.cones();
    std::vector<Cone> images;
    images.reserve(cones.size());
    try {
        for (const Cone& c : cones) images.push_back(c.image(phi));
    } catch (const NotStronglyConvexError&) {
        return out;
    }
    // The image assignment must preserve and reflect inclusions; in
    // particular distinct cones must have distinct images.
    for (std::size_t i = 0; i < cones.size(); ++i)
        for (std::size_t j = 0; j < cones.size(); ++j) {
            if (i == j) continue;
            if (cones[j].contains(cones[i]) != images[j].contains(images[i])) return out;
        }
    std::optional<Fan> image_fan;
    try {
        image_fan = Fan::from_cones(quotient.group.free_rank, images);
    } catch (const OverlappingConesError&) {
        return out;
    }
    // Face closure must not have added anything: the images themselves form
    // the fan.
    std::sort(images.begin(), images.end());
    if (image_fan->cones() != images) return out;

    out.is_variety = true;
    out.presentation =
        VarietyPresentation{LatticeMap(x.rank(), quotient.group.free_rank, phi), std::move(*image_fan)};
    return out;
}

TorusCoverData torus_data(const StackyFan& x) {
    TorusCoverData out;
    out.component_group = cokernel_into(x.beta, x.group);
    out.deck_lattice = kernel_into(x.beta, x.group);
    out.compact_rank = out.deck_lattice.cols;
    out.vector_rank = x.rank() - out.compact_rank;
    return out;
}

StackyMorphism::StackyMorphism(StackyFan src, StackyFan tgt, LatticeMap map, IntMat gmap)
    : source(std::move(src)),
      target(std::move(tgt)),
      fan_morphism(std::move(map), source.fan, target.fan),
      group_map(std::move(gmap)) {
    if (group_map.rows != source.group.generator_count() ||
        group_map.cols != target.group.generator_count())
        throw ValidationError("stacky morphism: the group map must be "
                              "(source generators) x (target generators)");
    group_map = reduce_mod_torsion(std::move(group_map), source.group);
    // Well-defined: the target relations must die in the source group.
    for (int j = 0; j < static_cast<int>(target.group.torsion.size()); ++j) {
        IntVec relation = group_map.col(target.group.free_rank + j);
        for (Int& v : relation) v *= target.group.torsion[j];
        if (!is_zero_in(relation, source.group))
            throw ValidationError("stacky morphism: the group map does not kill the target relations");
    }
    IntMat lhs = reduce_mod_torsion(mul(source.beta, transpose(fan_morphism.map.matrix)), source.group);
    IntMat rhs = reduce_mod_torsion(mul(group_map, target.beta), source.group);
    if (!(lhs == rhs))
        throw IncompatibleBetaError("stacky morphism: beta . phi_M differs from phi_L . beta'");
}

std::pair<StackyMorphism, StackyMorphism> factor_group_change(const StackyMorphism& phi) {
    IntMat mid_beta = reduce_mod_torsion(
        mul(phi.source.beta, transpose(phi.fan_morphism.map.matrix)), phi.source.group);
    StackyFan middle{phi.target.fan, phi.source.group, std::move(mid_beta)};
    StackyMorphism fan_part(phi.source, middle, phi.fan_morphism.map,
                            IntMat::identity(phi.source.group.generator_count()));
    StackyMorphism group_part(middle, phi.target, LatticeMap::identity(phi.target.rank()),
                              phi.group_map);
    return {std::move(fan_part), std::move(group_part)};
}

GraphFactorization graph_factorization(const FanMorphism& phi) {
    if (!is_complete(phi.source))
        throw SourceNotSmoothCompleteError("graph factorization: the source fan is not complete");
    for (const Cone& c : phi.source.maximal_cones())
        if (!c.is_smooth())
            throw SourceNotSmoothCompleteError("graph factorization: the source fan is not smooth");

    const int n = phi.source.ambient_dim();
    const int m = phi.target.ambient_dim();

    Fan zero_target = Fan::from_cones(m, {Cone(m)});
    Fan source_x_zero = product_fan(phi.source, zero_target);
    Fan full_product = product_fan(phi.source, phi.target);

    IntMat embed_m(n + m, n);
    for (int i = 0; i < n; ++i) embed_m.at(i, i) = 1;
    IntMat shear_m = IntMat::identity(n + m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) shear_m.at(n + i, j) = phi.map.matrix.at(i, j);
    IntMat project_m(m, n + m);
    for (int i = 0; i < m; ++i) project_m.at(i, n + i) = 1;

    // Refine Sigma x Sigma' against the sheared product with a completed
    // second factor: every sheared cone (sigma, phi sigma + tau') meets the
    // straight product in pieces, and the sheared copies of sigma x 0 arise
    // among those pieces whole. They are smooth, so the smooth refinement
    // keeps them.
    Fan completed = complete_fan(phi.target).fan;
    Fan sheared_graph = map_fan(product_fan(phi.source, completed), shear_m);
    Fan smooth_product = smooth_refine(common_refinement(full_product, sheared_graph));

    for (const Cone& c : source_x_zero.cones())
        if (!smooth_product.has_cone(c.image(shear_m)))
            throw InternalInconsistencyError(
                "graph factorization: a sheared source cone is missing from the refinement");

    return GraphFactorization{
        FanMorphism(LatticeMap(n, n + m, std::move(embed_m)), phi.source, source_x_zero),
        FanMorphism(LatticeMap(n + m, n + m, std::move(shear_m)), std::move(source_x_zero),
                    full_product),
        FanMorphism(LatticeMap(n + m, m, std::move(project_m)), std::move(full_product),
                    phi.target),
        std::move(smooth_product)};
}

} // namespace ccc
