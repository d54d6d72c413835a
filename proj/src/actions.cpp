#include "whitney/actions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace whitney {

OrthogonalElement OrthogonalElement::identity(std::size_t n) {
    OrthogonalElement e;
    e.dim = n;
    e.mat.assign(n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) e.at(i, i) = 1;
    e.label = "e";
    return e;
}

OrthogonalElement OrthogonalElement::operator*(const OrthogonalElement& o) const {
    if (dim != o.dim) throw dimension_mismatch("matrix dimensions differ");
    OrthogonalElement r;
    r.dim = dim;
    r.mat.assign(dim * dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

OrthogonalElement OrthogonalElement::inverse() const {
    OrthogonalElement r;
    r.dim = dim;
    r.mat.assign(dim * dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) r.at(i, j) = at(j, i);
    return r;
}

Point OrthogonalElement::apply(std::span<const Rational> v) const {
    if (v.size() != dim) throw dimension_mismatch("vector has wrong dimension");
    Point r(dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) r[i] += at(i, j) * v[j];
    return r;
}

PolyMap OrthogonalElement::as_map() const { return PolyMap::linear(dim, dim, mat); }

bool OrthogonalElement::is_orthogonal(const Tolerance& tol) const {
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Rational dot = 0;
            for (std::size_t k = 0; k < dim; ++k) dot += at(k, i) * at(k, j);
            Rational expect = (i == j) ? 1 : 0;
            if (!tol.value_equal(dot, expect)) return false;
        }
    return true;
}

bool OrthogonalElement::approx_equal(const OrthogonalElement& o, const Tolerance& tol) const {
    if (dim != o.dim) return false;
    for (std::size_t i = 0; i < mat.size(); ++i)
        if (!tol.value_equal(mat[i], o.mat[i])) return false;
    return true;
}

FiniteGroup::FiniteGroup(std::vector<OrthogonalElement> elements, const Tolerance& tol)
    : elems_(std::move(elements)) {
    if (elems_.empty()) throw domain_error("group needs at least the identity");
    for (const auto& g : elems_)
        if (!g.is_orthogonal(tol)) throw domain_error("group element is not orthogonal");
    if (!elems_[0].approx_equal(OrthogonalElement::identity(dim()), tol))
        throw domain_error("element 0 must be the identity");
    std::size_t n = elems_.size();
    table_.assign(n, std::vector<std::size_t>(n, 0));
    inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            OrthogonalElement prod = elems_[a] * elems_[b];
            auto idx = find(prod, tol);
            if (!idx) throw domain_error("element set is not closed under products");
            table_[a][b] = *idx;
            if (*idx == 0) inv_[a] = b;
        }
}

std::optional<std::size_t> FiniteGroup::find(const OrthogonalElement& g, const Tolerance& tol) const {
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i].approx_equal(g, tol)) return i;
    return std::nullopt;
}

FiniteGroup group_closure(const std::vector<OrthogonalElement>& generators, const Tolerance& tol,
                          std::size_t max_order) {
    if (generators.empty()) throw domain_error("group closure needs at least one generator");
    std::size_t n = generators[0].dim;
    for (const auto& g : generators) {
        if (g.dim != n) throw dimension_mismatch("generators have mixed dimensions");
        if (!g.is_orthogonal(tol)) throw domain_error("generator is not orthogonal");
    }
    std::vector<OrthogonalElement> elems{OrthogonalElement::identity(n)};
    auto find_elem = [&](const OrthogonalElement& g) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i].approx_equal(g, tol)) return i;
        return std::nullopt;
    };
    std::vector<std::size_t> gen_idx;
    // breadth-first: multiply every reached element by every generator
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (std::size_t gi = 0; gi < generators.size(); ++gi) {
            OrthogonalElement next = elems[head] * generators[gi];
            // float-precision entries: keep products at 53 bits, or the
            // dyadic numerators grow without bound along long words
            if (!tol.exact)
                for (auto& v : next.mat) v = rational_from_double(to_double(v));
            if (!find_elem(next)) {
                if (elems.size() >= max_order)
                    throw bound_exceeded("group closure exceeds max order " + std::to_string(max_order) +
                                         " (infinite or huge group?)");
                next.label = elems[head].label == "e" ? generators[gi].label
                                                      : elems[head].label + "*" + generators[gi].label;
                elems.push_back(std::move(next));
            }
        }
    }
    for (const auto& g : generators) gen_idx.push_back(*find_elem(g));
    FiniteGroup group(std::move(elems), tol);
    group.set_generator_indices(std::move(gen_idx));
    return group;
}

std::vector<Rational> CircleAction::generator_matrix() const {
    std::vector<Rational> a(dim * dim, Rational(0));
    for (const auto& b : blocks) {
        a[b.first * dim + b.second] = -b.weight;
        a[b.second * dim + b.first] = b.weight;
    }
    return a;
}

namespace {

// cos/sin at right angles should come out as exact 0 and +-1
Rational snapped(double v) {
    double r = std::round(v);
    if (std::fabs(v - r) < 1e-12) return Rational(static_cast<long>(r));
    return rational_from_double(v);
}

} // namespace

OrthogonalElement CircleAction::rotation(double theta) const {
    OrthogonalElement r = OrthogonalElement::identity(dim);
    for (const auto& b : blocks) {
        double c = std::cos(b.weight * theta), s = std::sin(b.weight * theta);
        r.at(b.first, b.first) = snapped(c);
        r.at(b.first, b.second) = snapped(-s);
        r.at(b.second, b.first) = snapped(s);
        r.at(b.second, b.second) = snapped(c);
    }
    r.label = "rot(" + format_double17(theta) + ")";
    return r;
}

bool CircleAction::is_standard_plane() const {
    return dim == 2 && blocks.size() == 1 && blocks[0].weight == 1;
}

std::vector<GroupoidArrow> groupoid_arrows(const FiniteGroup& G, const PointCloud& Z, const Tolerance& tol) {
    if (Z.size() > 0 && G.dim() != Z.dim()) throw dimension_mismatch("group and cloud dimensions differ");
    std::vector<GroupoidArrow> arrows;
    for (std::size_t gi = 0; gi < G.size(); ++gi)
        for (std::size_t z = 0; z < Z.size(); ++z) {
            Point moved = G.element(gi).apply(Z.point(z));
            if (auto target = Z.find(moved, tol)) {
                GroupoidArrow a;
                a.g = G.element(gi);
                a.source = z;
                a.target = *target;
                a.group_index = gi;
                arrows.push_back(std::move(a));
            }
        }
    return arrows;
}

std::vector<GroupoidArrow> groupoid_arrows(const CircleAction& circle, const PointCloud& Z,
                                           const Tolerance& tol) {
    if (!circle.is_standard_plane())
        throw unsupported_feature("circle groupoid arrows support only a single weight-1 block on R^2");
    std::vector<GroupoidArrow> arrows;
    double eps = tol.exact ? 0.0 : tol.tol;
    for (std::size_t a = 0; a < Z.size(); ++a)
        for (std::size_t b = 0; b < Z.size(); ++b) {
            const Point& za = Z.point(a);
            const Point& zb = Z.point(b);
            Rational ra = za[0] * za[0] + za[1] * za[1];
            Rational rb = zb[0] * zb[0] + zb[1] * zb[1];
            bool same_radius = tol.exact ? ra == rb
                                         : std::fabs(std::sqrt(to_double(ra)) - std::sqrt(to_double(rb))) <= eps;
            if (!same_radius) continue;
            double theta = 0.0;
            if (!(ra == 0)) {
                theta = std::atan2(to_double(zb[1]), to_double(zb[0])) -
                        std::atan2(to_double(za[1]), to_double(za[0]));
                if (theta < 0) theta += 2 * std::numbers::pi;
            }
            GroupoidArrow arrow;
            arrow.g = (a == b) ? OrthogonalElement::identity(2) : circle.rotation(theta);
            arrow.source = a;
            arrow.target = b;
            arrow.angle = (a == b) ? 0.0 : theta;
            arrows.push_back(std::move(arrow));
        }
    return arrows;
}

OrbitCloud orbit_cloud(const FiniteGroup& G, const PointCloud& Z, const Tolerance& tol) {
    OrbitCloud out{PointCloud(Z.dim(), {}), {}};
    std::vector<Point> pts;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> prov;
    for (std::size_t z = 0; z < Z.size(); ++z)
        for (std::size_t gi = 0; gi < G.size(); ++gi) {
            Point moved = G.element(gi).apply(Z.point(z));
            bool found = false;
            for (std::size_t k = 0; k < pts.size(); ++k)
                if (points_equal(pts[k], moved, tol)) {
                    prov[k].emplace_back(gi, z);
                    found = true;
                    break;
                }
            if (!found) {
                pts.push_back(std::move(moved));
                prov.push_back({{gi, z}});
            }
        }
    // Reorder so the identity images (the points of Z themselves) come first.
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (std::any_of(prov[k].begin(), prov[k].end(),
                        [&](const auto& p) { return p.first == G.identity(); }))
            order.push_back(k);
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (std::find(order.begin(), order.end(), k) == order.end()) order.push_back(k);
    std::vector<Point> pts2;
    for (std::size_t k : order) {
        pts2.push_back(pts[k]);
        out.provenance.push_back(prov[k]);
    }
    out.cloud = PointCloud(Z.dim(), std::move(pts2), tol);
    return out;
}

JetField group_pullback(const OrthogonalElement& g, const JetField& F, Exec exec) {
    // Source cloud g^{-1}.Y so that Phi_g maps it onto Y.
    OrthogonalElement ginv = g.inverse();
    std::vector<Point> pts;
    pts.reserve(F.cloud().size());
    for (std::size_t i = 0; i < F.cloud().size(); ++i) pts.push_back(ginv.apply(F.cloud().point(i)));
    PointCloud X(g.dim, std::move(pts));
    PullbackPlan plan{g.as_map(), X, F.cloud(), {}, Tolerance::exact_mode()};
    plan.match.resize(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) plan.match[i] = i;
    return pullback_multi(plan, F, F.order(), exec);
}

InvarianceReport check_inv1(const std::vector<GroupoidArrow>& arrows, const JetField& F,
                            const Tolerance& tol) {
    InvarianceReport rep;
    for (std::size_t ai = 0; ai < arrows.size(); ++ai) {
        const auto& arrow = arrows[ai];
        std::size_t tgt[] = {arrow.target};
        JetField at_target = restrict_to_indices(F, tgt);
        JetField pulled = group_pullback(arrow.g, at_target, Exec::serial);
        for (std::size_t s = 0; s < F.basis().size(); ++s) {
            const Rational& got = pulled.value_at_slot(0, s);
            const Rational& expected = F.value_at_slot(arrow.source, s);
            if (!tol.value_equal(got, expected)) {
                rep.ok = false;
                rep.violations.push_back({ai, arrow.source, F.basis()[s], got, expected});
            }
        }
    }
    return rep;
}

InvarianceReport check_inv2(const std::vector<std::vector<Rational>>& lie_generators, const JetField& F,
                            const Tolerance& tol, Exec exec) {
    if (F.order() == 0) throw domain_error("check_inv2 needs jet order >= 1");
    std::size_t n = F.dim();
    InvarianceReport rep;
    for (std::size_t a = 0; a < lie_generators.size(); ++a) {
        if (lie_generators[a].size() != n * n) throw dimension_mismatch("lie generator has wrong size");
        // fundamental vector field xi(x) = A x
        PolyMap xi = PolyMap::linear(n, n, lie_generators[a]);
        JetField applied = vf_apply(xi, F, exec);
        for (std::size_t p = 0; p < applied.cloud().size(); ++p)
            for (std::size_t s = 0; s < applied.basis().size(); ++s) {
                const Rational& v = applied.value_at_slot(p, s);
                if (!tol.value_zero(v)) {
                    rep.ok = false;
                    rep.violations.push_back({a, p, applied.basis()[s], v, Rational(0)});
                }
            }
    }
    return rep;
}

Polynomial average_poly(const FiniteGroup& G, const Polynomial& f) {
    if (f.dim() != G.dim()) throw dimension_mismatch("polynomial and group dimensions differ");
    Polynomial sum(f.dim());
    for (std::size_t gi = 0; gi < G.size(); ++gi) sum = sum + f.compose(G.element(gi).as_map());
    return sum * make_rational(1, Integer(G.size()));
}

Polynomial average_poly(const CircleAction& circle, const Polynomial& f, std::size_t nodes) {
    if (f.dim() != circle.dim) throw dimension_mismatch("polynomial and action dimensions differ");
    if (nodes < f.degree() + 1)
        throw bound_exceeded("circle average needs at least deg+1 = " + std::to_string(f.degree() + 1) +
                             " quadrature nodes, got " + std::to_string(nodes));
    Polynomial sum(f.dim());
    for (std::size_t j = 0; j < nodes; ++j) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes);
        sum = sum + f.compose(circle.rotation(theta).as_map());
    }
    return sum * make_rational(1, Integer(nodes));
}

namespace detail {

JetField extend_invariant_unchecked(const FiniteGroup& G, const JetField& F, const Tolerance& tol,
                                    Exec exec) {
    OrbitCloud orbit = orbit_cloud(G, F.cloud(), tol);
    JetField out(orbit.cloud, F.order());
    std::vector<std::string> conflict(orbit.cloud.size());
    detail::for_each_index(exec, orbit.cloud.size(), [&](std::size_t v) {
        std::optional<JetField> first;
        std::size_t first_gi = 0, first_z = 0;
        for (const auto& [gi, z] : orbit.provenance[v]) {
            std::size_t src[] = {z};
            JetField at_z = restrict_to_indices(F, src);
            // v = g.z, so the table at v is the pullback through Phi_{g^{-1}}.
            JetField candidate = group_pullback(G.element(G.inverse(gi)), at_z, Exec::serial);
            if (!first) {
                first = candidate;
                first_gi = gi;
                first_z = z;
                for (std::size_t s = 0; s < F.basis().size(); ++s)
                    out.set_at_slot(v, s, candidate.value_at_slot(0, s));
            } else {
                for (std::size_t s = 0; s < F.basis().size(); ++s)
                    if (!tol.value_equal(first->value_at_slot(0, s), candidate.value_at_slot(0, s))) {
                        conflict[v] = "orbit point " + std::to_string(v) + ": witnesses (g" +
                                      std::to_string(first_gi) + ", z" + std::to_string(first_z) + ") and (g" +
                                      std::to_string(gi) + ", z" + std::to_string(z) +
                                      ") disagree at alpha=" + F.basis()[s].str();
                        return;
                    }
            }
        }
    });
    for (const auto& c : conflict)
        if (!c.empty()) throw conflicting_extension(c);
    return out;
}

} // namespace detail

JetField extend_invariant(const FiniteGroup& G, const JetField& F, const Tolerance& tol, Exec exec) {
    auto arrows = groupoid_arrows(G, F.cloud(), tol);
    InvarianceReport inv = check_inv1(arrows, F, tol);
    if (!inv.ok) {
        const auto& v = inv.violations.front();
        throw non_invariant("input violates groupoid invariance: arrow " + std::to_string(v.index) +
                            " at point " + std::to_string(v.point) + ", alpha=" + v.alpha.str());
    }
    return detail::extend_invariant_unchecked(G, F, tol, exec);
}

} // namespace whitney
