#include "whitney/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace whitney {

namespace {

std::vector<Polynomial> elementary_symmetric(std::size_t n) {
    // dp over variables: es[k] after variable i holds e_k(x_1..x_i)
    std::vector<Polynomial> es;
    es.push_back(Polynomial::constant(n, 1));
    for (std::size_t k = 1; k <= n; ++k) es.push_back(Polynomial(n));
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial xi = Polynomial::variable(n, i);
        for (std::size_t k = n; k >= 1; --k) es[k] = es[k] + es[k - 1] * xi;
    }
    return {es.begin() + 1, es.end()};
}

OrthogonalElement permutation_matrix(std::size_t n, std::size_t a, std::size_t b, const std::string& label) {
    OrthogonalElement g = OrthogonalElement::identity(n);
    g.at(a, a) = 0;
    g.at(b, b) = 0;
    g.at(a, b) = 1;
    g.at(b, a) = 1;
    g.label = label;
    return g;
}

/// Block-diagonal lift diag(g, g) acting on (q, p).
OrthogonalElement cotangent_lift(const OrthogonalElement& g) {
    std::size_t n = g.dim;
    OrthogonalElement out = OrthogonalElement::identity(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out.at(i, j) = g.at(i, j);
            out.at(n + i, n + j) = g.at(i, j);
        }
    out.label = g.label + "^T*";
    return out;
}

HilbertEntry make_z2_entry() {
    OrthogonalElement flip = OrthogonalElement::identity(1);
    flip.at(0, 0) = -1;
    flip.label = "-1";
    HilbertEntry e{"z2-line",
                   "z2",
                   1,
                   group_closure({flip}, Tolerance::exact_mode(), 8),
                   std::nullopt,
                   {},
                   {Polynomial::variable(1, 0) * Polynomial::variable(1, 0)},
                   1};
    return e;
}

HilbertEntry make_circle_entry() {
    CircleAction circle{2, {{0, 1, 1}}};
    OrthogonalElement rot90 = circle.rotation(std::numbers::pi / 2);
    rot90.label = "r90";
    Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    HilbertEntry e{"circle-plane",
                   "circle",
                   2,
                   group_closure({rot90}, Tolerance::exact_mode(), 8),
                   circle,
                   {circle.generator_matrix()},
                   {x * x + y * y},
                   1};
    return e;
}

HilbertEntry make_sn_entry(std::size_t n) {
    std::vector<OrthogonalElement> gens;
    for (std::size_t i = 0; i + 1 < n; ++i)
        gens.push_back(permutation_matrix(n, i, i + 1, "s" + std::to_string(i + 1) + std::to_string(i + 2)));
    HilbertEntry e{"s" + std::to_string(n) + "-permutation",
                   "sn",
                   n,
                   group_closure(gens, Tolerance::exact_mode(), 64),
                   std::nullopt,
                   {},
                   elementary_symmetric(n),
                   static_cast<int>(n)};
    return e;
}

HilbertEntry make_cotangent_entry(std::size_t n) {
    // finite subgroup: signed permutations of the base coordinates, lifted
    std::vector<OrthogonalElement> gens;
    for (std::size_t i = 0; i + 1 < n; ++i)
        gens.push_back(cotangent_lift(
            permutation_matrix(n, i, i + 1, "s" + std::to_string(i + 1) + std::to_string(i + 2))));
    OrthogonalElement flip = OrthogonalElement::identity(n);
    flip.at(0, 0) = -1;
    flip.label = "f1";
    gens.push_back(cotangent_lift(flip));

    std::size_t dim = 2 * n;
    Polynomial qq(dim), qp(dim), pp(dim);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial qi = Polynomial::variable(dim, i), pi = Polynomial::variable(dim, n + i);
        qq = qq + qi * qi;
        qp = qp + qi * pi;
        pp = pp + pi * pi;
    }
    // so(n) generators, lifted diagonally to act on q and p alike
    std::vector<std::vector<Rational>> lie;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Rational> a(dim * dim, Rational(0));
            a[i * dim + j] = -1;
            a[j * dim + i] = 1;
            a[(n + i) * dim + (n + j)] = -1;
            a[(n + j) * dim + (n + i)] = 1;
            lie.push_back(std::move(a));
        }
    HilbertEntry e{"o" + std::to_string(n) + "-cotangent",
                   "on-cotangent",
                   dim,
                   group_closure(gens, Tolerance::exact_mode(), 64),
                   std::nullopt,
                   std::move(lie),
                   {qq, qp, pp},
                   3};
    return e;
}

} // namespace

const std::vector<HilbertEntry>& catalog() {
    static const std::vector<HilbertEntry> entries = [] {
        std::vector<HilbertEntry> v;
        v.push_back(make_z2_entry());
        v.push_back(make_circle_entry());
        for (std::size_t n = 2; n <= 4; ++n) v.push_back(make_sn_entry(n));
        for (std::size_t n = 2; n <= 3; ++n) v.push_back(make_cotangent_entry(n));
        return v;
    }();
    return entries;
}

std::optional<std::reference_wrapper<const HilbertEntry>> catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return std::cref(e);
    return std::nullopt;
}

EntryReport verify_entry(const HilbertEntry& e, std::uint64_t seed) {
    EntryReport rep;
    Rng rng(seed);
    Tolerance exact = Tolerance::exact_mode();
    const std::uint32_t order = 4;

    auto random_point = [&]() {
        Point z;
        for (std::size_t i = 0; i < e.dim; ++i) z.push_back(rng.next_rational(5, 3));
        return z;
    };

    for (std::size_t ri = 0; ri < e.invariants.size(); ++ri) {
        const Polynomial& rho = e.invariants[ri];
        // arrow checks on two-point generator clouds
        for (std::size_t gi : e.finite.generator_indices()) {
            Point z = random_point();
            Point gz = e.finite.element(gi).apply(z);
            std::vector<Point> pts{z};
            if (!points_equal(z, gz, exact)) pts.push_back(gz);
            PointCloud Z(e.dim, pts);
            JetField F = jet_of_poly(rho, Z, order);
            auto arrows = groupoid_arrows(e.finite, Z, exact);
            auto inv1 = check_inv1(arrows, F, exact);
            if (!inv1.ok)
                rep.failures.push_back("rho_" + std::to_string(ri + 1) + " fails the arrow check for generator " +
                                       e.finite.element(gi).label);
        }
        // infinitesimal checks on a sampled cloud
        if (!e.lie_generators.empty()) {
            Point z0 = random_point(), z1 = random_point();
            while (points_equal(z0, z1, exact)) z1 = random_point();
            PointCloud Z(e.dim, {z0, z1});
            JetField F = jet_of_poly(rho, Z, order);
            auto inv2 = check_inv2(e.lie_generators, F, exact);
            if (!inv2.ok)
                rep.failures.push_back("rho_" + std::to_string(ri + 1) + " fails the infinitesimal check");
        }
    }
    rep.generic_rank = generic_rank(e.hilbert_map(), 3, seed ^ 0x9e3779b97f4a7c15ULL);
    if (rep.generic_rank != e.expected_rank)
        rep.failures.push_back("generic rank " + std::to_string(rep.generic_rank) + " != expected " +
                               std::to_string(e.expected_rank));
    rep.ok = rep.failures.empty();
    return rep;
}

JetField hilbert_pullback(const HilbertEntry& e, const JetField& H, const PointCloud& Z, std::uint32_t m,
                          const Tolerance& tol) {
    PullbackPlan plan = make_plan(e.hilbert_map(), Z, H.cloud(), tol);
    JetField out = pullback_multi(plan, H, m);
    // Invariance of the image is a theorem; failing it here means a bug.
    auto arrows = groupoid_arrows(e.finite, Z, tol);
    auto inv1 = check_inv1(arrows, out, tol);
    if (!inv1.ok)
        throw internal_inconsistency("hilbert pullback output fails the arrow invariance certification");
    if (m >= 1 && !e.lie_generators.empty()) {
        auto inv2 = check_inv2(e.lie_generators, out, tol);
        if (!inv2.ok)
            throw internal_inconsistency("hilbert pullback output fails the infinitesimal certification");
    }
    return out;
}

std::vector<std::size_t> isotropy_indices(const FiniteGroup& G, std::span<const Rational> z,
                                          const Tolerance& tol) {
    std::vector<std::size_t> idx;
    for (std::size_t gi = 0; gi < G.size(); ++gi)
        if (points_equal(G.element(gi).apply(z), z, tol)) idx.push_back(gi);
    return idx;
}

FiniteGroup isotropy(const FiniteGroup& G, std::span<const Rational> z, const Tolerance& tol) {
    std::vector<OrthogonalElement> elems;
    for (std::size_t gi : isotropy_indices(G, z, tol)) elems.push_back(G.element(gi));
    // the constructor re-verifies closure and the table
    return FiniteGroup(std::move(elems), tol);
}

OrbitTypeLabel orbit_type_label(const FiniteGroup& G, std::span<const Rational> z, const Tolerance& tol) {
    std::vector<std::size_t> H = isotropy_indices(G, z, tol);
    OrbitTypeLabel label;
    // canonical representative: lexicographically smallest conjugate index set
    label.witness = H;
    for (std::size_t gi = 0; gi < G.size(); ++gi) {
        std::vector<std::size_t> conj;
        conj.reserve(H.size());
        for (std::size_t h : H) conj.push_back(G.product(G.product(gi, h), G.inverse(gi)));
        std::sort(conj.begin(), conj.end());
        if (conj < label.witness) label.witness = std::move(conj);
    }
    if (H.size() == G.size()) {
        label.tag = OrbitTypeLabel::Tag::full_isotropy;
        label.name = "full-isotropy";
    } else if (H.size() == 1) {
        label.tag = OrbitTypeLabel::Tag::trivial_isotropy;
        label.name = "trivial-isotropy";
    } else {
        label.tag = OrbitTypeLabel::Tag::intermediate;
        label.name = "intermediate(order " + std::to_string(H.size()) + ")";
    }
    return label;
}

OrbitTypeLabel classify_cotangent(std::size_t n, std::span<const Rational> q, std::span<const Rational> p,
                                  double eps) {
    if (n < 2) throw domain_error("cotangent classification needs n >= 2");
    if (q.size() != n || p.size() != n) throw dimension_mismatch("q and p must have length n");
    auto small = [&](const Rational& v) {
        if (eps == 0) return v == 0;
        return std::fabs(to_double(v)) <= eps;
    };
    bool origin = true;
    for (std::size_t i = 0; i < n && origin; ++i)
        if (!small(q[i]) || !small(p[i])) origin = false;
    OrbitTypeLabel label;
    if (origin) {
        label.tag = OrbitTypeLabel::Tag::full_isotropy;
        label.name = "V_(G)";
        return label;
    }
    bool parallel = true;
    for (std::size_t i = 0; i < n && parallel; ++i)
        for (std::size_t j = i + 1; j < n && parallel; ++j)
            if (!small(q[i] * p[j] - q[j] * p[i])) parallel = false;
    if (parallel) {
        label.tag = OrbitTypeLabel::Tag::intermediate;
        label.name = "V_(O_{n-1})";
    } else {
        label.tag = OrbitTypeLabel::Tag::trivial_isotropy;
        label.name = "V_(e)";
    }
    return label;
}

} // namespace whitney
