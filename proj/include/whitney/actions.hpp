#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whitney/pullback.hpp"

namespace whitney {

/// Square orthogonal matrix with rational entries (float inputs are stored
/// as their exact dyadic values). Row-major.
struct OrthogonalElement {
    std::size_t dim = 0;
    std::vector<Rational> mat; // dim*dim entries, row-major
    std::string label;

    static OrthogonalElement identity(std::size_t n);

    const Rational& at(std::size_t r, std::size_t c) const { return mat[r * dim + c]; }
    Rational& at(std::size_t r, std::size_t c) { return mat[r * dim + c]; }

    OrthogonalElement operator*(const OrthogonalElement& o) const;
    /// For orthogonal matrices the inverse is the transpose.
    OrthogonalElement inverse() const;
    Point apply(std::span<const Rational> v) const;
    PolyMap as_map() const;

    bool is_orthogonal(const Tolerance& tol) const;
    bool approx_equal(const OrthogonalElement& o, const Tolerance& tol) const;
};

/// Finite matrix group: elements closed under product and inverse, with the
/// multiplication table. Element 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup(std::vector<OrthogonalElement> elements, const Tolerance& tol);

    std::size_t size() const { return elems_.size(); }
    std::size_t dim() const { return elems_.empty() ? 0 : elems_[0].dim; }
    const OrthogonalElement& element(std::size_t i) const { return elems_[i]; }
    std::size_t identity() const { return 0; }
    std::size_t product(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const { return inv_[a]; }
    const std::vector<std::size_t>& generator_indices() const { return gen_idx_; }
    void set_generator_indices(std::vector<std::size_t> g) { gen_idx_ = std::move(g); }

    std::optional<std::size_t> find(const OrthogonalElement& g, const Tolerance& tol) const;

private:
    std::vector<OrthogonalElement> elems_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inv_;
    std::vector<std::size_t> gen_idx_;
};

/// Closure of the generators under products, breadth-first from the identity,
/// deduplicated under the tolerance. Throws bound_exceeded past max_order
/// (e.g. for an irrational rotation, which generates a dense subgroup).
FiniteGroup group_closure(const std::vector<OrthogonalElement>& generators, const Tolerance& tol,
                          std::size_t max_order);

/// Circle acting by weighted planar rotations: each block spins a coordinate
/// pair with an integer weight; remaining coordinates are fixed.
struct CircleAction {
    struct Block {
        std::size_t first, second;
        int weight = 1;
    };
    std::size_t dim = 0;
    std::vector<Block> blocks;

    /// The infinitesimal generator A with exp(theta A) the rotation by theta;
    /// blockwise w * [[0,-1],[1,0]].
    std::vector<Rational> generator_matrix() const;
    /// exp(theta A); entries are exact dyadic values of the cos/sin doubles.
    OrthogonalElement rotation(double theta) const;
    /// True when this is the single weight-1 block on R^2 (the configuration
    /// groupoid arrows support).
    bool is_standard_plane() const;
};

/// An arrow (g, z) of the restricted action groupoid: g moves cloud point
/// `source` onto cloud point `target`.
struct GroupoidArrow {
    OrthogonalElement g;
    std::size_t source = 0;
    std::size_t target = 0;
    std::optional<std::size_t> group_index; // index into the FiniteGroup, when finite
    std::optional<double> angle;            // circle parameter, when applicable
};

/// Full arrow list {(g, z) : g.z in Z}. Contains every unit and is closed
/// under inverse. For circle actions only the standard plane configuration
/// is supported: arrows are found by radius match and angle solve.
std::vector<GroupoidArrow> groupoid_arrows(const FiniteGroup& G, const PointCloud& Z, const Tolerance& tol);
std::vector<GroupoidArrow> groupoid_arrows(const CircleAction& circle, const PointCloud& Z,
                                           const Tolerance& tol);

struct OrbitCloud {
    PointCloud cloud;
    /// For each output point, every (group element index, source point index)
    /// that lands on it.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> provenance;
};

/// Deduplicated {g.z : g in G, z in Z}, points of Z first (g = identity).
OrbitCloud orbit_cloud(const FiniteGroup& G, const PointCloud& Z, const Tolerance& tol);

/// Pullback of a jet field along the linear diffeomorphism v -> g.v; the
/// result lives on g^{-1} . (cloud of F). A specialization of pullback_multi.
JetField group_pullback(const OrthogonalElement& g, const JetField& F, Exec exec = Exec::parallel);

struct InvarianceViolation {
    std::size_t index = 0; // arrow index (Inv1) or generator index (Inv2)
    std::size_t point = 0;
    MultiIndex alpha;
    Rational got, expected;
};

struct InvarianceReport {
    bool ok = true;
    std::vector<InvarianceViolation> violations;
};

/// Groupoid invariance: for every arrow (g, z -> g.z) the pullback of the
/// jet at g.z through g must reproduce the jet at z, component by component.
InvarianceReport check_inv1(const std::vector<GroupoidArrow>& arrows, const JetField& F, const Tolerance& tol);

/// Infinitesimal invariance: for every Lie-algebra matrix A, the linear
/// vector field x -> A x applied to F must vanish (at order m-1).
InvarianceReport check_inv2(const std::vector<std::vector<Rational>>& lie_generators, const JetField& F,
                            const Tolerance& tol, Exec exec = Exec::parallel);

/// Group average (1/|G|) sum_g f o g; fixes constants, output is invariant.
Polynomial average_poly(const FiniteGroup& G, const Polynomial& f);

/// Circle average by equispaced-angle quadrature with N nodes; exact (up to
/// float tolerance) once N >= deg(f) + 1.
Polynomial average_poly(const CircleAction& circle, const Polynomial& f, std::size_t nodes);

/// Extension operator: rebuilds a jet field on the orbit G.Z from a
/// groupoid-invariant field on Z via pullback along group elements. Verifies
/// the invariance precondition, and that all candidate tables for a point
/// agree when several (g, z) produce it.
JetField extend_invariant(const FiniteGroup& G, const JetField& F, const Tolerance& tol,
                          Exec exec = Exec::parallel);

namespace detail {
/// Extension core without the invariance precondition check; still detects
/// conflicting candidate tables. Exposed for tests.
JetField extend_invariant_unchecked(const FiniteGroup& G, const JetField& F, const Tolerance& tol, Exec exec);
} // namespace detail

} // namespace whitney
