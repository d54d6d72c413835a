#pragma once

#include <functional>

#include "whitney/actions.hpp"

namespace whitney {

/// One curated entry of the Hilbert-map catalog: a representation, a
/// complete system of invariant polynomials, the Lie-algebra generators of
/// the connected part, and a finite (sub)group used for arrow checks.
struct HilbertEntry {
    std::string name;
    std::string family; // "z2", "circle", "sn", "on-cotangent"
    std::size_t dim = 0;
    FiniteGroup finite;                               // finite group or finite subgroup
    std::optional<CircleAction> circle;               // for circle entries
    std::vector<std::vector<Rational>> lie_generators; // n x n matrices, row-major
    std::vector<Polynomial> invariants;               // rho_1 ... rho_l
    int expected_rank = 0;

    PolyMap hilbert_map() const { return PolyMap(dim, invariants); }
};

/// The shipped catalog: Z/2 on R, the weight-1 circle on R^2, permutation
/// actions on R^n (n <= 4) with elementary symmetric polynomials, and the
/// cotangent lift of O_n (n <= 3) with (|q|^2, <q,p>, |p|^2).
const std::vector<HilbertEntry>& catalog();

std::optional<std::reference_wrapper<const HilbertEntry>> catalog_entry(const std::string& name);

struct EntryReport {
    bool ok = true;
    int generic_rank = 0;
    std::vector<std::string> failures;
};

/// Re-derives the entry's claimed properties: every invariant passes the
/// groupoid check on sampled generator clouds and the infinitesimal check on
/// sampled points, at jet orders up to 4; reports the generic Jacobian rank.
EntryReport verify_entry(const HilbertEntry& e, std::uint64_t seed);

/// Pullback of a boundary jet H (a field on a cloud in R^l) through the
/// entry's Hilbert map onto Z. The result is certified invariant (arrow and
/// infinitesimal checks) before returning; a certification failure is an
/// internal inconsistency, not a user error.
JetField hilbert_pullback(const HilbertEntry& e, const JetField& H, const PointCloud& Z, std::uint32_t m,
                          const Tolerance& tol);

/// Isotropy subgroup {g : g.z = z} with the inherited structure.
FiniteGroup isotropy(const FiniteGroup& G, std::span<const Rational> z, const Tolerance& tol);

/// Indices (into G) of the isotropy elements.
std::vector<std::size_t> isotropy_indices(const FiniteGroup& G, std::span<const Rational> z,
                                          const Tolerance& tol);

struct OrbitTypeLabel {
    enum class Tag { full_isotropy, intermediate, trivial_isotropy };
    Tag tag = Tag::trivial_isotropy;
    /// Canonical representative of the isotropy conjugacy class: the
    /// lexicographically smallest sorted index set among all conjugates.
    std::vector<std::size_t> witness;
    std::string name; // printable stratum name

    bool operator==(const OrbitTypeLabel& o) const { return tag == o.tag && witness == o.witness; }
};

/// Orbit-type classification: isotropy up to conjugacy (exhaustive
/// conjugation; catalog groups are small). Equal labels iff conjugate
/// isotropy groups.
OrbitTypeLabel orbit_type_label(const FiniteGroup& G, std::span<const Rational> z, const Tolerance& tol);

/// The three strata of the cotangent lift of O_n acting on (q, p):
/// the origin (full isotropy), q parallel to p away from zero (isotropy
/// O_{n-1}), and the generic stratum (trivial isotropy). Parallelism is
/// decided by the 2x2 minors of [q; p] against eps.
OrbitTypeLabel classify_cotangent(std::size_t n, std::span<const Rational> q, std::span<const Rational> p,
                                  double eps);

} // namespace whitney
