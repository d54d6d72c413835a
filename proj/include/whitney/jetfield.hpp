#pragma once

#include <vector>

#include "whitney/parallel.hpp"
#include "whitney/pointcloud.hpp"
#include "whitney/polynomial.hpp"

namespace whitney {

/// Jet field of finite order m on a point cloud: per point, one coefficient
/// F_alpha for every |alpha| <= m, in the derivative convention
/// F_alpha ~ d^alpha f. Storage is dense over the canonical graded-lex basis;
/// a coefficient never written is zero.
class JetField {
public:
    JetField(PointCloud cloud, std::uint32_t order);

    const PointCloud& cloud() const { return cloud_; }
    std::uint32_t order() const { return order_; }
    std::size_t dim() const { return cloud_.dim(); }

    const std::vector<MultiIndex>& basis() const { return basis_; }
    std::size_t slot(const MultiIndex& alpha) const;

    const Rational& value(std::size_t point, const MultiIndex& alpha) const;
    const Rational& value_at_slot(std::size_t point, std::size_t slot) const { return values_[point][slot]; }
    void set(std::size_t point, const MultiIndex& alpha, const Rational& v);
    void set_at_slot(std::size_t point, std::size_t slot, const Rational& v) { values_[point][slot] = v; }

    /// Whole coefficient table of one point, basis order.
    const std::vector<Rational>& table(std::size_t point) const { return values_[point]; }

    bool same_shape(const JetField& o) const { return order_ == o.order_ && cloud_ == o.cloud_; }

private:
    PointCloud cloud_;
    std::uint32_t order_;
    std::vector<MultiIndex> basis_;
    std::vector<std::vector<Rational>> values_;
};

/// J^m(f) on X: F_alpha(x) = (d^alpha f)(x), via the symbolic oracle.
JetField jet_of_poly(const Polynomial& f, const PointCloud& X, std::uint32_t m, Exec exec = Exec::parallel);

JetField jet_add(const JetField& a, const JetField& b);
JetField jet_sub(const JetField& a, const JetField& b);
JetField jet_scale(const JetField& a, const Rational& c);

/// Leibniz product (EF)_alpha = sum_{beta <= alpha} C(alpha,beta) E_beta
/// F_{alpha-beta}. The binomial weights make jets of products equal products
/// of jets under the derivative convention.
JetField jet_mul(const JetField& e, const JetField& f, Exec exec = Exec::parallel);

/// Index shift (d^beta F)_alpha = F_{alpha+beta}; drops the order by |beta|.
JetField jet_diff(const JetField& f, const MultiIndex& beta);

/// Truncation to order k <= m (identity on stored coefficients).
JetField jet_truncate(const JetField& f, std::uint32_t k);

/// Degree-k Taylor polynomial at cloud point a:
///   sum_{|alpha| <= k} F_alpha(a) (x - a)^alpha / alpha!.
Polynomial taylor_poly(const JetField& f, std::size_t a, std::uint32_t k);
Polynomial taylor_poly(const JetField& f, std::span<const Rational> a, std::uint32_t k, const Tolerance& tol);

/// R_a^k F = (F truncated to k) - J^k(T_a^k F), over the whole cloud.
JetField remainder_field(const JetField& f, std::size_t a, std::uint32_t k);

/// max over x in K, |alpha| <= k of |F_alpha(x)|. K holds point indices.
double seminorm_sup(const JetField& f, std::span<const std::size_t> K, std::uint32_t k);

struct WhitneyReport {
    double sup = 0;
    double quotient_sup = 0;
    double total = 0;
    // argmax of the quotient part, for diagnostics
    std::size_t arg_x = 0, arg_y = 0;
    MultiIndex arg_alpha;
};

/// Whitney seminorm over K: sup part plus the remainder difference quotients
///   max_{x != y in K, |alpha| <= k} |(R_x^k F)_alpha(y)| / |x-y|^(k-|alpha|).
/// With |K| < 2 the quotient part is 0.
WhitneyReport whitney_seminorm(const JetField& f, std::span<const std::size_t> K, std::uint32_t k,
                               Exec exec = Exec::parallel);

/// Vector-field action xi F = sum_i J^{m-1}(xi_i) * d_i F; drops one order.
/// xi is given by its coefficient polynomials (a map R^n -> R^n).
JetField vf_apply(const PolyMap& xi, const JetField& f, Exec exec = Exec::parallel);

/// Restriction to a sub-cloud: every point of Y must occur in f's cloud.
JetField restrict_field(const JetField& f, const PointCloud& Y, const Tolerance& tol);
JetField restrict_to_indices(const JetField& f, std::span<const std::size_t> indices);

struct FieldDeviation {
    bool equal = true;       // under the tolerance used
    double max_abs = 0;      // largest |difference|
    std::size_t point = 0;   // location of the largest difference
    MultiIndex alpha;
};

/// Compares coefficient tables of two same-shape fields.
FieldDeviation compare_fields(const JetField& a, const JetField& b, const Tolerance& tol);

} // namespace whitney
