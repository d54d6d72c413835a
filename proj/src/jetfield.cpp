#include "whitney/jetfield.hpp"

#include <algorithm>
#include <cmath>

namespace whitney {

JetField::JetField(PointCloud cloud, std::uint32_t order)
    : cloud_(std::move(cloud)), order_(order), basis_(multi_indices_up_to(cloud_.dim(), order)) {
    values_.assign(cloud_.size(), std::vector<Rational>(basis_.size(), Rational(0)));
}

std::size_t JetField::slot(const MultiIndex& alpha) const {
    // basis_ is sorted in graded-lex order
    auto it = std::lower_bound(basis_.begin(), basis_.end(), alpha);
    if (it == basis_.end() || !(*it == alpha))
        throw domain_error("multiindex " + alpha.str() + " outside jet order " + std::to_string(order_));
    return static_cast<std::size_t>(it - basis_.begin());
}

const Rational& JetField::value(std::size_t point, const MultiIndex& alpha) const {
    return values_[point][slot(alpha)];
}

void JetField::set(std::size_t point, const MultiIndex& alpha, const Rational& v) {
    values_[point][slot(alpha)] = v;
}

JetField jet_of_poly(const Polynomial& f, const PointCloud& X, std::uint32_t m, Exec exec) {
    if (f.dim() != X.dim()) throw dimension_mismatch("polynomial and cloud dimensions differ");
    JetField out(X, m);
    // Symbolic derivatives once, point evaluation fanned out.
    std::vector<Polynomial> derivs;
    derivs.reserve(out.basis().size());
    for (const auto& alpha : out.basis()) derivs.push_back(f.derivative(alpha));
    detail::for_each_index(exec, X.size(), [&](std::size_t p) {
        for (std::size_t s = 0; s < out.basis().size(); ++s)
            out.set_at_slot(p, s, derivs[s].eval(X.point(p)));
    });
    return out;
}

JetField jet_add(const JetField& a, const JetField& b) {
    if (!a.same_shape(b)) throw dimension_mismatch("jet fields have different shape");
    JetField out(a.cloud(), a.order());
    for (std::size_t p = 0; p < a.cloud().size(); ++p)
        for (std::size_t s = 0; s < a.basis().size(); ++s)
            out.set_at_slot(p, s, a.value_at_slot(p, s) + b.value_at_slot(p, s));
    return out;
}

JetField jet_sub(const JetField& a, const JetField& b) { return jet_add(a, jet_scale(b, Rational(-1))); }

JetField jet_scale(const JetField& a, const Rational& c) {
    JetField out(a.cloud(), a.order());
    for (std::size_t p = 0; p < a.cloud().size(); ++p)
        for (std::size_t s = 0; s < a.basis().size(); ++s) out.set_at_slot(p, s, a.value_at_slot(p, s) * c);
    return out;
}

JetField jet_mul(const JetField& e, const JetField& f, Exec exec) {
    if (!e.same_shape(f)) throw dimension_mismatch("jet product needs identical cloud and order");
    JetField out(e.cloud(), e.order());
    const auto& basis = out.basis();
    // Precompute the Leibniz expansion per alpha: (beta slot, gamma slot, binom).
    struct Term {
        std::size_t sb, sg;
        Integer binom;
    };
    std::vector<std::vector<Term>> expansion(basis.size());
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const auto& alpha = basis[s];
        for (std::size_t sb = 0; sb < basis.size(); ++sb) {
            const auto& beta = basis[sb];
            if (!beta.leq(alpha)) continue;
            MultiIndex gamma = alpha - beta;
            expansion[s].push_back({sb, out.slot(gamma), binomial_product(alpha, beta)});
        }
    }
    detail::for_each_index(exec, e.cloud().size(), [&](std::size_t p) {
        for (std::size_t s = 0; s < basis.size(); ++s) {
            Rational acc = 0;
            for (const auto& t : expansion[s])
                acc += Rational(t.binom) * e.value_at_slot(p, t.sb) * f.value_at_slot(p, t.sg);
            out.set_at_slot(p, s, acc);
        }
    });
    return out;
}

JetField jet_diff(const JetField& f, const MultiIndex& beta) {
    if (beta.size() != f.dim()) throw dimension_mismatch("derivative order has wrong length");
    if (beta.norm() > f.order())
        throw domain_error("jet_diff order |beta|=" + std::to_string(beta.norm()) + " exceeds jet order " +
                           std::to_string(f.order()));
    JetField out(f.cloud(), f.order() - beta.norm());
    for (std::size_t p = 0; p < f.cloud().size(); ++p)
        for (std::size_t s = 0; s < out.basis().size(); ++s)
            out.set_at_slot(p, s, f.value(p, out.basis()[s] + beta));
    return out;
}

JetField jet_truncate(const JetField& f, std::uint32_t k) {
    if (k > f.order()) throw domain_error("truncation order exceeds jet order");
    JetField out(f.cloud(), k);
    for (std::size_t p = 0; p < f.cloud().size(); ++p)
        for (std::size_t s = 0; s < out.basis().size(); ++s) out.set_at_slot(p, s, f.value(p, out.basis()[s]));
    return out;
}

Polynomial taylor_poly(const JetField& f, std::size_t a, std::uint32_t k) {
    if (a >= f.cloud().size()) throw domain_error("taylor base point index out of range");
    if (k > f.order()) throw domain_error("taylor order exceeds jet order");
    std::size_t n = f.dim();
    const Point& base = f.cloud().point(a);
    Polynomial out(n);
    for (const auto& alpha : multi_indices_up_to(n, k)) {
        Rational c = f.value(a, alpha);
        if (c == 0) continue;
        // (x - a)^alpha / alpha!
        Polynomial shifted = Polynomial::constant(n, c / Rational(alpha.factorial()));
        for (std::size_t i = 0; i < n; ++i)
            if (alpha[i] > 0)
                shifted = shifted * (Polynomial::variable(n, i) - Polynomial::constant(n, base[i])).pow(alpha[i]);
        out = out + shifted;
    }
    return out;
}

Polynomial taylor_poly(const JetField& f, std::span<const Rational> a, std::uint32_t k, const Tolerance& tol) {
    auto idx = f.cloud().find(a, tol);
    if (!idx) throw domain_error("taylor base point is not in the cloud");
    return taylor_poly(f, *idx, k);
}

JetField remainder_field(const JetField& f, std::size_t a, std::uint32_t k) {
    Polynomial taylor = taylor_poly(f, a, k);
    return jet_sub(jet_truncate(f, k), jet_of_poly(taylor, f.cloud(), k, Exec::serial));
}

double seminorm_sup(const JetField& f, std::span<const std::size_t> K, std::uint32_t k) {
    if (K.empty()) throw domain_error("seminorm over empty point set");
    if (k > f.order()) throw domain_error("seminorm order exceeds jet order");
    double best = 0;
    for (std::size_t x : K)
        for (const auto& alpha : f.basis()) {
            if (alpha.norm() > k) break; // graded order: done once past k
            best = std::max(best, std::fabs(to_double(f.value(x, alpha))));
        }
    return best;
}

WhitneyReport whitney_seminorm(const JetField& f, std::span<const std::size_t> K, std::uint32_t k, Exec exec) {
    WhitneyReport rep;
    rep.sup = seminorm_sup(f, K, k);
    rep.arg_alpha = MultiIndex::zero(f.dim());
    if (K.size() < 2) {
        rep.total = rep.sup;
        return rep;
    }
    // One remainder field per base point, then a pair scan. The remainder
    // fields are independent; the argmax scan is serial for determinism.
    std::vector<JetField> rem;
    rem.reserve(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) rem.push_back(JetField(f.cloud(), 0)); // placeholders
    detail::for_each_index(exec, K.size(), [&](std::size_t i) { rem[i] = remainder_field(f, K[i], k); });

    struct PairBest {
        double v = -1;
        MultiIndex alpha;
    };
    std::vector<PairBest> pair_best(K.size() * K.size());
    detail::for_each_index(exec, K.size() * K.size(), [&](std::size_t pair) {
        std::size_t i = pair / K.size(), j = pair % K.size();
        if (i == j) return;
        double dist = distance(f.cloud().point(K[i]), f.cloud().point(K[j]));
        PairBest best;
        for (const auto& alpha : rem[i].basis()) {
            double num = std::fabs(to_double(rem[i].value(K[j], alpha)));
            double q = num / std::pow(dist, static_cast<double>(k - alpha.norm()));
            if (q > best.v) {
                best.v = q;
                best.alpha = alpha;
            }
        }
        pair_best[pair] = std::move(best);
    });
    double best = -1;
    for (std::size_t pair = 0; pair < pair_best.size(); ++pair) {
        if (pair_best[pair].v > best) {
            best = pair_best[pair].v;
            rep.arg_x = K[pair / K.size()];
            rep.arg_y = K[pair % K.size()];
            rep.arg_alpha = pair_best[pair].alpha;
        }
    }
    rep.quotient_sup = std::max(best, 0.0);
    rep.total = rep.sup + rep.quotient_sup;
    return rep;
}

JetField vf_apply(const PolyMap& xi, const JetField& f, Exec exec) {
    std::size_t n = f.dim();
    if (xi.domain_dim() != n || xi.target_dim() != n)
        throw dimension_mismatch("vector field must have n components in n variables");
    if (f.order() == 0) throw domain_error("vector field action needs jet order >= 1");
    JetField out(f.cloud(), f.order() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        JetField coeff = jet_of_poly(xi.component(i), f.cloud(), f.order() - 1, exec);
        out = jet_add(out, jet_mul(coeff, jet_diff(f, MultiIndex::unit(n, i)), exec));
    }
    return out;
}

JetField restrict_field(const JetField& f, const PointCloud& Y, const Tolerance& tol) {
    if (Y.dim() != f.dim()) throw dimension_mismatch("restriction cloud has wrong dimension");
    std::vector<std::size_t> idx;
    idx.reserve(Y.size());
    for (std::size_t i = 0; i < Y.size(); ++i) {
        auto found = f.cloud().find(Y.point(i), tol);
        if (!found) throw domain_error("restriction point " + std::to_string(i) + " is not in the cloud");
        idx.push_back(*found);
    }
    JetField out(Y, f.order());
    for (std::size_t i = 0; i < Y.size(); ++i)
        for (std::size_t s = 0; s < f.basis().size(); ++s) out.set_at_slot(i, s, f.value_at_slot(idx[i], s));
    return out;
}

JetField restrict_to_indices(const JetField& f, std::span<const std::size_t> indices) {
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (std::size_t i : indices) pts.push_back(f.cloud().point(i));
    JetField out(PointCloud(f.dim(), std::move(pts)), f.order());
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t s = 0; s < f.basis().size(); ++s) out.set_at_slot(i, s, f.value_at_slot(indices[i], s));
    return out;
}

FieldDeviation compare_fields(const JetField& a, const JetField& b, const Tolerance& tol) {
    if (!a.same_shape(b)) throw dimension_mismatch("cannot compare fields of different shape");
    FieldDeviation dev;
    dev.alpha = MultiIndex::zero(a.dim());
    for (std::size_t p = 0; p < a.cloud().size(); ++p)
        for (std::size_t s = 0; s < a.basis().size(); ++s) {
            const Rational diff = a.value_at_slot(p, s) - b.value_at_slot(p, s);
            if (!tol.value_zero(diff)) dev.equal = false;
            double d = std::fabs(to_double(diff));
            if (d > dev.max_abs) {
                dev.max_abs = d;
                dev.point = p;
                dev.alpha = a.basis()[s];
            }
        }
    return dev;
}

} // namespace whitney
