#include "whitney/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace whitney {

namespace {

/// Per-call table of evaluated map derivatives: value(x, alpha_slot, i) =
/// (d^alpha phi^i)(x). Built before the parallel fan-out, read-only after.
struct DerivativeCache {
    std::vector<MultiIndex> alphas; // |alpha| <= m, graded-lex
    std::vector<std::vector<bool>> zero_poly; // [slot][i]: component derivative vanishes identically
    std::vector<std::vector<std::vector<Rational>>> values; // [x][slot][i]

    std::size_t slot(const MultiIndex& alpha) const {
        auto it = std::lower_bound(alphas.begin(), alphas.end(), alpha);
        return static_cast<std::size_t>(it - alphas.begin());
    }
};

DerivativeCache build_cache(const PolyMap& phi, const PointCloud& X, std::uint32_t m, Exec exec) {
    DerivativeCache cache;
    cache.alphas = multi_indices_up_to(phi.domain_dim(), m);
    std::size_t p = phi.target_dim();
    std::vector<std::vector<Polynomial>> polys(cache.alphas.size());
    cache.zero_poly.assign(cache.alphas.size(), std::vector<bool>(p, false));
    for (std::size_t s = 0; s < cache.alphas.size(); ++s) {
        polys[s].reserve(p);
        for (std::size_t i = 0; i < p; ++i) {
            polys[s].push_back(phi.component(i).derivative(cache.alphas[s]));
            cache.zero_poly[s][i] = polys[s][i].is_zero();
        }
    }
    cache.values.assign(X.size(), {});
    detail::for_each_index(exec, X.size(), [&](std::size_t x) {
        auto& row = cache.values[x];
        row.assign(cache.alphas.size(), std::vector<Rational>(p, Rational(0)));
        for (std::size_t s = 0; s < cache.alphas.size(); ++s)
            for (std::size_t i = 0; i < p; ++i)
                if (!cache.zero_poly[s][i]) row[s][i] = polys[s][i].eval(X.point(x));
    });
    return cache;
}

void check_plan_field(const PullbackPlan& plan, const JetField& F, std::uint32_t m) {
    if (!(F.cloud() == plan.target)) throw domain_error("jet field does not live on the plan's target cloud");
    if (F.order() < m)
        throw domain_error("pullback order " + std::to_string(m) + " exceeds field order " +
                           std::to_string(F.order()));
}

} // namespace

PullbackPlan make_plan(const PolyMap& phi, const PointCloud& X, const PointCloud& Y, const Tolerance& tol) {
    if (phi.domain_dim() != X.dim()) throw dimension_mismatch("map domain and source cloud disagree");
    if (phi.target_dim() != Y.dim()) throw dimension_mismatch("map target and target cloud disagree");
    PullbackPlan plan{phi, X, Y, {}, tol};
    plan.match.reserve(X.size());
    for (std::size_t x = 0; x < X.size(); ++x) {
        Point img = phi.eval(X.point(x));
        auto idx = Y.find(img, tol);
        if (!idx) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t y = 0; y < Y.size(); ++y) best = std::min(best, distance(img, Y.point(y)));
            std::string coords;
            for (std::size_t i = 0; i < img.size(); ++i)
                coords += (i ? "," : "") + format_rational(img[i]);
            throw unmatched_point("phi(x_" + std::to_string(x) + ") = (" + coords +
                                  ") has no target match; min distance " + format_double17(best));
        }
        plan.match.push_back(*idx);
    }
    return plan;
}

JetField pullback_multi(const PullbackPlan& plan, const JetField& F, std::uint32_t m, Exec exec) {
    check_plan_field(plan, F, m);
    std::size_t n = plan.source.dim(), p = plan.target.dim();
    DerivativeCache cache = build_cache(plan.map, plan.source, m, exec);

    JetField out(plan.source, m);
    const auto& basis = out.basis();

    // Point-independent data per beta: the solution list (restricted to
    // derivative factors that are not identically zero) with precomputed
    // rational prefactors beta!/lambda! / prod (alpha!)^mult.
    struct PreparedSolution {
        Rational prefactor;
        std::size_t f_slot; // slot of sum_alpha lambda_alpha in F's basis
        std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> factors; // (alpha slot, i, mult)
    };
    std::vector<std::vector<PreparedSolution>> prepared(basis.size());
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const MultiIndex& beta = basis[s];
        auto solutions = lambda_solutions(n, p, beta, [&](std::size_t i, const MultiIndex& alpha) {
            return !cache.zero_poly[cache.slot(alpha)][i];
        });
        for (const auto& lam : solutions) {
            PreparedSolution ps;
            Integer denom = lam.lambda_factorial;
            for (const auto& entry : lam.support) {
                Integer af = entry.alpha.factorial();
                for (std::uint32_t k = 0; k < entry.multiplicity; ++k) denom *= af;
                ps.factors.emplace_back(cache.slot(entry.alpha), entry.component, entry.multiplicity);
            }
            ps.prefactor = make_rational(beta.factorial(), denom);
            ps.f_slot = F.slot(lam.column_sums);
            prepared[s].push_back(std::move(ps));
        }
    }

    detail::for_each_index(exec, plan.source.size(), [&](std::size_t x) {
        std::size_t y = plan.match[x];
        for (std::size_t s = 0; s < basis.size(); ++s) {
            Rational acc = 0;
            for (const auto& ps : prepared[s]) {
                Rational term = ps.prefactor * F.value_at_slot(y, ps.f_slot);
                if (term == 0) continue;
                for (const auto& [aslot, i, mult] : ps.factors) {
                    const Rational& d = cache.values[x][aslot][i];
                    for (std::uint32_t k = 0; k < mult; ++k) term *= d;
                }
                acc += term;
            }
            out.set_at_slot(x, s, acc);
        }
    });
    return out;
}

std::vector<PullbackTerm> pullback_multi_terms(const PullbackPlan& plan, const JetField& F,
                                               const MultiIndex& beta, std::size_t x) {
    check_plan_field(plan, F, beta.norm());
    std::size_t n = plan.source.dim(), p = plan.target.dim();
    DerivativeCache cache = build_cache(plan.map, plan.source, beta.norm(), Exec::serial);
    std::vector<PullbackTerm> out;
    std::size_t y = plan.match[x];
    for (const auto& lam : lambda_solutions(n, p, beta)) {
        Integer denom = lam.lambda_factorial;
        Rational term(1);
        for (const auto& entry : lam.support) {
            Integer af = entry.alpha.factorial();
            const Rational& d = cache.values[x][cache.slot(entry.alpha)][entry.component];
            for (std::uint32_t k = 0; k < entry.multiplicity; ++k) {
                denom *= af;
                term *= d;
            }
        }
        term *= make_rational(beta.factorial(), denom);
        term *= F.value(y, lam.column_sums);
        out.push_back({lam.support, term});
    }
    return out;
}

JetField pullback_comb(const PullbackPlan& plan, const JetField& F, std::uint32_t m, Exec exec) {
    check_plan_field(plan, F, m);
    std::size_t p = plan.target.dim();
    if (m > static_cast<std::uint32_t>(kEnumerationBound))
        throw bound_exceeded("partition route limited to order " + std::to_string(kEnumerationBound));
    DerivativeCache cache = build_cache(plan.map, plan.source, m, exec);

    JetField out(plan.source, m);
    const auto& basis = out.basis();

    // Point-independent data per beta: for every partition of the derivative
    // slots, the multiindex of each block (through the canonical sequence of
    // coordinates realizing beta).
    struct PreparedPartition {
        std::vector<std::size_t> block_slots; // slot of each block's multiindex
    };
    std::vector<std::vector<PreparedPartition>> prepared(basis.size());
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const MultiIndex& beta = basis[s];
        std::uint32_t l = beta.norm();
        if (l == 0) continue;
        // canonical realizing sequence: coordinate i repeated beta_i times
        std::vector<std::size_t> seq;
        for (std::size_t i = 0; i < beta.size(); ++i)
            for (std::uint32_t k = 0; k < beta[i]; ++k) seq.push_back(i);
        for (const auto& part : set_partitions(static_cast<int>(l))) {
            PreparedPartition pp;
            for (const auto& block : part.blocks) {
                MultiIndex gamma = MultiIndex::zero(beta.size());
                for (int pos : block) gamma[seq[static_cast<std::size_t>(pos - 1)]] += 1;
                pp.block_slots.push_back(cache.slot(gamma));
            }
            prepared[s].push_back(std::move(pp));
        }
    }

    detail::for_each_index(exec, plan.source.size(), [&](std::size_t x) {
        std::size_t y = plan.match[x];
        for (std::size_t s = 0; s < basis.size(); ++s) {
            if (basis[s].is_zero()) {
                out.set_at_slot(x, s, F.value_at_slot(y, 0));
                continue;
            }
            Rational acc = 0;
            for (const auto& pp : prepared[s]) {
                std::size_t k = pp.block_slots.size();
                // odometer over assignments of a target coordinate to each block
                std::vector<std::size_t> assign(k, 0);
                while (true) {
                    Rational term(1);
                    MultiIndex delta = MultiIndex::zero(p);
                    for (std::size_t b = 0; b < k && term != 0; ++b) {
                        term *= cache.values[x][pp.block_slots[b]][assign[b]];
                        delta[assign[b]] += 1;
                    }
                    if (term != 0) acc += term * F.value(y, delta);
                    // advance
                    std::size_t b = 0;
                    while (b < k && ++assign[b] == p) {
                        assign[b] = 0;
                        ++b;
                    }
                    if (b == k) break;
                }
            }
            out.set_at_slot(x, s, acc);
        }
    });
    return out;
}

PointCloud image_cloud(const PolyMap& phi, const PointCloud& X, const Tolerance& tol) {
    std::vector<Point> pts;
    for (std::size_t x = 0; x < X.size(); ++x) {
        Point img = phi.eval(X.point(x));
        bool seen = false;
        for (const auto& q : pts)
            if (points_equal(q, img, tol)) {
                seen = true;
                break;
            }
        if (!seen) pts.push_back(std::move(img));
    }
    return PointCloud(phi.target_dim(), std::move(pts), tol);
}

CommutativityReport check_commutativity(const Polynomial& f, const PolyMap& phi, const PointCloud& X,
                                        std::uint32_t m, const Tolerance& tol) {
    if (f.dim() != phi.target_dim()) throw dimension_mismatch("f must live on the map's target space");
    PointCloud Y = image_cloud(phi, X, tol);
    PullbackPlan plan = make_plan(phi, X, Y, tol);
    JetField F = jet_of_poly(f, Y, m);
    JetField lhs = pullback_multi(plan, F, m);
    JetField rhs = jet_of_poly(f.compose(phi), X, m);
    FieldDeviation dev = compare_fields(lhs, rhs, tol);
    CommutativityReport rep;
    rep.ok = dev.equal;
    rep.max_deviation = dev.max_abs;
    rep.point = dev.point;
    rep.alpha = dev.alpha;
    return rep;
}

} // namespace whitney
