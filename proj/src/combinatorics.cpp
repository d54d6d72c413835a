#include "whitney/combinatorics.hpp"

#include <algorithm>

namespace whitney {

std::vector<SetPartition> set_partitions(int l) {
    if (l < 1 || l > kEnumerationBound)
        throw bound_exceeded("set_partitions requires 1 <= l <= " + std::to_string(kEnumerationBound) +
                             ", got " + std::to_string(l));
    std::vector<SetPartition> out;
    // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
    std::vector<int> a(static_cast<std::size_t>(l), 0);
    std::vector<int> maxes(static_cast<std::size_t>(l), 0);

    auto emit = [&]() {
        int k = *std::max_element(a.begin(), a.end()) + 1;
        SetPartition p;
        p.blocks.assign(static_cast<std::size_t>(k), {});
        for (int i = 0; i < l; ++i) p.blocks[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])].push_back(i + 1);
        out.push_back(std::move(p));
    };

    // Iterative lexicographic enumeration of growth strings.
    if (l == 1) {
        emit();
        return out;
    }
    while (true) {
        emit();
        // advance
        int i = l - 1;
        while (i > 0) {
            int cap = maxes[static_cast<std::size_t>(i - 1)] + 1;
            if (a[static_cast<std::size_t>(i)] < cap) {
                a[static_cast<std::size_t>(i)] += 1;
                maxes[static_cast<std::size_t>(i)] =
                    std::max(maxes[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
                for (int j = i + 1; j < l; ++j) {
                    a[static_cast<std::size_t>(j)] = 0;
                    maxes[static_cast<std::size_t>(j)] = maxes[static_cast<std::size_t>(i)];
                }
                break;
            }
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

Integer stirling2(int l, int k) {
    if (l < 1 || k < 1) throw domain_error("stirling2 requires positive arguments");
    if (k > l) return 0;
    // S(l,k) = k*S(l-1,k) + S(l-1,k-1), S(1,1) = 1.
    std::vector<Integer> row(static_cast<std::size_t>(l) + 1, 0);
    row[1] = 1;
    for (int n = 2; n <= l; ++n)
        for (int j = std::min(n, k); j >= 1; --j)
            row[static_cast<std::size_t>(j)] = j * row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j - 1)];
    return row[static_cast<std::size_t>(k)];
}

Integer bell_number(int l) {
    Integer b = 0;
    for (int k = 1; k <= l; ++k) b += stirling2(l, k);
    return b;
}

namespace {

struct LambdaEnumerator {
    std::size_t n, m;
    std::vector<std::pair<std::size_t, MultiIndex>> candidates; // sorted by (component, alpha)
    std::vector<LambdaSolution::Entry> chosen;
    std::vector<LambdaSolution>* out;

    void recurse(std::size_t pos, MultiIndex remaining) {
        if (remaining.is_zero()) {
            LambdaSolution s;
            s.support = chosen;
            s.lambda_factorial = 1;
            s.column_sums = MultiIndex::zero(m);
            s.weight = MultiIndex::zero(n);
            for (const auto& e : s.support) {
                s.lambda_factorial *= factorial(e.multiplicity);
                s.column_sums[e.component] += e.multiplicity;
                s.weight = s.weight + e.alpha.scaled(e.multiplicity);
            }
            out->push_back(std::move(s));
            return;
        }
        if (pos == candidates.size()) return;
        const auto& [comp, alpha] = candidates[pos];
        // multiplicity 0 first, then 1, 2, ... while alpha still fits.
        recurse(pos + 1, remaining);
        MultiIndex rest = remaining;
        std::uint32_t mult = 0;
        while (alpha.leq(rest)) {
            rest = rest - alpha;
            ++mult;
            chosen.push_back({comp, alpha, mult});
            recurse(pos + 1, rest);
            chosen.pop_back();
        }
    }
};

} // namespace

std::vector<LambdaSolution> lambda_solutions(std::size_t n, std::size_t m, const MultiIndex& beta) {
    return lambda_solutions(n, m, beta, [](std::size_t, const MultiIndex&) { return true; });
}

std::vector<LambdaSolution> lambda_solutions(
    std::size_t n, std::size_t m, const MultiIndex& beta,
    const std::function<bool(std::size_t, const MultiIndex&)>& candidate) {
    if (beta.size() != n) throw dimension_mismatch("beta has wrong length");
    if (beta.norm() > kEnumerationBound)
        throw bound_exceeded("lambda_solutions requires |beta| <= " + std::to_string(kEnumerationBound) +
                             ", got " + std::to_string(beta.norm()));

    LambdaEnumerator en;
    en.n = n;
    en.m = m;
    std::vector<LambdaSolution> out;
    en.out = &out;
    // Every alpha in the support satisfies 0 < alpha <= beta componentwise.
    for (std::size_t i = 0; i < m; ++i)
        for (std::uint32_t k = 1; k <= beta.norm(); ++k)
            for (const auto& alpha : multi_indices_of_norm(n, k))
                if (alpha.leq(beta) && candidate(i, alpha)) en.candidates.emplace_back(i, alpha);
    en.recurse(0, beta);
    return out;
}

Series multinomial_series_power(const Series& a, std::uint32_t b, std::uint32_t k, std::size_t n) {
    // Support list, truncated to the requested order.
    std::vector<std::pair<MultiIndex, Rational>> supp;
    for (const auto& [alpha, c] : a) {
        if (alpha.size() != n) throw dimension_mismatch("series term has wrong dimension");
        if (alpha.norm() <= k && c != 0) supp.emplace_back(alpha, c);
    }
    Series out;
    // Distribute b among the support terms: coefficient b! * prod a^nu / nu!.
    std::function<void(std::size_t, std::uint32_t, MultiIndex, Rational)> go =
        [&](std::size_t pos, std::uint32_t left, MultiIndex expo, Rational coeff) {
            if (expo.norm() > k) return;
            if (left == 0) {
                Rational& slot = out[expo];
                slot += coeff;
                if (slot == 0) out.erase(expo);
                return;
            }
            if (pos == supp.size()) return;
            const auto& [alpha, c] = supp[pos];
            Rational term = coeff;
            MultiIndex e = expo;
            for (std::uint32_t nu = 0; nu <= left; ++nu) {
                if (nu > 0) {
                    term *= c;
                    term /= nu; // running prod c^nu / nu!
                    e = e + alpha;
                    if (e.norm() > k) break;
                }
                go(pos + 1, left - nu, e, term);
            }
        };
    go(0, b, MultiIndex::zero(n), Rational(factorial(b)));
    return out;
}

Series series_truncated_mul(const Series& a, const Series& b, std::uint32_t k, std::size_t n) {
    Series out;
    for (const auto& [alpha, ca] : a) {
        if (alpha.norm() > k) continue;
        for (const auto& [beta, cb] : b) {
            if (alpha.norm() + beta.norm() > k) continue;
            MultiIndex g = alpha + beta;
            Rational& slot = out[g];
            slot += ca * cb;
            if (slot == 0) out.erase(g);
        }
    }
    (void)n;
    return out;
}

} // namespace whitney
