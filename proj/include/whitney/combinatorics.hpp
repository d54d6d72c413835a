#pragma once

#include <functional>
#include <map>
#include <vector>

#include "whitney/multiindex.hpp"
#include "whitney/rational.hpp"

namespace whitney {

/// Partition of {1,...,l} into disjoint nonempty blocks. Canonical form:
/// elements ascending within each block, blocks ordered by smallest element.
struct SetPartition {
    std::vector<std::vector<int>> blocks;

    std::size_t block_count() const { return blocks.size(); }
};

/// Hard cap on partition / lambda enumeration sizes: Bell numbers explode
/// past this and callers should never silently hang.
inline constexpr int kEnumerationBound = 12;

/// All partitions of {1,...,l} in canonical form, enumerated via restricted
/// growth strings (deterministic order). Pre: 1 <= l <= kEnumerationBound.
std::vector<SetPartition> set_partitions(int l);

/// Number of partitions of {1,...,l} into exactly k blocks. Returns 0 for
/// k > l. Pre: l >= 1, k >= 1.
Integer stirling2(int l, int k);

/// B_l = sum over k of stirling2(l, k).
Integer bell_number(int l);

/// One solution lambda of sum_{i,alpha} lambda_{i,alpha} * alpha = beta,
/// where i ranges over target components 0..m-1 and alpha over nonzero
/// multiindices in N^n. Stores the nonzero entries plus the cached data the
/// composition formula consumes.
struct LambdaSolution {
    struct Entry {
        std::size_t component;      // i
        MultiIndex alpha;           // nonzero multiindex in N^n
        std::uint32_t multiplicity; // lambda_{i,alpha} >= 1
    };
    std::vector<Entry> support;   // sorted by (component, alpha)
    Integer lambda_factorial;     // prod lambda_{i,alpha}!
    MultiIndex column_sums;       // sum_alpha lambda_alpha, a multiindex in N^m
    MultiIndex weight;            // sum lambda_{i,alpha} * alpha = beta
};

/// All solutions for the target beta (length n) with m components,
/// enumerated deterministically. Pre: |beta| <= kEnumerationBound.
std::vector<LambdaSolution> lambda_solutions(std::size_t n, std::size_t m, const MultiIndex& beta);

/// Same enumeration restricted to pairs (i, alpha) accepted by the
/// predicate. Used to skip entries whose derivative factor is identically
/// zero; the unrestricted overload is candidate(i, alpha) == true.
std::vector<LambdaSolution> lambda_solutions(
    std::size_t n, std::size_t m, const MultiIndex& beta,
    const std::function<bool(std::size_t, const MultiIndex&)>& candidate);

/// Truncated formal series in n variables: coefficients on |alpha| <= k,
/// absent keys are zero.
using Series = std::map<MultiIndex, Rational>;

/// Coefficients of (sum a_alpha x^alpha)^b up to total degree k, by the
/// multinomial expansion over distributions nu with sum nu_alpha = b.
Series multinomial_series_power(const Series& a, std::uint32_t b, std::uint32_t k, std::size_t n);

/// Truncated product of two series (the independent check for the power).
Series series_truncated_mul(const Series& a, const Series& b, std::uint32_t k, std::size_t n);

} // namespace whitney
