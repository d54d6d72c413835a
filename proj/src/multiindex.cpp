#include "whitney/multiindex.hpp"

namespace whitney {

Integer factorial(std::uint32_t k) {
    Integer r = 1;
    for (std::uint32_t i = 2; i <= k; ++i) r *= i;
    return r;
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
    MultiIndex a = zero(n);
    a.e_[i] = 1;
    return a;
}

std::uint32_t MultiIndex::norm() const {
    std::uint32_t s = 0;
    for (auto v : e_) s += v;
    return s;
}

Integer MultiIndex::factorial() const {
    Integer r = 1;
    for (auto v : e_) r *= whitney::factorial(v);
    return r;
}

bool MultiIndex::leq(const MultiIndex& other) const {
    if (e_.size() != other.e_.size()) throw dimension_mismatch("multiindex length mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > other.e_[i]) return false;
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    if (e_.size() != other.e_.size()) throw dimension_mismatch("multiindex length mismatch");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += other.e_[i];
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
    if (!other.leq(*this)) throw domain_error("multiindex subtraction would go negative");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= other.e_[i];
    return r;
}

MultiIndex MultiIndex::scaled(std::uint32_t k) const {
    MultiIndex r = *this;
    for (auto& v : r.e_) v *= k;
    return r;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
    if (auto c = e_.size() <=> other.e_.size(); c != 0) return c;
    if (auto c = norm() <=> other.norm(); c != 0) return c;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (auto c = e_[i] <=> other.e_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e_[i]);
    }
    return s + ")";
}

Integer binomial_product(const MultiIndex& alpha, const MultiIndex& beta) {
    if (!beta.leq(alpha)) return 0;
    Integer r = 1;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), alpha[i], beta[i]);
        r *= b;
    }
    return r;
}

namespace {

void enumerate_of_norm(std::size_t n, std::uint32_t k, std::size_t pos, MultiIndex& cur,
                       std::vector<MultiIndex>& out) {
    if (pos + 1 == n) {
        cur[pos] = k;
        out.push_back(cur);
        return;
    }
    // Lexicographic: highest first in the leading slot would be descending;
    // graded-lex ascending wants smaller leading entries later, so iterate
    // the leading exponent from k down to 0? Graded-lex compares entry 0
    // first: (0,2) < (1,1) < (2,0). Ascend by growing the leading entry.
    for (std::uint32_t v = 0; v <= k; ++v) {
        cur[pos] = v;
        enumerate_of_norm(n, k - v, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<MultiIndex> multi_indices_of_norm(std::size_t n, std::uint32_t k) {
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (k == 0) out.push_back(MultiIndex::zero(0));
        return out;
    }
    MultiIndex cur = MultiIndex::zero(n);
    enumerate_of_norm(n, k, 0, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t n, std::uint32_t m) {
    std::vector<MultiIndex> out;
    for (std::uint32_t k = 0; k <= m; ++k) {
        auto level = multi_indices_of_norm(n, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace whitney
