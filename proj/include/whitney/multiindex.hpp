#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

/// Exponent vector in N^n. Ordering is graded lexicographic (total degree
/// first, then lexicographic), which fixes the canonical enumeration order
/// everywhere in the library.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint32_t> exponents) : e_(std::move(exponents)) {}

    static MultiIndex zero(std::size_t n) { return MultiIndex(std::vector<std::uint32_t>(n, 0)); }
    static MultiIndex unit(std::size_t n, std::size_t i);

    std::size_t size() const { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    std::uint32_t& operator[](std::size_t i) { return e_[i]; }
    const std::vector<std::uint32_t>& exponents() const { return e_; }

    /// |alpha| = sum of entries.
    std::uint32_t norm() const;
    /// alpha! = product of entry factorials.
    Integer factorial() const;

    bool is_zero() const { return norm() == 0; }
    /// Componentwise partial order.
    bool leq(const MultiIndex& other) const;

    MultiIndex operator+(const MultiIndex& other) const;
    /// Pre: other.leq(*this).
    MultiIndex operator-(const MultiIndex& other) const;
    MultiIndex scaled(std::uint32_t k) const;

    bool operator==(const MultiIndex& other) const { return e_ == other.e_; }
    std::strong_ordering operator<=>(const MultiIndex& other) const;

    std::string str() const; // "(a1,...,an)"

private:
    std::vector<std::uint32_t> e_;
};

/// Product of componentwise binomials C(alpha_i, beta_i). Pre: beta.leq(alpha).
Integer binomial_product(const MultiIndex& alpha, const MultiIndex& beta);

/// All alpha in N^n with |alpha| = k, in graded-lex order.
std::vector<MultiIndex> multi_indices_of_norm(std::size_t n, std::uint32_t k);

/// All alpha in N^n with |alpha| <= m, in graded-lex order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t n, std::uint32_t m);

Integer factorial(std::uint32_t k);

} // namespace whitney
