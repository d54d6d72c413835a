#pragma once

#include <map>
#include <span>
#include <vector>

#include "whitney/multiindex.hpp"
#include "whitney/rational.hpp"

namespace whitney {

class PolyMap;

/// Sparse multivariate polynomial over the rationals. Terms map exponent
/// vectors to nonzero coefficients; this is the representation of every
/// smooth map in the library and the symbolic differentiation oracle.
class Polynomial {
public:
    explicit Polynomial(std::size_t dim) : dim_(dim) {}

    static Polynomial constant(std::size_t dim, const Rational& c);
    static Polynomial variable(std::size_t dim, std::size_t i);
    static Polynomial monomial(const MultiIndex& alpha, const Rational& c);

    std::size_t dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint32_t degree() const; // 0 for the zero polynomial
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    Rational coeff(const MultiIndex& alpha) const;
    void add_term(const MultiIndex& alpha, const Rational& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial pow(std::uint32_t k) const;

    bool operator==(const Polynomial& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

    Rational eval(std::span<const Rational> x) const;
    double eval_double(std::span<const double> x) const;

    /// Exact partial derivative of order beta.
    Polynomial derivative(const MultiIndex& beta) const;

    /// Substitution: this in m variables, phi maps R^n -> R^m; result in n
    /// variables. Exact.
    Polynomial compose(const PolyMap& phi) const;

private:
    std::size_t dim_;
    std::map<MultiIndex, Rational> terms_;
};

/// Polynomial map R^n -> R^m given by m component polynomials in n variables.
class PolyMap {
public:
    PolyMap(std::size_t domain_dim, std::vector<Polynomial> components);

    static PolyMap identity(std::size_t n);
    /// Linear map x -> M x from a row-major m x n matrix.
    static PolyMap linear(std::size_t rows, std::size_t cols, std::span<const Rational> row_major);

    std::size_t domain_dim() const { return domain_dim_; }
    std::size_t target_dim() const { return components_.size(); }
    const Polynomial& component(std::size_t j) const { return components_[j]; }
    const std::vector<Polynomial>& components() const { return components_; }

    Point eval(std::span<const Rational> x) const;
    /// (this o inner): first apply inner, then this.
    PolyMap compose(const PolyMap& inner) const;

    /// Entry (j, i) is the exact partial of component j by variable i.
    std::vector<std::vector<Polynomial>> jacobian() const;

private:
    std::size_t domain_dim_;
    std::vector<Polynomial> components_;
};

/// Exact rank of a matrix of rationals by Gaussian elimination.
int rational_matrix_rank(std::vector<std::vector<Rational>> m);

/// Max over `trials` seeded random rational sample points of the exact rank
/// of the evaluated Jacobian. Numerators are drawn from [-1000, 1000] and
/// denominators from [1, 100].
int generic_rank(const PolyMap& phi, int trials, std::uint64_t seed);

} // namespace whitney
