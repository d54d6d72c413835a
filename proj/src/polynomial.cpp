#include "whitney/polynomial.hpp"

#include <algorithm>

namespace whitney {

Polynomial Polynomial::constant(std::size_t dim, const Rational& c) {
    Polynomial p(dim);
    p.add_term(MultiIndex::zero(dim), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t i) {
    Polynomial p(dim);
    p.add_term(MultiIndex::unit(dim, i), 1);
    return p;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, const Rational& c) {
    Polynomial p(alpha.size());
    p.add_term(alpha, c);
    return p;
}

std::uint32_t Polynomial::degree() const {
    std::uint32_t d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.norm());
    return d;
}

Rational Polynomial::coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const MultiIndex& alpha, const Rational& c) {
    if (alpha.size() != dim_) throw dimension_mismatch("term exponent has wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (dim_ != o.dim_) throw dimension_mismatch("polynomial dimensions differ");
    Polynomial r = *this;
    for (const auto& [alpha, c] : o.terms_) r.add_term(alpha, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    Polynomial r(dim_);
    for (const auto& [alpha, c] : terms_) r.terms_.emplace(alpha, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (dim_ != o.dim_) throw dimension_mismatch("polynomial dimensions differ");
    Polynomial r(dim_);
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) r.add_term(a + b, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(dim_);
    if (c == 0) return r;
    for (const auto& [alpha, ca] : terms_) r.terms_.emplace(alpha, ca * c);
    return r;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
    Polynomial r = constant(dim_, 1);
    for (std::uint32_t i = 0; i < k; ++i) r = r * *this;
    return r;
}

Rational Polynomial::eval(std::span<const Rational> x) const {
    if (x.size() != dim_) throw dimension_mismatch("evaluation point has wrong dimension");
    // Memoized variable powers.
    std::vector<std::vector<Rational>> powers(dim_);
    for (std::size_t i = 0; i < dim_; ++i) powers[i].push_back(1);
    auto var_pow = [&](std::size_t i, std::uint32_t k) -> const Rational& {
        auto& table = powers[i];
        while (table.size() <= k) table.push_back(table.back() * x[i]);
        return table[k];
    };
    Rational s = 0;
    for (const auto& [alpha, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < dim_; ++i)
            if (alpha[i] > 0) t *= var_pow(i, alpha[i]);
        s += t;
    }
    return s;
}

double Polynomial::eval_double(std::span<const double> x) const {
    if (x.size() != dim_) throw dimension_mismatch("evaluation point has wrong dimension");
    double s = 0;
    for (const auto& [alpha, c] : terms_) {
        double t = to_double(c);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::uint32_t k = 0; k < alpha[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

Polynomial Polynomial::derivative(const MultiIndex& beta) const {
    if (beta.size() != dim_) throw dimension_mismatch("derivative order has wrong length");
    Polynomial r(dim_);
    for (const auto& [alpha, c] : terms_) {
        if (!beta.leq(alpha)) continue;
        // Falling factorial prod alpha_i (alpha_i-1) ... (alpha_i-beta_i+1).
        Integer f = 1;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::uint32_t k = 0; k < beta[i]; ++k) f *= (alpha[i] - k);
        r.add_term(alpha - beta, c * Rational(f));
    }
    return r;
}

Polynomial Polynomial::compose(const PolyMap& phi) const {
    if (dim_ != phi.target_dim()) throw dimension_mismatch("compose: arity mismatch");
    std::size_t n = phi.domain_dim();
    // Memoized component powers.
    std::vector<std::vector<Polynomial>> powers(dim_);
    for (std::size_t j = 0; j < dim_; ++j) powers[j].push_back(Polynomial::constant(n, 1));
    auto comp_pow = [&](std::size_t j, std::uint32_t k) -> const Polynomial& {
        auto& table = powers[j];
        while (table.size() <= k) table.push_back(table.back() * phi.component(j));
        return table[k];
    };
    Polynomial r(n);
    for (const auto& [alpha, c] : terms_) {
        Polynomial t = Polynomial::constant(n, c);
        for (std::size_t j = 0; j < dim_; ++j)
            if (alpha[j] > 0) t = t * comp_pow(j, alpha[j]);
        r = r + t;
    }
    return r;
}

PolyMap::PolyMap(std::size_t domain_dim, std::vector<Polynomial> components)
    : domain_dim_(domain_dim), components_(std::move(components)) {
    for (const auto& p : components_)
        if (p.dim() != domain_dim_) throw dimension_mismatch("map components disagree on dimension");
}

PolyMap PolyMap::identity(std::size_t n) {
    std::vector<Polynomial> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(Polynomial::variable(n, i));
    return PolyMap(n, std::move(c));
}

PolyMap PolyMap::linear(std::size_t rows, std::size_t cols, std::span<const Rational> row_major) {
    if (row_major.size() != rows * cols) throw dimension_mismatch("matrix size mismatch");
    std::vector<Polynomial> c;
    c.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        Polynomial p(cols);
        for (std::size_t j = 0; j < cols; ++j) p.add_term(MultiIndex::unit(cols, j), row_major[r * cols + j]);
        c.push_back(std::move(p));
    }
    return PolyMap(cols, std::move(c));
}

Point PolyMap::eval(std::span<const Rational> x) const {
    Point y;
    y.reserve(components_.size());
    for (const auto& p : components_) y.push_back(p.eval(x));
    return y;
}

PolyMap PolyMap::compose(const PolyMap& inner) const {
    if (domain_dim_ != inner.target_dim()) throw dimension_mismatch("map composition arity mismatch");
    std::vector<Polynomial> c;
    c.reserve(components_.size());
    for (const auto& p : components_) c.push_back(p.compose(inner));
    return PolyMap(inner.domain_dim(), std::move(c));
}

std::vector<std::vector<Polynomial>> PolyMap::jacobian() const {
    std::vector<std::vector<Polynomial>> m;
    m.reserve(components_.size());
    for (const auto& p : components_) {
        std::vector<Polynomial> row;
        row.reserve(domain_dim_);
        for (std::size_t i = 0; i < domain_dim_; ++i) row.push_back(p.derivative(MultiIndex::unit(domain_dim_, i)));
        m.push_back(std::move(row));
    }
    return m;
}

int rational_matrix_rank(std::vector<std::vector<Rational>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[row]);
        for (std::size_t r = row + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[row][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

int generic_rank(const PolyMap& phi, int trials, std::uint64_t seed) {
    if (trials < 1) throw domain_error("generic_rank requires trials >= 1");
    auto jac = phi.jacobian();
    Rng rng(seed);
    int best = 0;
    for (int t = 0; t < trials; ++t) {
        Point x;
        x.reserve(phi.domain_dim());
        for (std::size_t i = 0; i < phi.domain_dim(); ++i) x.push_back(rng.next_rational(1000, 100));
        std::vector<std::vector<Rational>> m;
        m.reserve(jac.size());
        for (const auto& row : jac) {
            std::vector<Rational> vals;
            vals.reserve(row.size());
            for (const auto& p : row) vals.push_back(p.eval(x));
            m.push_back(std::move(vals));
        }
        best = std::max(best, rational_matrix_rank(std::move(m)));
    }
    return best;
}

} // namespace whitney
