#ifndef CUSPFOL_POLYNOMIAL_HPP
#define CUSPFOL_POLYNOMIAL_HPP

#include "cuspfol/context.hpp"
#include "cuspfol/errors.hpp"
#include "cuspfol/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace cuspfol {

// One exponent per context variable, all entries >= 0.
using Exponents = std::vector<int>;

long long total_degree(const Exponents& e);

// Total degree first, then lexicographic. This is the canonical term order:
// term maps, supports and vertex lists all iterate in it.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const
    {
        long long da = total_degree(a);
        long long db = total_degree(b);
        if (da != db)
            return da < db;
        return a < b;
    }
};

// Strictly positive weight per variable.
class WeightVector {
public:
    explicit WeightVector(std::vector<long long> entries);

    int size() const { return static_cast<int>(entries_.size()); }
    long long entry(int i) const { return entries_.at(static_cast<size_t>(i)); }
    const std::vector<long long>& entries() const { return entries_; }

private:
    std::vector<long long> entries_;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Canonical form: no zero coefficients are stored, keys are sorted
// graded-lexicographically, so equality is structural.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    explicit Polynomial(VarContext context);

    static Polynomial constant(VarContext context, Rational value);
    static Polynomial variable(const VarContext& context, int index);
    static Polynomial monomial(VarContext context, Exponents exponents, Rational coefficient);

    const VarContext& context() const { return context_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Zero when the monomial is absent.
    Rational coefficient(const Exponents& exponents) const;
    Rational constant_term() const;

    // Adds c * x^e, dropping the entry if it cancels.
    void add_term(const Exponents& exponents, const Rational& coefficient);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend Polynomial operator*(const Rational& scalar, Polynomial p) { return p *= scalar; }
    friend Polynomial operator*(Polynomial p, const Rational& scalar) { return p *= scalar; }

    bool operator==(const Polynomial&) const = default;

private:
    VarContext context_;
    TermMap terms_;
};

Polynomial pow(const Polynomial& base, int exponent);

// Formal partial derivative with respect to variable `index` (0-based).
Polynomial derivative(const Polynomial& p, int index);

// Exact composition p(images[0], ..., images[k-1]); all images must share one
// context, which becomes the context of the result.
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images);

// Minimal total degree over the support; nullopt (= +infinity) for zero.
std::optional<long long> mult0(const Polynomial& p);

// Minimal <w, e> over the support; nullopt for zero.
std::optional<long long> weighted_order(const Polynomial& p, const WeightVector& w);

// Drops every term of total degree > bound.
Polynomial truncate(const Polynomial& p, long long bound);

// Quotient when divisor divides p exactly, nullopt otherwise.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& divisor);

Rational evaluate(const Polynomial& p, const std::vector<Rational>& point);

// Support in canonical order.
std::vector<Exponents> support(const Polynomial& p);

// p re-expressed in a context extended with trailing variables. p's context
// must be a prefix of `super`.
Polynomial embed_prefix(const Polynomial& p, const VarContext& super);

// Inverse of embed_prefix: requires that no term uses the dropped variables.
Polynomial restrict_prefix(const Polynomial& p, int count);

} // namespace cuspfol

#endif
