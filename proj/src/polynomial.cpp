#include "cuspfol/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cuspfol {

namespace {

void require_same_context(const Polynomial& a, const Polynomial& b, const char* op)
{
    if (a.context() != b.context())
        throw StructuralError(std::string("context mismatch in ") + op);
}

void require_exponents(const VarContext& ctx, const Exponents& e)
{
    if (static_cast<int>(e.size()) != ctx.size())
        throw StructuralError("exponent vector length " + std::to_string(e.size()) +
                              " does not match context of " + std::to_string(ctx.size()) +
                              " variables");
    for (int v : e)
        if (v < 0)
            throw StructuralError("negative exponent");
}

} // namespace

long long total_degree(const Exponents& e)
{
    long long d = 0;
    for (int v : e)
        d += v;
    return d;
}

WeightVector::WeightVector(std::vector<long long> entries) : entries_(std::move(entries))
{
    if (entries_.empty())
        throw ValidationError("weight vector must be nonempty");
    for (long long w : entries_)
        if (w < 1)
            throw ValidationError("weights must be >= 1");
}

Polynomial::Polynomial(VarContext context) : context_(std::move(context)) {}

Polynomial Polynomial::constant(VarContext context, Rational value)
{
    Polynomial p(std::move(context));
    if (value != 0)
        p.terms_.emplace(Exponents(static_cast<size_t>(p.context_.size()), 0), std::move(value));
    return p;
}

Polynomial Polynomial::variable(const VarContext& context, int index)
{
    if (index < 0 || index >= context.size())
        throw StructuralError("variable index " + std::to_string(index) + " out of range");
    Exponents e(static_cast<size_t>(context.size()), 0);
    e[static_cast<size_t>(index)] = 1;
    return monomial(context, std::move(e), 1);
}

Polynomial Polynomial::monomial(VarContext context, Exponents exponents, Rational coefficient)
{
    require_exponents(context, exponents);
    Polynomial p(std::move(context));
    if (coefficient != 0)
        p.terms_.emplace(std::move(exponents), std::move(coefficient));
    return p;
}

Rational Polynomial::coefficient(const Exponents& exponents) const
{
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const
{
    return coefficient(Exponents(static_cast<size_t>(context_.size()), 0));
}

void Polynomial::add_term(const Exponents& exponents, const Rational& coefficient)
{
    require_exponents(context_, exponents);
    if (coefficient == 0)
        return;
    auto [it, inserted] = terms_.emplace(exponents, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const
{
    Polynomial out(context_);
    for (const auto& [e, c] : terms_)
        out.terms_.emplace(e, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs)
{
    require_same_context(*this, rhs, "add");
    if (this == &rhs) {
        Polynomial copy = rhs;
        return *this += copy;
    }
    for (const auto& [e, c] : rhs.terms_)
        add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs)
{
    require_same_context(*this, rhs, "subtract");
    if (this == &rhs) {
        terms_.clear();
        return *this;
    }
    for (const auto& [e, c] : rhs.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs)
{
    require_same_context(lhs, rhs, "multiply");
    Polynomial out(lhs.context());
    Exponents sum(static_cast<size_t>(lhs.context().size()), 0);
    for (const auto& [ea, ca] : lhs.terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (size_t i = 0; i < sum.size(); ++i)
                sum[i] = ea[i] + eb[i];
            out.add_term(sum, ca * cb);
        }
    }
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs)
{
    *this = *this * rhs;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar)
{
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_)
        c *= scalar;
    return *this;
}

Polynomial pow(const Polynomial& base, int exponent)
{
    if (exponent < 0)
        throw StructuralError("negative polynomial power");
    Polynomial out = Polynomial::constant(base.context(), 1);
    for (int i = 0; i < exponent; ++i)
        out *= base;
    return out;
}

Polynomial derivative(const Polynomial& p, int index)
{
    if (index < 0 || index >= p.context().size())
        throw StructuralError("derivative index " + std::to_string(index) + " out of range");
    Polynomial out(p.context());
    for (const auto& [e, c] : p.terms()) {
        int k = e[static_cast<size_t>(index)];
        if (k == 0)
            continue;
        Exponents d = e;
        d[static_cast<size_t>(index)] = k - 1;
        out.add_term(d, c * k);
    }
    return out;
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images)
{
    if (static_cast<int>(images.size()) != p.context().size())
        throw StructuralError("substitute expects " + std::to_string(p.context().size()) +
                              " images, got " + std::to_string(images.size()));
    const VarContext& target = images.front().context();
    for (const auto& im : images)
        if (im.context() != target)
            throw StructuralError("substitute images live in different contexts");

    // Power cache per variable, grown on demand.
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto image_power = [&](size_t var, int k) -> const Polynomial& {
        auto& cache = powers[var];
        if (cache.empty())
            cache.push_back(Polynomial::constant(target, 1));
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(cache.back() * images[var]);
        return cache[static_cast<size_t>(k)];
    };

    Polynomial out(target);
    for (const auto& [e, c] : p.terms()) {
        Polynomial term = Polynomial::constant(target, c);
        for (size_t i = 0; i < images.size(); ++i)
            if (e[i] > 0)
                term *= image_power(i, e[i]);
        out += term;
    }
    return out;
}

std::optional<long long> mult0(const Polynomial& p)
{
    if (p.is_zero())
        return std::nullopt;
    // Term order is graded, so the first key has minimal total degree.
    return total_degree(p.terms().begin()->first);
}

std::optional<long long> weighted_order(const Polynomial& p, const WeightVector& w)
{
    if (w.size() != p.context().size())
        throw StructuralError("weight vector length does not match context");
    if (p.is_zero())
        return std::nullopt;
    std::optional<long long> best;
    for (const auto& [e, c] : p.terms()) {
        long long v = 0;
        for (int i = 0; i < w.size(); ++i)
            v += w.entry(i) * e[static_cast<size_t>(i)];
        if (!best || v < *best)
            best = v;
    }
    return best;
}

Polynomial truncate(const Polynomial& p, long long bound)
{
    if (bound < 0)
        throw StructuralError("truncation bound must be >= 0");
    Polynomial out(p.context());
    for (const auto& [e, c] : p.terms()) {
        if (total_degree(e) > bound)
            break; // graded order: everything after is larger
        out.add_term(e, c);
    }
    return out;
}

std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& divisor)
{
    require_same_context(p, divisor, "exact_divide");
    if (divisor.is_zero())
        throw ValidationError("division by the zero polynomial");
    Polynomial quotient(p.context());
    Polynomial remainder = p;
    const auto& dlead = *divisor.terms().rbegin();
    while (!remainder.is_zero()) {
        const auto& rlead = *remainder.terms().rbegin();
        Exponents q(rlead.first.size());
        for (size_t i = 0; i < q.size(); ++i) {
            q[i] = rlead.first[i] - dlead.first[i];
            if (q[i] < 0)
                return std::nullopt; // leading term not divisible => nonzero remainder
        }
        Rational coeff = rlead.second / dlead.second;
        Polynomial t = Polynomial::monomial(p.context(), q, coeff);
        quotient += t;
        remainder -= t * divisor;
    }
    return quotient;
}

Rational evaluate(const Polynomial& p, const std::vector<Rational>& point)
{
    if (static_cast<int>(point.size()) != p.context().size())
        throw StructuralError("evaluation point arity mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational term = c;
        for (size_t i = 0; i < point.size(); ++i)
            for (int k = 0; k < e[i]; ++k)
                term *= point[i];
        acc += term;
    }
    return acc;
}

std::vector<Exponents> support(const Polynomial& p)
{
    std::vector<Exponents> out;
    out.reserve(p.terms().size());
    for (const auto& [e, c] : p.terms())
        out.push_back(e);
    return out;
}

Polynomial embed_prefix(const Polynomial& p, const VarContext& super)
{
    int n = p.context().size();
    if (super.size() < n || super.prefix(n) != p.context())
        throw StructuralError("embed_prefix: context is not a prefix of the target");
    Polynomial out(super);
    Exponents e(static_cast<size_t>(super.size()), 0);
    for (const auto& [src, c] : p.terms()) {
        std::fill(e.begin(), e.end(), 0);
        std::copy(src.begin(), src.end(), e.begin());
        out.add_term(e, c);
    }
    return out;
}

Polynomial restrict_prefix(const Polynomial& p, int count)
{
    VarContext sub = p.context().prefix(count);
    Polynomial out(sub);
    for (const auto& [e, c] : p.terms()) {
        for (size_t i = static_cast<size_t>(count); i < e.size(); ++i)
            if (e[i] != 0)
                throw StructuralError("restrict_prefix: term depends on dropped variable '" +
                                      p.context().name(static_cast<int>(i)) + "'");
        out.add_term(Exponents(e.begin(), e.begin() + count), c);
    }
    return out;
}

} // namespace cuspfol
