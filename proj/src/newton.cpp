#include "cuspfol/newton.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace cuspfol {

namespace {

// Phase-I primal simplex over exact rationals: decides feasibility of
// { x >= 0 : A x = b } with b >= 0. Artificial variables start basic;
// Bland's rule (lowest index enters, lowest-index basic leaves on ties)
// guarantees termination without perturbation.
class PhaseOneSimplex {
public:
    PhaseOneSimplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
        : rows_(static_cast<int>(a.size())),
          cols_(static_cast<int>(a.front().size())),
          tableau_(std::move(a)),
          rhs_(std::move(b))
    {
        // append the artificial identity block
        for (int i = 0; i < rows_; ++i) {
            tableau_[static_cast<size_t>(i)].resize(static_cast<size_t>(cols_ + rows_), 0);
            tableau_[static_cast<size_t>(i)][static_cast<size_t>(cols_ + i)] = 1;
            basis_.push_back(cols_ + i);
        }
    }

    // On success fills `solution` (size = structural column count).
    bool solve(std::vector<Rational>& solution)
    {
        for (;;) {
            int enter = entering_column();
            if (enter < 0)
                break;
            int leave = leaving_row(enter);
            if (leave < 0)
                throw InternalError("phase-I simplex objective unbounded");
            pivot(leave, enter);
        }
        Rational infeasibility = 0;
        for (int i = 0; i < rows_; ++i)
            if (basis_[static_cast<size_t>(i)] >= cols_)
                infeasibility += rhs_[static_cast<size_t>(i)];
        if (infeasibility != 0)
            return false;
        solution.assign(static_cast<size_t>(cols_), Rational(0));
        for (int i = 0; i < rows_; ++i)
            if (basis_[static_cast<size_t>(i)] < cols_)
                solution[static_cast<size_t>(basis_[static_cast<size_t>(i)])] =
                    rhs_[static_cast<size_t>(i)];
        return true;
    }

private:
    // Lowest-index column with negative reduced cost under the phase-I
    // objective (artificials cost 1, structurals 0).
    int entering_column()
    {
        for (int j = 0; j < cols_ + rows_; ++j) {
            Rational reduced = j >= cols_ ? 1 : 0;
            for (int i = 0; i < rows_; ++i)
                if (basis_[static_cast<size_t>(i)] >= cols_)
                    reduced -= tableau_[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (reduced < 0)
                return j;
        }
        return -1;
    }

    int leaving_row(int enter)
    {
        int leave = -1;
        Rational best;
        for (int i = 0; i < rows_; ++i) {
            const Rational& pivot = tableau_[static_cast<size_t>(i)][static_cast<size_t>(enter)];
            if (pivot <= 0)
                continue;
            Rational ratio = rhs_[static_cast<size_t>(i)] / pivot;
            if (leave < 0 || ratio < best ||
                (ratio == best &&
                 basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
                leave = i;
                best = ratio;
            }
        }
        return leave;
    }

    void pivot(int row, int col)
    {
        auto& prow = tableau_[static_cast<size_t>(row)];
        Rational inv = prow[static_cast<size_t>(col)];
        for (auto& v : prow)
            v /= inv;
        rhs_[static_cast<size_t>(row)] /= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == row)
                continue;
            auto& irow = tableau_[static_cast<size_t>(i)];
            Rational factor = irow[static_cast<size_t>(col)];
            if (factor == 0)
                continue;
            for (int j = 0; j < cols_ + rows_; ++j)
                irow[static_cast<size_t>(j)] -= factor * prow[static_cast<size_t>(j)];
            rhs_[static_cast<size_t>(i)] -= factor * rhs_[static_cast<size_t>(row)];
        }
        basis_[static_cast<size_t>(row)] = col;
    }

    int rows_;
    int cols_;
    std::vector<std::vector<Rational>> tableau_;
    std::vector<Rational> rhs_;
    std::vector<int> basis_;
};

} // namespace

SupportSet::SupportSet(int dim, std::vector<Exponents> points) : dim_(dim)
{
    if (dim < 1)
        throw ValidationError("support dimension must be >= 1");
    std::set<Exponents, GradedLexLess> dedup;
    for (auto& p : points) {
        if (static_cast<int>(p.size()) != dim)
            throw StructuralError("support point arity does not match dimension");
        for (int v : p)
            if (v < 0)
                throw ValidationError("support points must be nonnegative");
        dedup.insert(std::move(p));
    }
    points_.assign(dedup.begin(), dedup.end());
}

std::optional<HullCertificate> hull_contains(const SupportSet& S, const Exponents& p)
{
    if (S.empty())
        throw ValidationError("hull membership against an empty support");
    if (static_cast<int>(p.size()) != S.dim())
        throw StructuralError("query point arity does not match support dimension");
    for (int v : p)
        if (v < 0)
            throw ValidationError("query point must be nonnegative");

    const int d = S.dim();
    const int m = static_cast<int>(S.points().size());
    // columns: lambda_1..lambda_m, mu_1..mu_d
    // rows:    sum lambda_q q_k + mu_k = p_k   (k = 1..d)
    //          sum lambda_q = 1
    std::vector<std::vector<Rational>> a(static_cast<size_t>(d + 1),
                                         std::vector<Rational>(static_cast<size_t>(m + d), 0));
    std::vector<Rational> b(static_cast<size_t>(d + 1), 0);
    for (int k = 0; k < d; ++k) {
        for (int q = 0; q < m; ++q)
            a[static_cast<size_t>(k)][static_cast<size_t>(q)] =
                S.points()[static_cast<size_t>(q)][static_cast<size_t>(k)];
        a[static_cast<size_t>(k)][static_cast<size_t>(m + k)] = 1;
        b[static_cast<size_t>(k)] = p[static_cast<size_t>(k)];
    }
    for (int q = 0; q < m; ++q)
        a[static_cast<size_t>(d)][static_cast<size_t>(q)] = 1;
    b[static_cast<size_t>(d)] = 1;

    PhaseOneSimplex lp(std::move(a), std::move(b));
    std::vector<Rational> x;
    if (!lp.solve(x))
        return std::nullopt;

    HullCertificate cert;
    for (int q = 0; q < m; ++q)
        if (x[static_cast<size_t>(q)] != 0)
            cert.weights.emplace_back(S.points()[static_cast<size_t>(q)], x[static_cast<size_t>(q)]);
    cert.slack.assign(x.begin() + m, x.end());
    return cert;
}

NewtonPolyhedron::NewtonPolyhedron(const SupportSet& S) : dim_(S.dim())
{
    if (S.empty())
        throw ValidationError("cannot build a Newton polyhedron from an empty support");
    const auto& pts = S.points();
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<Exponents> others;
        others.reserve(pts.size() - 1);
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i)
                others.push_back(pts[j]);
        if (others.empty() || !hull_contains(SupportSet(dim_, std::move(others)), pts[i]))
            vertices_.push_back(pts[i]);
    }
}

NewtonPolyhedron newton_of_polynomial(const Polynomial& p)
{
    if (p.is_zero())
        throw ValidationError("Newton polyhedron of the zero polynomial");
    return NewtonPolyhedron(SupportSet(p.context().size(), support(p)));
}

NewtonPolyhedron newton_of_1form(const KForm& w)
{
    if (w.is_zero())
        throw ValidationError("Newton polyhedron of the zero form");
    return NewtonPolyhedron(SupportSet(w.context().size(), one_form_support(w)));
}

bool polyhedra_equal(const NewtonPolyhedron& a, const NewtonPolyhedron& b)
{
    if (a.dim() != b.dim())
        throw StructuralError("comparing polyhedra of different dimensions");
    return a.vertices() == b.vertices();
}

} // namespace cuspfol
