#ifndef CUSPFOL_NEWTON_HPP
#define CUSPFOL_NEWTON_HPP

#include "cuspfol/forms.hpp"
#include "cuspfol/polynomial.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cuspfol {

// Finite set of nonnegative integer lattice points; generator set of the
// polyhedron conv(points + R_+^dim). Points are deduplicated and kept in
// canonical order.
class SupportSet {
public:
    SupportSet(int dim, std::vector<Exponents> points);

    int dim() const { return dim_; }
    const std::vector<Exponents>& points() const { return points_; }
    bool empty() const { return points_.empty(); }

private:
    int dim_;
    std::vector<Exponents> points_;
};

// Constructive witness that p lies in conv(S + R_+^d):
// p = sum of weight * point + slack, weights >= 0 summing to 1, slack >= 0.
struct HullCertificate {
    std::vector<std::pair<Exponents, Rational>> weights; // nonzero entries only
    std::vector<Rational> slack;
};

// Feasibility of p in conv(S + R_+^d), decided by an exact-rational phase-I
// simplex with Bland's rule. Returns a certificate when contained.
std::optional<HullCertificate> hull_contains(const SupportSet& S, const Exponents& p);

// The canonical vertex set of conv(S + R_+^d): a generator is kept iff it is
// not contained in the hull of the others. Vertex-list equality decides
// polyhedron equality (the recession cone is fixed).
class NewtonPolyhedron {
public:
    explicit NewtonPolyhedron(const SupportSet& S);

    int dim() const { return dim_; }
    const std::vector<Exponents>& vertices() const { return vertices_; }

    bool operator==(const NewtonPolyhedron&) const = default;

private:
    int dim_;
    std::vector<Exponents> vertices_;
};

NewtonPolyhedron newton_of_polynomial(const Polynomial& p);
NewtonPolyhedron newton_of_1form(const KForm& w);

bool polyhedra_equal(const NewtonPolyhedron& a, const NewtonPolyhedron& b);

// Boundary mesh of conv(vertices + R_+^3) clipped to the cube [0, clip]^3.
struct ClippedMesh {
    std::vector<std::array<Rational, 3>> vertices;
    std::vector<std::vector<int>> faces; // vertex indices, outward-oriented
    std::vector<bool> face_from_clip;    // true: face lies on the clipping cube
};

ClippedMesh clipped_boundary_mesh(const NewtonPolyhedron& N, long long clip);

// OFF text for the clipped boundary; deterministic vertex and face order.
std::string export_off(const NewtonPolyhedron& N, long long clip);

} // namespace cuspfol

#endif
