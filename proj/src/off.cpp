#include "cuspfol/newton.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace cuspfol {

namespace {

using Vec3 = std::array<Rational, 3>;
using IVec3 = std::array<Integer, 3>;

// Halfspace <w, x> >= c. The polyhedron's outward normal is -w.
struct Halfspace {
    IVec3 w;
    Integer c;
    bool from_clip;
};

Rational dot(const IVec3& w, const Vec3& x)
{
    Rational acc = 0;
    for (int i = 0; i < 3; ++i)
        acc += Rational(w[static_cast<size_t>(i)]) * x[static_cast<size_t>(i)];
    return acc;
}

Integer idot(const IVec3& w, const Exponents& x)
{
    Integer acc = 0;
    for (int i = 0; i < 3; ++i)
        acc += w[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    return acc;
}

Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Rank-revealing elimination on a 3x4 rational matrix; when the rank is 3,
// returns the one-dimensional nullspace scaled to a primitive integer vector.
std::optional<std::array<Integer, 4>> nullspace_3x4(std::array<std::array<Rational, 4>, 3> m)
{
    std::array<int, 3> pivot_col{-1, -1, -1};
    int row = 0;
    for (int col = 0; col < 4 && row < 3; ++col) {
        int sel = -1;
        for (int i = row; i < 3; ++i)
            if (m[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
                sel = i;
                break;
            }
        if (sel < 0)
            continue;
        std::swap(m[static_cast<size_t>(sel)], m[static_cast<size_t>(row)]);
        Rational inv = m[static_cast<size_t>(row)][static_cast<size_t>(col)];
        for (int j = col; j < 4; ++j)
            m[static_cast<size_t>(row)][static_cast<size_t>(j)] /= inv;
        for (int i = 0; i < 3; ++i) {
            if (i == row)
                continue;
            Rational f = m[static_cast<size_t>(i)][static_cast<size_t>(col)];
            if (f == 0)
                continue;
            for (int j = col; j < 4; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    f * m[static_cast<size_t>(row)][static_cast<size_t>(j)];
        }
        pivot_col[static_cast<size_t>(row)] = col;
        ++row;
    }
    if (row != 3)
        return std::nullopt; // nullity >= 2
    int free_col = 0 + 1 + 2 + 3;
    for (int c : pivot_col)
        free_col -= c;
    std::array<Rational, 4> w{};
    w[static_cast<size_t>(free_col)] = 1;
    for (int i = 0; i < 3; ++i)
        w[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] =
            -m[static_cast<size_t>(i)][static_cast<size_t>(free_col)];

    Integer lcm_den = 1;
    for (const auto& v : w)
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(v));
    std::array<Integer, 4> out;
    Integer g = 0;
    for (int i = 0; i < 4; ++i) {
        out[static_cast<size_t>(i)] =
            numerator(w[static_cast<size_t>(i)]) * (lcm_den / denominator(w[static_cast<size_t>(i)]));
        g = boost::multiprecision::gcd(g, out[static_cast<size_t>(i)]);
    }
    for (auto& v : out)
        v /= g;
    return out;
}

// Solve <w_k, x> = c_k for three halfspace boundaries (Cramer).
std::optional<Vec3> intersect_planes(const Halfspace& a, const Halfspace& b, const Halfspace& c)
{
    const IVec3* rows[3] = {&a.w, &b.w, &c.w};
    const Integer rhs[3] = {a.c, b.c, c.c};
    auto det3 = [](const Integer m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    Integer base[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            base[i][j] = (*rows[i])[static_cast<size_t>(j)];
    Integer det = det3(base);
    if (det == 0)
        return std::nullopt;
    Vec3 x;
    for (int j = 0; j < 3; ++j) {
        Integer col[3][3];
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                col[i][k] = k == j ? rhs[i] : base[i][k];
        x[static_cast<size_t>(j)] = Rational(det3(col), det);
    }
    return x;
}

std::vector<Halfspace> facet_halfspaces(const std::vector<Exponents>& verts, long long clip)
{
    // homogenized generators: (v, 1) for vertices, (e_i, 0) for the recession rays
    std::vector<std::array<Integer, 4>> gens;
    for (const auto& v : verts)
        gens.push_back({Integer(v[0]), Integer(v[1]), Integer(v[2]), Integer(1)});
    for (int i = 0; i < 3; ++i) {
        std::array<Integer, 4> ray{0, 0, 0, 0};
        ray[static_cast<size_t>(i)] = 1;
        gens.push_back(ray);
    }

    std::map<std::pair<std::vector<Integer>, Integer>, bool> found; // (w, c) -> from_clip
    auto try_insert = [&](const IVec3& w, const Integer& c, bool from_clip) {
        bool nonneg = true, nonzero = false;
        for (const auto& v : w) {
            if (v < 0)
                nonneg = false;
            if (v != 0)
                nonzero = true;
        }
        if (from_clip) {
            nonneg = true; // cube walls carry negative normals by construction
        } else {
            if (!nonneg || !nonzero)
                return;
            for (const auto& v : verts)
                if (idot(w, v) < c)
                    return;
        }
        found.emplace(std::make_pair(std::vector<Integer>(w.begin(), w.end()), c), from_clip);
    };

    const size_t g = gens.size();
    for (size_t i = 0; i < g; ++i) {
        for (size_t j = i + 1; j < g; ++j) {
            for (size_t k = j + 1; k < g; ++k) {
                std::array<std::array<Rational, 4>, 3> m;
                const std::array<Integer, 4>* rows[3] = {&gens[i], &gens[j], &gens[k]};
                for (int r = 0; r < 3; ++r)
                    for (int col = 0; col < 4; ++col)
                        m[static_cast<size_t>(r)][static_cast<size_t>(col)] =
                            Rational((*rows[r])[static_cast<size_t>(col)]);
                auto ns = nullspace_3x4(m);
                if (!ns)
                    continue;
                // <W,(x,1)> = 0 reads <w,x> = -W[3]
                IVec3 w{(*ns)[0], (*ns)[1], (*ns)[2]};
                try_insert(w, -(*ns)[3], false);
                IVec3 neg{-(*ns)[0], -(*ns)[1], -(*ns)[2]};
                try_insert(neg, (*ns)[3], false);
            }
        }
    }
    // coordinate planes are always valid for the unclipped polyhedron
    for (int i = 0; i < 3; ++i) {
        IVec3 w{0, 0, 0};
        w[static_cast<size_t>(i)] = 1;
        try_insert(w, 0, false);
    }
    // clipping cube: x_i <= clip
    for (int i = 0; i < 3; ++i) {
        IVec3 w{0, 0, 0};
        w[static_cast<size_t>(i)] = -1;
        try_insert(w, Integer(-clip), true);
    }

    std::vector<Halfspace> out;
    for (const auto& [key, from_clip] : found)
        out.push_back({IVec3{key.first[0], key.first[1], key.first[2]}, key.second, from_clip});
    return out;
}

std::string coordinate_text(const Rational& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    char buf[64];
    double d = r.convert_to<double>();
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
}

} // namespace

ClippedMesh clipped_boundary_mesh(const NewtonPolyhedron& N, long long clip)
{
    if (N.dim() != 3)
        throw ValidationError("mesh export supports dimension 3 only, got " +
                              std::to_string(N.dim()));
    long long max_coord = 0;
    for (const auto& v : N.vertices())
        for (int c : v)
            max_coord = std::max(max_coord, static_cast<long long>(c));
    if (clip <= max_coord)
        throw ValidationError("clip bound " + std::to_string(clip) +
                              " must exceed the largest vertex coordinate " +
                              std::to_string(max_coord));

    auto halfspaces = facet_halfspaces(N.vertices(), clip);

    std::set<Vec3> vertex_set;
    const size_t h = halfspaces.size();
    for (size_t i = 0; i < h; ++i) {
        for (size_t j = i + 1; j < h; ++j) {
            for (size_t k = j + 1; k < h; ++k) {
                auto x = intersect_planes(halfspaces[i], halfspaces[j], halfspaces[k]);
                if (!x)
                    continue;
                bool inside = true;
                for (const auto& hs : halfspaces)
                    if (dot(hs.w, *x) < Rational(hs.c)) {
                        inside = false;
                        break;
                    }
                if (inside)
                    vertex_set.insert(*x);
            }
        }
    }

    ClippedMesh mesh;
    mesh.vertices.assign(vertex_set.begin(), vertex_set.end());

    for (const auto& hs : halfspaces) {
        std::vector<int> active;
        for (size_t i = 0; i < mesh.vertices.size(); ++i)
            if (dot(hs.w, mesh.vertices[i]) == Rational(hs.c))
                active.push_back(static_cast<int>(i));
        if (active.size() < 3)
            continue;

        Vec3 centroid{0, 0, 0};
        for (int idx : active)
            for (int c = 0; c < 3; ++c)
                centroid[static_cast<size_t>(c)] +=
                    mesh.vertices[static_cast<size_t>(idx)][static_cast<size_t>(c)];
        for (int c = 0; c < 3; ++c)
            centroid[static_cast<size_t>(c)] /= Rational(active.size());

        Vec3 outward{Rational(-hs.w[0]), Rational(-hs.w[1]), Rational(-hs.w[2])};
        auto offset = [&](int idx) {
            Vec3 u;
            for (int c = 0; c < 3; ++c)
                u[static_cast<size_t>(c)] =
                    mesh.vertices[static_cast<size_t>(idx)][static_cast<size_t>(c)] -
                    centroid[static_cast<size_t>(c)];
            return u;
        };
        Vec3 ref = offset(active.front());
        // counterclockwise around the outward normal, angle zero at `ref`
        auto half_of = [&](const Vec3& u) {
            Rational s = dot3(outward, cross(ref, u));
            if (s != 0)
                return s > 0 ? 0 : 1;
            return dot3(ref, u) > 0 ? 0 : 1;
        };
        std::sort(active.begin(), active.end(), [&](int lhs, int rhs) {
            Vec3 a = offset(lhs), b = offset(rhs);
            int ha = half_of(a), hb = half_of(b);
            if (ha != hb)
                return ha < hb;
            return dot3(outward, cross(a, b)) > 0;
        });
        mesh.faces.push_back(std::move(active));
        mesh.face_from_clip.push_back(hs.from_clip);
    }
    return mesh;
}

std::string export_off(const NewtonPolyhedron& N, long long clip)
{
    ClippedMesh mesh = clipped_boundary_mesh(N, clip);
    size_t edges = 0;
    for (const auto& f : mesh.faces)
        edges += f.size();
    edges /= 2;

    std::ostringstream os;
    os << "OFF\n";
    os << "# boundary of conv(vertices + R+^3) clipped to [0," << clip << "]^3\n";
    os << "# faces marked 'clip' lie on the clipping cube, not on the polyhedron\n";
    os << mesh.vertices.size() << " " << mesh.faces.size() << " " << edges << "\n";
    for (const auto& v : mesh.vertices)
        os << coordinate_text(v[0]) << " " << coordinate_text(v[1]) << " "
           << coordinate_text(v[2]) << "\n";
    for (size_t i = 0; i < mesh.faces.size(); ++i) {
        os << mesh.faces[i].size();
        for (int idx : mesh.faces[i])
            os << " " << idx;
        if (mesh.face_from_clip[i])
            os << " # clip";
        os << "\n";
    }
    return os.str();
}

} // namespace cuspfol
