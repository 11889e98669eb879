#include "meshref/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace meshref {

TriMesh TriMesh::create(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces) {
    TriMesh m;
    m.vertices_ = std::move(vertices);
    m.faces_ = std::move(faces);

    const int nv = m.vertex_count();
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
    Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
    for (const Vec3& v : m.vertices_) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    m.bbox_diag_ = nv > 0 ? (hi - lo).norm() : 0.0;
    const double area_tol = 1e-12 * m.bbox_diag_ * m.bbox_diag_;

    for (std::size_t f = 0; f < m.faces_.size(); ++f) {
        const auto& fc = m.faces_[f];
        for (int k = 0; k < 3; ++k) {
            if (fc[k] < 0 || fc[k] >= nv)
                throw InvalidMeshError("face " + std::to_string(f) + " references vertex " +
                                       std::to_string(fc[k]) + " outside [0," + std::to_string(nv) + ")");
        }
        if (fc[0] == fc[1] || fc[1] == fc[2] || fc[0] == fc[2])
            throw InvalidMeshError("face " + std::to_string(f) + " repeats a vertex index");
        const Vec3 n = (m.vertices_[fc[1]] - m.vertices_[fc[0]]).cross(m.vertices_[fc[2]] - m.vertices_[fc[0]]);
        if (0.5 * n.norm() <= area_tol)
            throw InvalidMeshError("face " + std::to_string(f) + " is degenerate (area below tolerance)");
    }

    m.adjacency_.assign(nv, {});
    std::vector<std::set<int>> adj(nv);
    for (const auto& fc : m.faces_) {
        for (int k = 0; k < 3; ++k) {
            const int a = fc[k];
            const int b = fc[(k + 1) % 3];
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    for (int v = 0; v < nv; ++v)
        m.adjacency_[v].assign(adj[v].begin(), adj[v].end());
    return m;
}

TriMesh TriMesh::with_vertices(std::vector<Vec3> vertices) const {
    if (static_cast<int>(vertices.size()) != vertex_count())
        throw InvalidMeshError("vertex buffer size mismatch");
    // topology already validated; re-run create to refresh bbox and keep invariants
    return TriMesh::create(std::move(vertices), faces_);
}

double TriMesh::mean_edge_length() const {
    double sum = 0.0;
    std::size_t count = 0;
    for (int v = 0; v < vertex_count(); ++v) {
        for (int w : adjacency_[v]) {
            if (w > v) {
                sum += (vertices_[v] - vertices_[w]).norm();
                ++count;
            }
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

Vec3 TriMesh::face_normal_raw(int f) const {
    const auto& fc = faces_[f];
    return (vertices_[fc[1]] - vertices_[fc[0]]).cross(vertices_[fc[2]] - vertices_[fc[0]]);
}

Vec3 TriMesh::face_normal(int f) const {
    const Vec3 n = face_normal_raw(f);
    const double len = n.norm();
    if (len <= 0.0)
        throw DegenerateFaceError("face " + std::to_string(f) + " has zero normal");
    return n / len;
}

double TriMesh::face_area(int f) const { return 0.5 * face_normal_raw(f).norm(); }

Vec3 TriMesh::face_centroid(int f) const {
    const auto& fc = faces_[f];
    return (vertices_[fc[0]] + vertices_[fc[1]] + vertices_[fc[2]]) / 3.0;
}

double TriMesh::total_area() const {
    double a = 0.0;
    for (int f = 0; f < face_count(); ++f)
        a += face_area(f);
    return a;
}

std::vector<Vec3> vertex_normals(const TriMesh& mesh) {
    std::vector<Vec3> acc(mesh.vertex_count(), Vec3::Zero());
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Vec3 n = mesh.face_normal_raw(f); // length 2*area gives the area weighting
        for (int k = 0; k < 3; ++k)
            acc[mesh.faces()[f][k]] += n;
    }
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const double len = acc[v].norm();
        if (len < 1e-300)
            throw ZeroNormalError("vertex " + std::to_string(v) + " has no usable incident faces");
        acc[v] /= len;
    }
    return acc;
}

BarycentricWeight barycentric(const TriMesh& mesh, int face_index, const Vec3& point) {
    const auto& fc = mesh.faces()[face_index];
    const Vec3& a = mesh.vertices()[fc[0]];
    const Vec3& b = mesh.vertices()[fc[1]];
    const Vec3& c = mesh.vertices()[fc[2]];
    const Vec3 v0 = b - a;
    const Vec3 v1 = c - a;
    const Vec3 v2 = point - a;
    const double d00 = v0.dot(v0);
    const double d01 = v0.dot(v1);
    const double d11 = v1.dot(v1);
    const double d20 = v2.dot(v0);
    const double d21 = v2.dot(v1);
    const double denom = d00 * d11 - d01 * d01;
    if (denom <= 0.0 || !std::isfinite(denom))
        throw DegenerateFaceError("face " + std::to_string(face_index) + " is degenerate");
    double w1 = (d11 * d20 - d01 * d21) / denom;
    double w2 = (d00 * d21 - d01 * d20) / denom;
    double w0 = 1.0 - w1 - w2;
    w0 = std::clamp(w0, 0.0, 1.0);
    w1 = std::clamp(w1, 0.0, 1.0);
    w2 = std::clamp(w2, 0.0, 1.0);
    const double s = w0 + w1 + w2;
    BarycentricWeight out;
    out.face_index = face_index;
    out.weights = {w0 / s, w1 / s, w2 / s};
    return out;
}

std::vector<Vec3> umbrella_smooth(const TriMesh& mesh, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw InvalidParamsError("umbrella_smooth: lambda must be in [0,1]");
    std::vector<Vec3> out(mesh.vertices());
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const auto& nbrs = mesh.vertex_adjacency()[v];
        if (nbrs.empty())
            continue; // isolated vertex stays put
        Vec3 mean = Vec3::Zero();
        for (int w : nbrs)
            mean += mesh.vertices()[w];
        mean /= static_cast<double>(nbrs.size());
        out[v] = (1.0 - lambda) * mesh.vertices()[v] + lambda * mean;
    }
    return out;
}

double edge_energy(const TriMesh& mesh) {
    double e = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        for (int w : mesh.vertex_adjacency()[v])
            if (w > v)
                e += (mesh.vertices()[v] - mesh.vertices()[w]).squaredNorm();
    return e;
}

} // namespace meshref
