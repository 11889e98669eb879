#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "meshref/common.hpp"

namespace meshref {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Indexed triangle mesh. Immutable after construction; all accessors const.
class TriMesh {
public:
    TriMesh() = default;

    // Validates indices, rejects degenerate faces (repeated indices or area
    // below 1e-12 * bbox_diag^2) and builds the symmetric vertex adjacency.
    static TriMesh create(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> faces);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& faces() const { return faces_; }
    const std::vector<std::vector<int>>& vertex_adjacency() const { return adjacency_; }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    double bbox_diag() const { return bbox_diag_; }
    double mean_edge_length() const;

    // Unnormalized face normal (cross product; length = 2 * area).
    Vec3 face_normal_raw(int f) const;
    // Unit face normal, CCW-outward for CCW winding.
    Vec3 face_normal(int f) const;
    double face_area(int f) const;
    Vec3 face_centroid(int f) const;
    double total_area() const;

    // Same topology, new vertex positions.
    TriMesh with_vertices(std::vector<Vec3> vertices) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<std::vector<int>> adjacency_;
    double bbox_diag_ = 0.0;
};

struct BarycentricWeight {
    int face_index = -1;
    std::array<double, 3> weights{{0.0, 0.0, 0.0}};
};

// Area-weighted average of incident face normals, normalized per vertex.
// Throws ZeroNormalError when the accumulated normal of a vertex vanishes
// (isolated vertex or exactly cancelling fans).
std::vector<Vec3> vertex_normals(const TriMesh& mesh);

// Barycentric coordinates of a point lying on face `face_index`. Weights are
// clamped to [0,1] and renormalized, so points slightly off the plane project
// onto it.
BarycentricWeight barycentric(const TriMesh& mesh, int face_index, const Vec3& point);

// One umbrella-operator step: v' = (1-lambda) * v + lambda * mean(neighbors).
// Vertices without neighbors are returned unchanged. Returns a new buffer.
std::vector<Vec3> umbrella_smooth(const TriMesh& mesh, double lambda);

// Sum over unique edges of |vi - vj|^2 (discrete Dirichlet energy).
double edge_energy(const TriMesh& mesh);

} // namespace meshref
