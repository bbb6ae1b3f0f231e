#pragma once

#include <array>
#include <vector>

namespace fsi {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Axis-aligned rectangle (cm, CGS units throughout).
struct Rect {
    double x0, x1, y0, y1;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

enum class BoundaryTag {
    Interface,
    SolidDirichlet,
    FluidDirichlet,
    Inlet,
    Outlet,
    Symmetry,
    Traction,
};

const char* to_string(BoundaryTag tag);

/// Boundary edge (a,b), oriented counterclockwise around the domain so the
/// outward normal is the right-hand rotation of b-a.
struct BoundaryEdge {
    int a, b;
    BoundaryTag tag;
};

struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;  // CCW orientation
    std::vector<BoundaryEdge> boundary_edges;
    double h = 0.0;  // max edge length

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
};

/// Per-side boundary tags for a structured rectangle mesh.
struct SideTags {
    BoundaryTag left = BoundaryTag::FluidDirichlet;
    BoundaryTag right = BoundaryTag::FluidDirichlet;
    BoundaryTag bottom = BoundaryTag::FluidDirichlet;
    BoundaryTag top = BoundaryTag::FluidDirichlet;
};

/// Uniform grid of nx-by-ny cells, each split along the right-up diagonal
/// into two triangles. Vertex (i,j) has index j*(nx+1)+i; coordinates are
/// computed as x0 + (x1-x0)*(i/nx) so grid lines shared between two meshes
/// built with the same endpoints coincide bitwise.
Mesh build_rect_mesh(const Rect& rect, int nx, int ny, SideTags tags = {});

/// Interface node correspondence between the fluid and solid meshes along
/// the shared horizontal line y = R, ordered by increasing x. Paired nodes
/// have bitwise-identical coordinates by construction.
struct InterfaceMap {
    std::vector<int> fluid_nodes;
    std::vector<int> solid_nodes;
    std::vector<double> edge_lengths;  // edge k joins node k and k+1

    int n_nodes() const { return static_cast<int>(fluid_nodes.size()); }
    int n_edges() const { return static_cast<int>(edge_lengths.size()); }
    double total_length() const;
};

struct ChannelPair {
    Mesh fluid;
    Mesh solid;
    InterfaceMap interface;
};

/// Fluid channel [0,L]x[0,R] under a solid strip [0,L]x[R,R+eps] with a
/// matching interface discretization (same nx on both sides).
/// Fluid tags: Inlet at x=0, Outlet at x=L, Symmetry at y=0, Interface at
/// y=R. Solid tags: SolidDirichlet at x=0 and x=L, Traction at y=R+eps,
/// Interface at y=R.
ChannelPair build_channel_pair(double L, double R, double eps, int nx, int ny_f, int ny_s);

/// Unit outward normal of a boundary edge. Throws if the edge is not one of
/// the mesh's boundary edges.
Vec2 outward_normal(const Mesh& mesh, const BoundaryEdge& edge);

/// max edge length / min edge length (shape quality of the triangulation).
double edge_length_ratio(const Mesh& mesh);

/// Sum of signed triangle areas.
double mesh_area(const Mesh& mesh);

/// P1 interpolation of per-vertex values of a structured mesh built by
/// build_rect_mesh(rect, nx, ny) at an arbitrary point (clamped into rect).
double eval_p1_structured(const Rect& rect, int nx, int ny,
                          const std::vector<double>& vertex_values, Vec2 p);

}  // namespace fsi
