#include "fsi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fsi {

const char* to_string(BoundaryTag tag) {
    switch (tag) {
    case BoundaryTag::Interface: return "Interface";
    case BoundaryTag::SolidDirichlet: return "SolidDirichlet";
    case BoundaryTag::FluidDirichlet: return "FluidDirichlet";
    case BoundaryTag::Inlet: return "Inlet";
    case BoundaryTag::Outlet: return "Outlet";
    case BoundaryTag::Symmetry: return "Symmetry";
    case BoundaryTag::Traction: return "Traction";
    }
    return "?";
}

namespace {

double edge_length(const Mesh& m, int a, int b) {
    const Vec2 d = m.vertices[b] - m.vertices[a];
    return std::sqrt(dot(d, d));
}

}  // namespace

Mesh build_rect_mesh(const Rect& rect, int nx, int ny, SideTags tags) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("build_rect_mesh: nx and ny must be >= 1");
    if (!(rect.x0 < rect.x1) || !(rect.y0 < rect.y1))
        throw std::invalid_argument("build_rect_mesh: degenerate rectangle");

    Mesh m;
    const int npx = nx + 1;
    const int npy = ny + 1;
    m.vertices.reserve(static_cast<std::size_t>(npx) * npy);
    for (int j = 0; j < npy; ++j) {
        const double y = rect.y0 + rect.height() * (static_cast<double>(j) / ny);
        for (int i = 0; i < npx; ++i) {
            const double x = rect.x0 + rect.width() * (static_cast<double>(i) / nx);
            m.vertices.push_back({x, y});
        }
    }

    auto vid = [npx](int i, int j) { return j * npx + i; };

    m.triangles.reserve(static_cast<std::size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j);
            const int v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1);
            const int v11 = vid(i + 1, j + 1);
            m.triangles.push_back({v00, v10, v11});
            m.triangles.push_back({v00, v11, v01});
        }
    }

    // Boundary edges in counterclockwise order around the rectangle.
    for (int i = 0; i < nx; ++i)
        m.boundary_edges.push_back({vid(i, 0), vid(i + 1, 0), tags.bottom});
    for (int j = 0; j < ny; ++j)
        m.boundary_edges.push_back({vid(nx, j), vid(nx, j + 1), tags.right});
    for (int i = nx; i > 0; --i)
        m.boundary_edges.push_back({vid(i, ny), vid(i - 1, ny), tags.top});
    for (int j = ny; j > 0; --j)
        m.boundary_edges.push_back({vid(0, j), vid(0, j - 1), tags.left});

    double hmax = 0.0;
    for (const auto& t : m.triangles)
        for (int k = 0; k < 3; ++k)
            hmax = std::max(hmax, edge_length(m, t[k], t[(k + 1) % 3]));
    m.h = hmax;
    return m;
}

ChannelPair build_channel_pair(double L, double R, double eps, int nx, int ny_f, int ny_s) {
    if (nx < 1 || ny_f < 1 || ny_s < 1)
        throw std::invalid_argument("build_channel_pair: subdivision counts must be >= 1");

    ChannelPair cp;
    cp.fluid = build_rect_mesh({0.0, L, 0.0, R}, nx, ny_f,
                               {.left = BoundaryTag::Inlet,
                                .right = BoundaryTag::Outlet,
                                .bottom = BoundaryTag::Symmetry,
                                .top = BoundaryTag::Interface});
    cp.solid = build_rect_mesh({0.0, L, R, R + eps}, nx, ny_s,
                               {.left = BoundaryTag::SolidDirichlet,
                                .right = BoundaryTag::SolidDirichlet,
                                .bottom = BoundaryTag::Interface,
                                .top = BoundaryTag::Traction});

    InterfaceMap im;
    const int fluid_row0 = ny_f * (nx + 1);  // top row of fluid mesh
    for (int i = 0; i <= nx; ++i) {
        const int vf = fluid_row0 + i;
        const int vs = i;  // bottom row of solid mesh
        const Vec2 pf = cp.fluid.vertices[vf];
        const Vec2 ps = cp.solid.vertices[vs];
        if (pf.x != ps.x || pf.y != ps.y)
            throw std::logic_error("build_channel_pair: interface nodes do not coincide");
        im.fluid_nodes.push_back(vf);
        im.solid_nodes.push_back(vs);
    }
    for (int i = 0; i < nx; ++i) {
        const double len = cp.fluid.vertices[im.fluid_nodes[i + 1]].x -
                           cp.fluid.vertices[im.fluid_nodes[i]].x;
        im.edge_lengths.push_back(len);
    }
    cp.interface = std::move(im);
    return cp;
}

double InterfaceMap::total_length() const {
    double s = 0.0;
    for (double l : edge_lengths) s += l;
    return s;
}

Vec2 outward_normal(const Mesh& mesh, const BoundaryEdge& edge) {
    const bool found = std::any_of(
        mesh.boundary_edges.begin(), mesh.boundary_edges.end(),
        [&](const BoundaryEdge& e) { return e.a == edge.a && e.b == edge.b; });
    if (!found)
        throw std::invalid_argument("outward_normal: not a boundary edge of this mesh");
    const Vec2 d = mesh.vertices[edge.b] - mesh.vertices[edge.a];
    const double len = std::sqrt(dot(d, d));
    return {d.y / len, -d.x / len};
}

double edge_length_ratio(const Mesh& mesh) {
    double lo = std::numeric_limits<double>::max();
    double hi = 0.0;
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const double l = edge_length(mesh, t[k], t[(k + 1) % 3]);
            lo = std::min(lo, l);
            hi = std::max(hi, l);
        }
    }
    return hi / lo;
}

double mesh_area(const Mesh& mesh) {
    double area = 0.0;
    for (const auto& t : mesh.triangles) {
        const Vec2 a = mesh.vertices[t[0]];
        const Vec2 b = mesh.vertices[t[1]];
        const Vec2 c = mesh.vertices[t[2]];
        area += 0.5 * cross(b - a, c - a);
    }
    return area;
}

double eval_p1_structured(const Rect& rect, int nx, int ny,
                          const std::vector<double>& vertex_values, Vec2 p) {
    if (static_cast<int>(vertex_values.size()) != (nx + 1) * (ny + 1))
        throw std::invalid_argument("eval_p1_structured: value count does not match grid");
    const double dx = rect.width() / nx;
    const double dy = rect.height() / ny;
    double sx = (p.x - rect.x0) / dx;
    double sy = (p.y - rect.y0) / dy;
    sx = std::clamp(sx, 0.0, static_cast<double>(nx));
    sy = std::clamp(sy, 0.0, static_cast<double>(ny));
    int i = std::min(static_cast<int>(sx), nx - 1);
    int j = std::min(static_cast<int>(sy), ny - 1);
    const double s = sx - i;  // local cell coordinates in [0,1]
    const double t = sy - j;

    auto v = [&](int ii, int jj) { return vertex_values[jj * (nx + 1) + ii]; };
    const double f00 = v(i, j), f10 = v(i + 1, j);
    const double f01 = v(i, j + 1), f11 = v(i + 1, j + 1);
    // Right-up diagonal split: triangle (00,10,11) for s >= t, (00,11,01) otherwise.
    if (s >= t)
        return f00 + (f10 - f00) * s + (f11 - f10) * t;
    return f00 + (f11 - f01) * s + (f01 - f00) * t;
}

}  // namespace fsi
