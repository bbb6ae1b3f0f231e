#include "fsi/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace fsi {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path), n_columns_(columns.size()) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open '" + path + "'");
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

std::string CsvWriter::format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::row(std::initializer_list<double> values) {
    row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_)
        throw std::invalid_argument("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << format(values[i]);
    out_ << '\n';
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_)
        throw std::invalid_argument("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
}

void write_vtk(const std::string& path, const Mesh& mesh, std::span<const double> velocity,
               std::span<const double> displacement, std::span<const double> pressure) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_vtk: cannot open '" + path + "'");

    const int nv = mesh.n_vertices();
    const int nt = mesh.n_triangles();
    out << "# vtk DataFile Version 3.0\n";
    out << "fsi snapshot\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nv << " double\n";
    for (const Vec2& v : mesh.vertices)
        out << CsvWriter::format(v.x) << ' ' << CsvWriter::format(v.y) << " 0\n";
    out << "CELLS " << nt << ' ' << 4 * nt << '\n';
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    out << "CELL_TYPES " << nt << '\n';
    for (int i = 0; i < nt; ++i) out << "5\n";

    auto vec_at = [](std::span<const double> f, int v, int c) {
        return f.empty() ? 0.0 : f[2 * v + c];
    };
    out << "POINT_DATA " << nv << '\n';
    out << "VECTORS velocity double\n";
    for (int v = 0; v < nv; ++v)
        out << CsvWriter::format(vec_at(velocity, v, 0)) << ' '
            << CsvWriter::format(vec_at(velocity, v, 1)) << " 0\n";
    out << "VECTORS displacement double\n";
    for (int v = 0; v < nv; ++v)
        out << CsvWriter::format(vec_at(displacement, v, 0)) << ' '
            << CsvWriter::format(vec_at(displacement, v, 1)) << " 0\n";
    out << "SCALARS pressure double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int v = 0; v < nv; ++v)
        out << CsvWriter::format(pressure.empty() ? 0.0 : pressure[v]) << '\n';
}

}  // namespace fsi
