#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "fsi/mesh.hpp"

namespace fsi {

/// CSV file with a fixed header; numbers are written with %.17g so repeated
/// deterministic runs produce byte-identical files.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);

    void row(std::initializer_list<double> values);
    void row(const std::vector<double>& values);
    /// cells written verbatim (for non-numeric columns)
    void row_text(const std::vector<std::string>& cells);
    void flush() { out_.flush(); }

    static std::string format(double v);

private:
    std::ofstream out_;
    std::size_t n_columns_;
};

/// Legacy VTK 3.0 ASCII UNSTRUCTURED_GRID snapshot (triangle cell type 5)
/// with POINT_DATA vectors `velocity`, `displacement` and scalar `pressure`.
/// Field spans may be empty, in which case zeros are written.
void write_vtk(const std::string& path, const Mesh& mesh,
               std::span<const double> velocity = {},
               std::span<const double> displacement = {},
               std::span<const double> pressure = {});

}  // namespace fsi
