#pragma once

#include <string>
#include <vector>

#include "fsi/fem.hpp"

namespace fsi {

enum class SchemeKind { Loose, Monolithic };

struct RunConfig {
    // geometry
    double L = 0.0, R = 0.0, eps = 0.0;
    // resolution
    int nx = 0, ny_f = 0, ny_s = 0;
    // time
    double dt = 0.0, T = 0.0;
    PhysicalParams params;
    SchemeKind scheme = SchemeKind::Loose;
    int n_corrections = 0;
    // inlet pulse
    double inlet_amplitude = 0.0, inlet_half_period = 0.0;
    // outputs
    std::vector<double> snapshot_times;
    std::string csv_prefix = "wave";
    bool write_vtk = false;
    bool deterministic = true;  // reserved for a parallel backend; runs are sequential

    int n_steps() const;
    void validate() const;
};

/// Strict flat key-value parser (`key = value`, `#` comments). Unknown keys
/// and missing physical keys are errors; messages carry the key names.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Half-sine pressure pulse: amplitude*sin(pi t / half_period) while the
/// pulse lasts, identically zero afterwards.
double inlet_pressure(double t, double amplitude, double half_period);

}  // namespace fsi
