#pragma once

#include <vector>

namespace fsi {

struct TimeGrid {
    double dt = 0.0;
    int n_steps = 0;
    double T() const { return dt * n_steps; }
};

/// All unknowns of the coupled problem at one time level. Velocity and
/// displacement vectors are interleaved (dof = 2*vertex + component);
/// lambda lives on the shared interface trace indexing (2*node + component).
struct CoupledState {
    std::vector<double> u;       // fluid velocity
    std::vector<double> p;       // fluid pressure
    std::vector<double> q;       // solid velocity
    std::vector<double> eta;     // solid displacement
    std::vector<double> lambda;  // interface traction
    double t = 0.0;
};

}  // namespace fsi
