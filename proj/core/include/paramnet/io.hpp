#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "paramnet/analysis.hpp"
#include "paramnet/network.hpp"

namespace paramnet::io {

/// Doubles are printed with 17 significant digits so that emit -> parse ->
/// emit is byte-identical.
std::string fmt17(double v);

// ---- network spec files (JSON) ----
// { "modes":     [{"name", "omega_ghz", "kappa_mhz", "conjugated"}, ...],
//   "couplings": [{"a", "b", "kind": "gain"|"conversion", "magnitude_mhz",
//                  "phase_rad"}, ...] }
// Unknown keys are rejected; the parsed network must pass validate_network.

std::string network_to_json(const ModeNetwork& net);
ModeNetwork network_from_json(const std::string& text);
ModeNetwork load_network(const std::string& path);

// ---- scattering matrices (JSON) ----
// { "signature": [1,-1,...], "delta_rad_s": 0.0, "re": [[...]], "im": [[...]] }

std::string smatrix_to_json(const ScatteringMatrix& s);
ScatteringMatrix smatrix_from_json(const std::string& text);
ScatteringMatrix load_smatrix(const std::string& path);

std::string coupling_matrix_to_json(const DynamicalMatrix& m);

// ---- sweep outputs ----
// CSV columns: delta, then for each ordered pair (i,j): Sij_re, Sij_im,
// Sij_db with db = 10 log10 |S|^2.

std::string sweep_to_csv(const SweepResult& sweep);
SweepResult sweep_from_csv(const std::string& text);

std::string sweep_to_json(const SweepResult& sweep);

/// Touchstone v1 (.sNp): "# GHz S RI R 50", standard row order (2-port uses
/// the S11 S21 S12 S22 order). The frequency column is the signal detuning
/// offset from the per-port carriers, recorded in comment lines, since a
/// pumped parametric network has no single frequency axis.
std::string sweep_to_touchstone(const SweepResult& sweep, const ModeNetwork& net);
SweepResult sweep_from_touchstone(const std::string& text, int n_ports);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace paramnet::io
