#pragma once

// Discrete OTFS with rectangular pulses at critical sampling.
//
// Grids are stored M_tau x N_nu (row = delay bin, column = Doppler bin).
//   isfft:  X_TF = F_M  X_DD  F_N^H
//   sfft:   X_DD = F_M^H X_TF F_N
// The Heisenberg transform maps TF column n to M time samples by an inverse
// DFT across frequency; columns are concatenated, so the time signal has
// M_tau * N_nu samples and the same energy as the grid.

#include "isac/random.hpp"
#include "isac/signal.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace isac::otfs {

struct DdGrid {
    std::size_t M_tau = 0;
    std::size_t N_nu = 0;
    CMatrix symbols;
    std::vector<std::uint8_t> pilot_mask; // row-major, 1 = pilot cell
    double E_s = 1.0;
    double E_p = 1.0;

    DdGrid() = default;
    DdGrid(std::size_t m_tau, std::size_t n_nu, double es = 1.0, double ep = 1.0);

    bool is_pilot(std::size_t m, std::size_t n) const { return pilot_mask[m * N_nu + n] != 0; }
    std::size_t pilot_count() const noexcept;
};

enum class PilotAxis { delay, doppler };

const char* to_string(PilotAxis a) noexcept;
PilotAxis pilot_axis_from_string(const std::string& name);

// count pilots equally spaced by floor(axis_length / count) along the chosen
// axis, starting at the anchor cell.
struct PilotScheme {
    PilotAxis axis = PilotAxis::delay;
    std::size_t count = 1;
    std::size_t anchor_delay = 0;
    std::size_t anchor_doppler = 0;
};

CMatrix isfft(const CMatrix& dd);
CMatrix sfft(const CMatrix& tf);
CMatrix isfft(const DdGrid& grid);

// Inverse of the Heisenberg step, back to a TF grid.
CMatrix wigner(std::span<const cplx> time, std::size_t m_tau, std::size_t n_nu);

ComplexSequence synthesize_time(const DdGrid& grid, double subcarrier_spacing);

// Cells of the scheme, in placement order. Throws DomainError when the scheme
// does not fit the grid.
std::vector<std::pair<std::size_t, std::size_t>> pilot_cells(const DdGrid& grid, const PilotScheme& scheme);

// Fills every cell with QPSK at energy E_s, then overwrites the pilot cells
// with sqrt(E_p). Data is drawn for all cells (pilots included) so that two
// schemes run from the same generator state share their data symbols.
DdGrid place_pilots(const DdGrid& grid, const PilotScheme& scheme, Rng& rng);

} // namespace isac::otfs
