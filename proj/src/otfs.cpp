#include "isac/otfs.hpp"

#include "isac/error.hpp"

#include <cctype>
#include <algorithm>
#include <cmath>

namespace isac::otfs {

DdGrid::DdGrid(std::size_t m_tau, std::size_t n_nu, double es, double ep)
    : M_tau(m_tau), N_nu(n_nu), symbols(m_tau, n_nu), pilot_mask(m_tau * n_nu, 0), E_s(es), E_p(ep)
{
    if (m_tau == 0 || n_nu == 0)
        throw DimensionError("delay-Doppler grid must be nonempty");
    if (es < 0.0 || ep < 0.0)
        throw DomainError("symbol energies must be nonnegative");
}

std::size_t DdGrid::pilot_count() const noexcept
{
    std::size_t c = 0;
    for (auto v : pilot_mask)
        c += v != 0;
    return c;
}

const char* to_string(PilotAxis a) noexcept
{
    return a == PilotAxis::delay ? "delay" : "doppler";
}

PilotAxis pilot_axis_from_string(const std::string& name)
{
    std::string n;
    for (char c : name)
        n += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (n == "delay")
        return PilotAxis::delay;
    if (n == "doppler")
        return PilotAxis::doppler;
    throw DomainError("unknown pilot axis '" + name + "'");
}

namespace {

// Unitary transform along columns (over rows, length M) or rows (length N).
void transform_columns(CMatrix& a, bool forward)
{
    CVec col(a.rows());
    for (std::size_t n = 0; n < a.cols(); ++n) {
        for (std::size_t m = 0; m < a.rows(); ++m)
            col[m] = a(m, n);
        col = forward ? dft(col) : idft(col);
        for (std::size_t m = 0; m < a.rows(); ++m)
            a(m, n) = col[m];
    }
}

void transform_rows(CMatrix& a, bool forward)
{
    CVec row(a.cols());
    for (std::size_t m = 0; m < a.rows(); ++m) {
        for (std::size_t n = 0; n < a.cols(); ++n)
            row[n] = a(m, n);
        row = forward ? dft(row) : idft(row);
        for (std::size_t n = 0; n < a.cols(); ++n)
            a(m, n) = row[n];
    }
}

} // namespace

CMatrix isfft(const CMatrix& dd)
{
    CMatrix tf = dd;
    transform_columns(tf, true);
    transform_rows(tf, false);
    return tf;
}

CMatrix sfft(const CMatrix& tf)
{
    CMatrix dd = tf;
    transform_columns(dd, false);
    transform_rows(dd, true);
    return dd;
}

CMatrix isfft(const DdGrid& grid) { return isfft(grid.symbols); }

ComplexSequence synthesize_time(const DdGrid& grid, double subcarrier_spacing)
{
    if (!(subcarrier_spacing > 0.0))
        throw DomainError("subcarrier spacing must be positive");
    const CMatrix tf = isfft(grid);
    const std::size_t M = grid.M_tau, N = grid.N_nu;
    CVec out(M * N);
    CVec col(M);
    for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t m = 0; m < M; ++m)
            col[m] = tf(m, n);
        const CVec t = idft(col);
        std::copy(t.begin(), t.end(), out.begin() + static_cast<std::ptrdiff_t>(n * M));
    }
    const double dt = 1.0 / (static_cast<double>(M) * subcarrier_spacing);
    return ComplexSequence(std::move(out), dt, Domain::time);
}

CMatrix wigner(std::span<const cplx> time, std::size_t m_tau, std::size_t n_nu)
{
    if (time.size() != m_tau * n_nu)
        throw DimensionError("time signal length does not match grid size");
    CMatrix tf(m_tau, n_nu);
    CVec col(m_tau);
    for (std::size_t n = 0; n < n_nu; ++n) {
        std::copy(time.begin() + static_cast<std::ptrdiff_t>(n * m_tau),
                  time.begin() + static_cast<std::ptrdiff_t>((n + 1) * m_tau), col.begin());
        const CVec f = dft(col);
        for (std::size_t m = 0; m < m_tau; ++m)
            tf(m, n) = f[m];
    }
    return tf;
}

std::vector<std::pair<std::size_t, std::size_t>> pilot_cells(const DdGrid& grid, const PilotScheme& scheme)
{
    const bool along_delay = scheme.axis == PilotAxis::delay;
    const std::size_t len = along_delay ? grid.M_tau : grid.N_nu;
    if (scheme.count == 0 || scheme.count > len)
        throw DomainError("pilot count must lie in [1, " + std::to_string(len) + "]");
    if (scheme.anchor_delay >= grid.M_tau || scheme.anchor_doppler >= grid.N_nu)
        throw DomainError("pilot anchor outside the grid");
    const std::size_t step = len / scheme.count;
    const std::size_t start = along_delay ? scheme.anchor_delay : scheme.anchor_doppler;
    if (start + (scheme.count - 1) * step >= len)
        throw DomainError("pilot scheme runs past the end of the grid");
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    cells.reserve(scheme.count);
    for (std::size_t i = 0; i < scheme.count; ++i) {
        const std::size_t k = start + i * step;
        cells.emplace_back(along_delay ? k : scheme.anchor_delay, along_delay ? scheme.anchor_doppler : k);
    }
    return cells;
}

DdGrid place_pilots(const DdGrid& grid, const PilotScheme& scheme, Rng& rng)
{
    const auto cells = pilot_cells(grid, scheme);
    for (const auto& [m, n] : cells)
        if (grid.is_pilot(m, n))
            throw DomainError("pilot scheme overlaps an existing pilot");

    DdGrid out = grid;
    const double amp = std::sqrt(grid.E_s);
    const CVec data = random_symbols(grid.M_tau * grid.N_nu, Modulation::qpsk, rng);
    for (std::size_t m = 0; m < grid.M_tau; ++m)
        for (std::size_t n = 0; n < grid.N_nu; ++n)
            if (!grid.is_pilot(m, n))
                out.symbols(m, n) = amp * data[m * grid.N_nu + n];
    const double pilot = std::sqrt(grid.E_p);
    for (const auto& [m, n] : cells) {
        out.symbols(m, n) = pilot;
        out.pilot_mask[m * grid.N_nu + n] = 1;
    }
    return out;
}

} // namespace isac::otfs
