#pragma once

// Complex signal primitives shared by every other module.
//
// Transform convention: dft and idft are both scaled by 1/sqrt(N), so
//   idft(dft(x)) == x,   sum |x|^2 == sum |X|^2.
// With this convention the circular autocorrelation and the PSD satisfy
//   dft(acorr_circular(x)) == sqrt(N) * psd(x)
// which is the only stray factor in the package.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace isac {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;

enum class Domain { time, frequency };

// A finite complex sequence with explicit sample spacing (seconds for the
// time domain, hertz for the frequency domain).
class ComplexSequence {
public:
    ComplexSequence(CVec samples, double spacing, Domain domain = Domain::time);

    const CVec& samples() const noexcept { return samples_; }
    CVec& samples() noexcept { return samples_; }
    double spacing() const noexcept { return spacing_; }
    Domain domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const cplx& operator[](std::size_t i) const { return samples_[i]; }

    double energy() const noexcept;

private:
    CVec samples_;
    double spacing_;
    Domain domain_;
};

// Dense row-major complex matrix. Used for delay-Doppler / time-frequency
// grids and the small Kronecker products of the imaging model.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols, cplx fill = {});

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const CVec& data() const noexcept { return data_; }
    CVec& data() noexcept { return data_; }

    double frobenius_sq() const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVec data_;
};

double energy(std::span<const cplx> x) noexcept;

// ---- constellations -------------------------------------------------------

enum class Modulation { qpsk, qam16, qam64 };

const char* to_string(Modulation m) noexcept;
Modulation modulation_from_string(const std::string& name);

// Square Gray-labelled QAM with unit average energy. points[i] is the point
// whose bit label, read MSB first, is i. The first half of the label drives
// the in-phase axis, the second half the quadrature axis; bit value 0 on an
// axis maps to the positive extreme, so QPSK "00" is (1+j)/sqrt(2).
struct Constellation {
    Modulation order;
    int bits_per_symbol;
    CVec points;
};

const Constellation& constellation(Modulation m);

// One point per group of bits_per_symbol bits (MSB first). Bits are 0/1.
// Throws DimensionError when the length is not a multiple of bits_per_symbol.
ComplexSequence map_bits(std::span<const std::uint8_t> bits, const Constellation& c,
                         double spacing = 1.0, Domain domain = Domain::frequency);

// ---- transforms -----------------------------------------------------------

CVec dft(std::span<const cplx> x);
CVec idft(std::span<const cplx> x);

// Spacing maps time step dt -> frequency step 1/(N dt) and back.
ComplexSequence dft(const ComplexSequence& x);
ComplexSequence idft(const ComplexSequence& x);

// In-place unnormalized transforms on arbitrary lengths (FFTW backed).
void fft_inplace(CVec& x);
void ifft_inplace(CVec& x);

// ---- correlation and spectra ----------------------------------------------

// r(l) = sum_{k=0}^{N-1-l} conj(x_k) x_{k+l},  l = 0..N-1.
// Computed through a zero-padded FFT.
CVec acorr_aperiodic(std::span<const cplx> x);
ComplexSequence acorr_aperiodic(const ComplexSequence& x);

// r_c(l) = sum_k conj(x_k) x_{(k+l) mod N},  l = 0..N-1.
CVec acorr_circular(std::span<const cplx> x);
ComplexSequence acorr_circular(const ComplexSequence& x);

// |X[k]|^2 of the unitary DFT; sums to energy(x).
RVec psd(std::span<const cplx> x);
RVec psd(const ComplexSequence& x);

// c(l) = sum_k conj(ref_k) y_{k+l} for l = 0..|y|-1 (ref zero-extended).
CVec xcorr(std::span<const cplx> y, std::span<const cplx> ref);

} // namespace isac
