#include "isac/signal.hpp"

#include "isac/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace isac {

ComplexSequence::ComplexSequence(CVec samples, double spacing, Domain domain)
    : samples_(std::move(samples)), spacing_(spacing), domain_(domain)
{
    if (samples_.empty())
        throw DimensionError("ComplexSequence needs at least one sample");
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
        throw DomainError("ComplexSequence spacing must be positive and finite");
}

double ComplexSequence::energy() const noexcept { return isac::energy(samples_); }

CMatrix::CMatrix(std::size_t rows, std::size_t cols, cplx fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

double CMatrix::frobenius_sq() const noexcept { return isac::energy(data_); }

double energy(std::span<const cplx> x) noexcept
{
    double e = 0.0;
    for (const auto& v : x)
        e += std::norm(v);
    return e;
}

// ---- constellations -------------------------------------------------------

const char* to_string(Modulation m) noexcept
{
    switch (m) {
    case Modulation::qpsk: return "QPSK";
    case Modulation::qam16: return "16QAM";
    case Modulation::qam64: return "64QAM";
    }
    return "?";
}

Modulation modulation_from_string(const std::string& name)
{
    std::string n;
    for (char c : name)
        n += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (n == "QPSK" || n == "4QAM") return Modulation::qpsk;
    if (n == "16QAM" || n == "QAM16") return Modulation::qam16;
    if (n == "64QAM" || n == "QAM64") return Modulation::qam64;
    throw DomainError("unknown modulation '" + name + "'");
}

namespace {

// Gray label g (bits_per_axis wide) -> PAM amplitude. Label 0 is the
// positive extreme and neighbouring amplitudes differ in one bit.
double gray_pam_level(unsigned label, int bits_per_axis)
{
    unsigned index = 0;
    for (unsigned g = label; g; g >>= 1)
        index ^= g;
    const int levels = 1 << bits_per_axis;
    return static_cast<double>(levels - 1) - 2.0 * static_cast<double>(index);
}

Constellation make_square_qam(Modulation m, int bits)
{
    const int per_axis = bits / 2;
    const int levels = 1 << per_axis;
    const double norm = std::sqrt(2.0 * (levels * levels - 1) / 3.0);
    Constellation c{m, bits, {}};
    c.points.resize(std::size_t{1} << bits);
    const unsigned mask = (1u << per_axis) - 1u;
    for (unsigned label = 0; label < c.points.size(); ++label) {
        const double i = gray_pam_level(label >> per_axis, per_axis);
        const double q = gray_pam_level(label & mask, per_axis);
        c.points[label] = cplx(i, q) / norm;
    }
    return c;
}

} // namespace

const Constellation& constellation(Modulation m)
{
    static const Constellation qpsk = make_square_qam(Modulation::qpsk, 2);
    static const Constellation qam16 = make_square_qam(Modulation::qam16, 4);
    static const Constellation qam64 = make_square_qam(Modulation::qam64, 6);
    switch (m) {
    case Modulation::qpsk: return qpsk;
    case Modulation::qam16: return qam16;
    case Modulation::qam64: return qam64;
    }
    return qpsk;
}

ComplexSequence map_bits(std::span<const std::uint8_t> bits, const Constellation& c,
                         double spacing, Domain domain)
{
    const auto bps = static_cast<std::size_t>(c.bits_per_symbol);
    if (bits.empty() || bits.size() % bps != 0)
        throw DimensionError("bit count " + std::to_string(bits.size()) +
                             " is not a positive multiple of " + std::to_string(bps));
    CVec out(bits.size() / bps);
    for (std::size_t s = 0; s < out.size(); ++s) {
        unsigned label = 0;
        for (std::size_t b = 0; b < bps; ++b)
            label = (label << 1) | (bits[s * bps + b] & 1u);
        out[s] = c.points[label];
    }
    return ComplexSequence(std::move(out), spacing, domain);
}

// ---- transforms -----------------------------------------------------------

namespace {

// Plans are created once per (length, direction) and executed with the
// new-array interface, which FFTW documents as thread safe.
class PlanCache {
public:
    static PlanCache& instance()
    {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n, int sign)
    {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;
        std::vector<fftw_complex> scratch(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, scratch.data(), scratch.data(), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache()
    {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

void execute(CVec& x, int sign)
{
    if (x.size() <= 1)
        return;
    fftw_plan p = PlanCache::instance().get(static_cast<int>(x.size()), sign);
    auto* data = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(p, data, data);
}

} // namespace

void fft_inplace(CVec& x) { execute(x, FFTW_FORWARD); }
void ifft_inplace(CVec& x) { execute(x, FFTW_BACKWARD); }

CVec dft(std::span<const cplx> x)
{
    CVec out(x.begin(), x.end());
    fft_inplace(out);
    const double s = 1.0 / std::sqrt(static_cast<double>(out.size()));
    for (auto& v : out)
        v *= s;
    return out;
}

CVec idft(std::span<const cplx> x)
{
    CVec out(x.begin(), x.end());
    ifft_inplace(out);
    const double s = 1.0 / std::sqrt(static_cast<double>(out.size()));
    for (auto& v : out)
        v *= s;
    return out;
}

ComplexSequence dft(const ComplexSequence& x)
{
    const double step = 1.0 / (static_cast<double>(x.size()) * x.spacing());
    return ComplexSequence(dft(x.samples()), step, Domain::frequency);
}

ComplexSequence idft(const ComplexSequence& x)
{
    const double step = 1.0 / (static_cast<double>(x.size()) * x.spacing());
    return ComplexSequence(idft(x.samples()), step, Domain::time);
}

// ---- correlation and spectra ----------------------------------------------

CVec acorr_aperiodic(std::span<const cplx> x)
{
    const std::size_t n = x.size();
    if (n == 0)
        return {};
    CVec buf(2 * n, cplx{});
    std::copy(x.begin(), x.end(), buf.begin());
    fft_inplace(buf);
    for (auto& v : buf)
        v = std::norm(v);
    ifft_inplace(buf);
    const double s = 1.0 / static_cast<double>(buf.size());
    CVec r(n);
    for (std::size_t l = 0; l < n; ++l)
        r[l] = buf[l] * s;
    return r;
}

ComplexSequence acorr_aperiodic(const ComplexSequence& x)
{
    return ComplexSequence(acorr_aperiodic(x.samples()), x.spacing(), x.domain());
}

CVec acorr_circular(std::span<const cplx> x)
{
    CVec buf(x.begin(), x.end());
    if (buf.empty())
        return buf;
    fft_inplace(buf);
    for (auto& v : buf)
        v = std::norm(v);
    ifft_inplace(buf);
    const double s = 1.0 / static_cast<double>(buf.size());
    for (auto& v : buf)
        v *= s;
    return buf;
}

ComplexSequence acorr_circular(const ComplexSequence& x)
{
    return ComplexSequence(acorr_circular(x.samples()), x.spacing(), x.domain());
}

RVec psd(std::span<const cplx> x)
{
    const CVec X = dft(x);
    RVec p(X.size());
    std::transform(X.begin(), X.end(), p.begin(), [](const cplx& v) { return std::norm(v); });
    return p;
}

RVec psd(const ComplexSequence& x) { return psd(x.samples()); }

CVec xcorr(std::span<const cplx> y, std::span<const cplx> ref)
{
    const std::size_t n = y.size() + ref.size();
    CVec Y(n, cplx{}), R(n, cplx{});
    std::copy(y.begin(), y.end(), Y.begin());
    std::copy(ref.begin(), ref.end(), R.begin());
    fft_inplace(Y);
    fft_inplace(R);
    for (std::size_t k = 0; k < n; ++k)
        Y[k] *= std::conj(R[k]);
    ifft_inplace(Y);
    const double s = 1.0 / static_cast<double>(n);
    CVec c(y.size());
    for (std::size_t l = 0; l < y.size(); ++l)
        c[l] = Y[l] * s;
    return c;
}

} // namespace isac
