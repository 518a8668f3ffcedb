#include "sn/fft3.hpp"

#include <fftw3.h>

#include <stdexcept>
#include <vector>

namespace sn {

namespace {
constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;
} // namespace

Fft3C2C::Fft3C2C(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("Fft3C2C: n must be positive");
    // Plan with a scratch buffer; FFTW_ESTIMATE never touches the data and
    // FFTW_UNALIGNED lets us execute on different arrays later.
    std::vector<cdouble> scratch(static_cast<std::size_t>(n) * n * n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    // Logical layout is idx = ix + n*(iy + n*iz), x fastest, so the FFTW
    // row-major dims are (z, y, x).
    fwd_ = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD, kFlags);
    bwd_ = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD, kFlags);
    if (!fwd_ || !bwd_) throw std::runtime_error("Fft3C2C: fftw planning failed");
}

Fft3C2C::~Fft3C2C() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
}

void Fft3C2C::forward(cdouble* a) const {
    auto* p = reinterpret_cast<fftw_complex*>(a);
    fftw_execute_dft(fwd_, p, p);
}

void Fft3C2C::backward(cdouble* a) const {
    auto* p = reinterpret_cast<fftw_complex*>(a);
    fftw_execute_dft(bwd_, p, p);
}

Fft3R2C::Fft3R2C(int m) : m_(m) {
    if (m <= 0 || m % 2 != 0) throw std::invalid_argument("Fft3R2C: m must be positive and even");
    std::vector<double> re(static_cast<std::size_t>(m) * m * m);
    std::vector<cdouble> sp(spectral_size());
    auto* cp = reinterpret_cast<fftw_complex*>(sp.data());
    fwd_ = fftw_plan_dft_r2c_3d(m, m, m, re.data(), cp, kFlags);
    bwd_ = fftw_plan_dft_c2r_3d(m, m, m, cp, re.data(), kFlags);
    if (!fwd_ || !bwd_) throw std::runtime_error("Fft3R2C: fftw planning failed");
}

Fft3R2C::~Fft3R2C() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
}

void Fft3R2C::forward(double* in, cdouble* out) const {
    fftw_execute_dft_r2c(fwd_, in, reinterpret_cast<fftw_complex*>(out));
}

void Fft3R2C::backward(cdouble* in, double* out) const {
    fftw_execute_dft_c2r(bwd_, reinterpret_cast<fftw_complex*>(in), out);
}

} // namespace sn
