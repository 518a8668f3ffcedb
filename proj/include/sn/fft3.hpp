#pragma once

#include <complex>

#include "sn/field.hpp"

// Thin RAII wrappers over FFTW3 plans. Plans are created with FFTW_ESTIMATE
// (deterministic algorithm choice, so repeated runs are bitwise identical)
// and FFTW_UNALIGNED (safe to execute on any std::vector storage).
// Transforms are unnormalized; callers fold in the 1/n^3 where needed.

struct fftw_plan_s;

namespace sn {

class Fft3C2C {
public:
    explicit Fft3C2C(int n);
    ~Fft3C2C();
    Fft3C2C(const Fft3C2C&) = delete;
    Fft3C2C& operator=(const Fft3C2C&) = delete;

    void forward(cdouble* a) const;  // exp(-i k x) convention
    void backward(cdouble* a) const; // exp(+i k x), unnormalized

    int n() const { return n_; }

private:
    int n_;
    fftw_plan_s* fwd_;
    fftw_plan_s* bwd_;
};

// Real-to-complex transforms on an m^3 real box; the spectral array is
// m * m * (m/2 + 1) with the x index halved (x fastest in both layouts).
class Fft3R2C {
public:
    explicit Fft3R2C(int m);
    ~Fft3R2C();
    Fft3R2C(const Fft3R2C&) = delete;
    Fft3R2C& operator=(const Fft3R2C&) = delete;

    void forward(double* in, cdouble* out) const;
    void backward(cdouble* in, double* out) const; // clobbers `in` (c2r), unnormalized

    int m() const { return m_; }
    std::size_t spectral_size() const {
        return static_cast<std::size_t>(m_) * m_ * (m_ / 2 + 1);
    }

private:
    int m_;
    fftw_plan_s* fwd_;
    fftw_plan_s* bwd_;
};

} // namespace sn
