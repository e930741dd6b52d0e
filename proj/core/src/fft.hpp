#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <span>

namespace hermflow::detail {

/// 3D real <-> half-complex transforms of an n^3 grid with owned, aligned
/// buffers. Spectrum layout is n x n x (n/2 + 1). backward() is unnormalized.
class Fft3 {
 public:
  explicit Fft3(int n);
  ~Fft3();
  Fft3(const Fft3&) = delete;
  Fft3& operator=(const Fft3&) = delete;

  int n() const { return n_; }
  std::size_t real_size() const { return real_size_; }
  std::size_t spectrum_size() const { return spec_size_; }

  std::span<double> real() { return {real_, real_size_}; }
  std::span<std::complex<double>> spectrum() {
    return {reinterpret_cast<std::complex<double>*>(spec_), spec_size_};
  }

  void forward();   // real() -> spectrum()
  void backward();  // spectrum() -> real(); overwrites spectrum()

 private:
  int n_;
  std::size_t real_size_;
  std::size_t spec_size_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

}  // namespace hermflow::detail
