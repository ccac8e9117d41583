// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "oracles.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oracles {

std::vector<float> integral_matrix(int F, double bin_hz) {
  if (F < 2) throw std::invalid_argument("integral_matrix: F < 2");
  if (!(bin_hz > 0.0)) throw std::invalid_argument("integral_matrix: bin_hz <= 0");
  std::vector<float> u(static_cast<std::size_t>(3600) * static_cast<std::size_t>(F), 0.0f);
  for (int fc = 600; fc < 4200; ++fc) {
    float* row = u.data() + static_cast<std::size_t>(fc - 600) * static_cast<std::size_t>(F);
    const double x = 0.1 * static_cast<double>(fc);
    const int kmax = static_cast<int>(std::llround(8000.0 / x));
    int loc_last = 0;
    double peak_last = 1.0;
    for (int k = 1; k <= kmax; ++k) {
      const double pos = (x * static_cast<double>(k)) / bin_hz;
      const int loc = static_cast<int>(std::llround(pos));
      if (loc >= F) break;
      const double peak = 1.0 / std::sqrt(static_cast<double>(k));
      row[loc] = static_cast<float>(peak);
      const int gap = loc - loc_last;
      if (gap > 1) {
        const double span = static_cast<double>(gap);
        for (int i = 0; i <= gap; ++i) {
          const double s = static_cast<double>(i) / span;
          const double c = std::cos((2.0 * M_PI) * s);
          const double l = peak_last + (peak - peak_last) * s;
          row[loc_last + i] = static_cast<float>(c * l);
        }
      } else {
        const double avg = 0.5 * (peak_last + peak);
        row[loc] = static_cast<float>(static_cast<double>(row[loc]) - avg);
        row[loc_last] = static_cast<float>(static_cast<double>(row[loc_last]) - avg);
      }
      loc_last = loc;
      peak_last = peak;
    }
  }
  return u;
}

double si_snr(const std::vector<double>& est, const std::vector<double>& ref) {
  if (est.size() != ref.size() || est.empty())
    throw std::invalid_argument("si_snr: size mismatch or empty");
  double dot = 0.0;
  double rr = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    dot += est[i] * ref[i];
    rr += ref[i] * ref[i];
  }
  if (rr == 0.0) throw std::domain_error("si_snr: zero reference");
  const double a = dot / rr;
  double sn = 0.0;
  double en = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double s = a * ref[i];
    const double e = est[i] - s;
    sn += s * s;
    en += e * e;
  }
  if (en == 0.0) return 60.0;
  if (sn == 0.0) return -60.0;
  double db = 10.0 * std::log10(sn / en);
  if (db > 60.0) db = 60.0;
  if (db < -60.0) db = -60.0;
  return db;
}

std::vector<double> significance_naive(const std::vector<double>& mag, int T, int F,
                                       const std::vector<float>& U) {
  if (mag.size() != static_cast<std::size_t>(T) * F)
    throw std::invalid_argument("significance_naive: mag size");
  if (U.size() != static_cast<std::size_t>(3600) * F)
    throw std::invalid_argument("significance_naive: U size");
  std::vector<double> q(static_cast<std::size_t>(T) * 3600, 0.0);
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < 3600; ++j) {
      double acc = 0.0;
      for (int f = 0; f < F; ++f) {
        acc += std::sqrt(mag[static_cast<std::size_t>(t) * F + f]) *
               static_cast<double>(U[static_cast<std::size_t>(j) * F + f]);
      }
      q[static_cast<std::size_t>(t) * 3600 + j] = acc;
    }
  }
  return q;
}

std::vector<std::complex<double>> dft_real(const std::vector<double>& frame) {
  const int n = static_cast<int>(frame.size());
  std::vector<std::complex<double>> bins(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) {
    double re = 0.0;
    double im = 0.0;
    for (int m = 0; m < n; ++m) {
      const double ang = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(m) /
                         static_cast<double>(n);
      re += frame[m] * std::cos(ang);
      im += frame[m] * std::sin(ang);
    }
    bins[k] = {re, im};
  }
  return bins;
}

std::vector<double> idft_onesided(const std::vector<std::complex<double>>& bins, int n) {
  if (static_cast<int>(bins.size()) != n / 2 + 1)
    throw std::invalid_argument("idft_onesided: bin count");
  std::vector<double> out(n, 0.0);
  for (int m = 0; m < n; ++m) {
    double acc = bins[0].real();
    for (int k = 1; k < n / 2; ++k) {
      const double ang = 2.0 * M_PI * static_cast<double>(k) * static_cast<double>(m) /
                         static_cast<double>(n);
      acc += 2.0 * (bins[k].real() * std::cos(ang) - bins[k].imag() * std::sin(ang));
    }
    // Nyquist term (n even) appears once.
    if (n % 2 == 0) {
      const double ang = 2.0 * M_PI * static_cast<double>(n / 2) * static_cast<double>(m) /
                         static_cast<double>(n);
      acc += bins[n / 2].real() * std::cos(ang) - bins[n / 2].imag() * std::sin(ang);
    } else {
      const double ang = 2.0 * M_PI * static_cast<double>(n / 2) * static_cast<double>(m) /
                         static_cast<double>(n);
      acc += 2.0 * (bins[n / 2].real() * std::cos(ang) - bins[n / 2].imag() * std::sin(ang));
    }
    out[m] = acc / static_cast<double>(n);
  }
  return out;
}

}  // namespace oracles
