#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace leocf {

/// Convergence knobs for the series evaluators.
struct SeriesControl {
  double rel_tol = 1e-10;
  int max_terms = 500;
};

/// Raised when a series fails to reach rel_tol within max_terms. Carries the
/// partial sum so callers can decide whether it is still usable.
class SeriesNonconvergence : public std::runtime_error {
 public:
  SeriesNonconvergence(const std::string& what, std::complex<double> partial)
      : std::runtime_error(what), partial_(partial) {}
  std::complex<double> partial() const { return partial_; }

 private:
  std::complex<double> partial_;
};

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

/// Kummer confluent hypergeometric Phi(a, b; z). Power series up to |z| = 30
/// (with the e^z Phi(b-a, b; -z) transformation for Re z < 0), asymptotic
/// expansion beyond. b must not be a nonpositive integer.
std::complex<double> kummer_phi(double a, double b, std::complex<double> z,
                                const SeriesControl& ctl = {});
double kummer_phi(double a, double b, double z, const SeriesControl& ctl = {});

/// Parabolic cylinder function D_{-2m}(z) for m >= 0.5 and real z >= 0.
double parabolic_cylinder_neg2m(double m, double z, const SeriesControl& ctl = {});

/// E[exp(-delta |h|)] for |h| Nakagami(m, 1), i.e. the one-link Laplace
/// factor of the fading amplitude, evaluated in the complex plane for
/// Re(delta) >= 0. Fold a large-scale loss beta and power omega into delta
/// as delta = s * sqrt(beta * omega). Internally selects between the
/// hypergeometric series form and the large-argument expansion, whichever
/// carries the smaller estimated rounding error, and bounds |result| by 1.
std::complex<double> nakagami_exp_moment(std::complex<double> delta, double m,
                                         const SeriesControl& ctl = {});

}  // namespace leocf
