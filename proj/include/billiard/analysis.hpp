#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/gtd.hpp"
#include "billiard/helmholtz.hpp"

namespace billiard {

enum class SweepKind { Frequency, Distance };

const char* to_string(SweepKind kind);

// S11 samples along k (1/cm) or D (cm) with the parameters that produced
// them. For frequency sweeps `separation` is the fixed D; for distance
// sweeps `wavenumber` is the fixed k.
struct ComplexSpectrum {
  SweepKind kind = SweepKind::Frequency;
  std::vector<double> axis;
  std::vector<Complex> s11;
  std::vector<double> tsq;

  double radius = 0.0;
  double alpha_deg = 0.0;
  double separation = 0.0;
  double antenna_offset = 0.0;
  double wavenumber = 0.0;
  double kappa = 1.0;
  std::string model = "quantum";

  std::size_t size() const { return axis.size(); }
};

struct SweepOptions {
  SolverOptions solver;
  int workers = 1;
};

// Uniform in k over [k(f_min), k(f_max)].
ComplexSpectrum sweep_frequency(const ResonatorGeometry& geom, double f_min_ghz, double f_max_ghz,
                                int samples, double kappa, const SweepOptions& opts = {});

// Geometry rebuilt at every D of a uniform grid; R, alpha, d_a taken from
// `base`.
ComplexSpectrum sweep_distance(const ResonatorGeometry& base, double d_min, double d_max,
                               int samples, WaveNumber k, double kappa,
                               const SweepOptions& opts = {});

// Semiclassical counterparts (orbit sum through the same antenna model).
ComplexSpectrum semiclassical_sweep_frequency(const ResonatorGeometry& geom, double f_min_ghz,
                                              double f_max_ghz, int samples, double kappa,
                                              double length_max,
                                              const SemiclassicalOptions& sc = {},
                                              int workers = 1);

ComplexSpectrum semiclassical_sweep_distance(const ResonatorGeometry& base, double d_min,
                                             double d_max, int samples, WaveNumber k,
                                             double kappa, double length_max,
                                             const SemiclassicalOptions& sc = {},
                                             int workers = 1);

enum class PeakKind { FabryPerot, Diffractive, Unclassified };

const char* to_string(PeakKind kind);

struct ModeLabel {
  int n = 0;
  int m = 0;
  bool ambiguous = false;
};

struct Peak {
  double center = 0.0;
  double width = 0.0;   // full width at half maximum
  double height = 0.0;  // fitted value at the centre
  double prominence = 0.0;
  PeakKind kind = PeakKind::Unclassified;
  std::optional<ModeLabel> label;
  bool fit_failed = false;  // raw centre kept, width is the crude estimate
};

// Local maxima whose topographic prominence is at least `prominence`,
// refined by a joint Lorentzian-plus-baseline least-squares fit of each
// cluster of overlapping peaks.
std::vector<Peak> fit_peaks(std::span<const double> axis, std::span<const double> values,
                            double prominence);

std::vector<Peak> fit_peaks(const ComplexSpectrum& spectrum, double prominence);

// Classification by diffraction ablation: a peak is FabryPerot within
// `tolerance` of a peak of the no-diffraction semiclassical sweep,
// Diffractive within `tolerance` of a peak that appears only once
// diffraction is on, else Unclassified.
class PeakClassifier {
 public:
  PeakClassifier(std::vector<double> ladder, std::vector<double> diffraction_only,
                 double tolerance);

  static PeakClassifier from_sweeps(const ComplexSpectrum& without_diffraction,
                                    const ComplexSpectrum& with_diffraction, double prominence,
                                    double tolerance);

  PeakKind classify(double center) const;
  void apply(std::vector<Peak>& peaks) const;

  const std::vector<double>& ladder() const { return ladder_; }
  const std::vector<double>& diffraction_only() const { return diffraction_only_; }

 private:
  std::vector<double> ladder_;
  std::vector<double> diffraction_only_;
  double tolerance_;
};

struct DistanceClassification {
  PeakClassifier classifier;
  double d_start = 0.0;  // semiclassical sweeps start here
  ComplexSpectrum without_diffraction;
  ComplexSpectrum with_diffraction;
};

// Runs the semiclassical D-sweep with and without diffraction over the
// unstable part of [d_min, d_max] (from R + lambda/4, where the orbit sum
// is valid) and builds the classifier with tolerance lambda/10.
DistanceClassification classify_distance_peaks(const ResonatorGeometry& base, double d_min,
                                               double d_max, int samples, WaveNumber k,
                                               double kappa, double length_max,
                                               double prominence, int workers = 1);

// n: sign changes of the dominant real quadrature of psi along the axis
// from the antenna to the vertex, plus one. m: sign changes along the arc
// about the arc centre through (D/2, 0), clipped to the resonator.
ModeLabel label_mode(const FieldMap& field, const ResonatorGeometry& geom);

enum class Window { Hann, Rectangular };

const char* to_string(Window window);
Window parse_window(const std::string& name);

struct ReturnSpectrumOptions {
  Window window = Window::Hann;
  double max_length_over_radius = 10.0;
  int oversample = 8;  // length samples per resolution bin
};

struct ReturnSpectrum {
  std::vector<double> length_over_radius;
  std::vector<Complex> amplitude;
  std::vector<double> magnitude;
  Window window = Window::Hann;
  double k_min = 0.0, k_max = 0.0;
  double radius = 0.0;
  // 2 pi / (k_max - k_min), the length resolution, in units of R.
  double resolution = 0.0;
  bool resolution_ok = false;  // resolution below 0.05 R
};

// Windowed, mean-subtracted transform sum_j w_j (S_j - <S>) e^{-i k_j L}.
// Throws NumericalError if the k axis is not uniform.
ReturnSpectrum return_spectrum(std::span<const double> k, std::span<const Complex> s11,
                               double radius, const ReturnSpectrumOptions& opts = {});

ReturnSpectrum return_spectrum(const ComplexSpectrum& spectrum,
                               const ReturnSpectrumOptions& opts = {});

struct ShiftMap {
  double x0 = 0.0, y0 = 0.0, h = 1.0;
  int nx = 0, ny = 0;
  double sphere_radius = 0.0;
  std::vector<double> shift;
  std::vector<unsigned char> mask;     // valid nodes
  std::vector<unsigned char> contour;  // shift <= 0.2 * most negative shift
};

// Bead perturbation 4 pi r0^3 (h2/2 - e2) with e2 normalised to a unit
// maximum and h2 scaled by the same factor.
ShiftMap slater_shift_map(const FieldMap& field, double sphere_radius);

}  // namespace billiard
