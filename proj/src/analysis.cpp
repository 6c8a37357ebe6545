#include "billiard/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "billiard/errors.hpp"

namespace billiard {

const char* to_string(PeakKind kind) {
  switch (kind) {
    case PeakKind::FabryPerot: return "f";
    case PeakKind::Diffractive: return "d";
    case PeakKind::Unclassified: return "u";
  }
  return "u";
}

const char* to_string(Window window) { return window == Window::Hann ? "hann" : "rectangular"; }

Window parse_window(const std::string& name) {
  if (name == "hann") return Window::Hann;
  if (name == "rectangular" || name == "none") return Window::Rectangular;
  throw ConfigError("window", "expected hann or rectangular, got '" + name + "'");
}

// ---------------------------------------------------------------- peaks

namespace {

struct RawPeak {
  std::size_t index = 0;
  double prominence = 0.0;
  std::size_t left_base = 0, right_base = 0;
  double width = 0.0;
};

double crossing(std::span<const double> x, std::span<const double> y, std::size_t a,
                std::size_t b, double level) {
  // Linear interpolation of the level crossing between samples a and b.
  const double ya = y[a], yb = y[b];
  if (ya == yb) return x[a];
  return x[a] + (level - ya) * (x[b] - x[a]) / (yb - ya);
}

std::vector<RawPeak> find_raw_peaks(std::span<const double> x, std::span<const double> y,
                                    double min_prominence) {
  std::vector<RawPeak> out;
  const std::size_t n = y.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1])) continue;
    // Plateaus: take the left edge, require a drop afterwards.
    std::size_t j = i;
    while (j + 1 < n && y[j + 1] == y[i]) ++j;
    if (j + 1 >= n || !(y[j + 1] < y[i])) continue;

    RawPeak p;
    p.index = i;
    std::size_t l = i, lmin = i;
    while (l > 0 && y[l - 1] <= y[i]) {
      --l;
      if (y[l] < y[lmin]) lmin = l;
    }
    std::size_t r = j, rmin = j;
    while (r + 1 < n && y[r + 1] <= y[i]) {
      ++r;
      if (y[r] < y[rmin]) rmin = r;
    }
    p.left_base = lmin;
    p.right_base = rmin;
    p.prominence = y[i] - std::max(y[lmin], y[rmin]);
    if (p.prominence < min_prominence) continue;

    const double level = y[i] - 0.5 * p.prominence;
    std::size_t a = i;
    while (a > lmin && y[a] > level) --a;
    std::size_t b = j;
    while (b < rmin && y[b] > level) ++b;
    const double xl = a == i ? x[i] : crossing(x, y, a, a + 1, level);
    const double xr = b == j ? x[j] : crossing(x, y, b - 1, b, level);
    p.width = std::max(xr - xl, x[std::min(i + 1, n - 1)] - x[i]);
    out.push_back(p);
    i = j;
  }
  return out;
}

struct Lorentzians {
  int count = 0;
  // Parameters: (centre, fwhm, height) per peak, then a constant baseline.
  static double eval(const Eigen::VectorXd& p, int count, double x) {
    double v = p(3 * count);
    for (int q = 0; q < count; ++q) {
      const double g = 0.5 * p(3 * q + 1);
      const double u = x - p(3 * q);
      v += p(3 * q + 2) * g * g / (u * u + g * g);
    }
    return v;
  }
};

// Levenberg-Marquardt on the joint model; returns false on failure.
bool fit_cluster(std::span<const double> x, std::span<const double> y, std::size_t lo,
                 std::size_t hi, Eigen::VectorXd& p, int count) {
  const int m = static_cast<int>(hi - lo + 1);
  const int np = static_cast<int>(p.size());
  if (m <= np) return false;
  auto residuals = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r) {
    r.resize(m);
    for (int i = 0; i < m; ++i) r(i) = Lorentzians::eval(q, count, x[lo + i]) - y[lo + i];
    return r.squaredNorm();
  };
  Eigen::VectorXd r;
  double cost = residuals(p, r);
  double damping = 1e-3;
  Eigen::MatrixXd jac(m, np);
  for (int iter = 0; iter < 300; ++iter) {
    for (int i = 0; i < m; ++i) {
      const double xi = x[lo + i];
      for (int q = 0; q < count; ++q) {
        const double c = p(3 * q), g = 0.5 * p(3 * q + 1), h = p(3 * q + 2);
        const double u = xi - c;
        const double den = u * u + g * g;
        jac(i, 3 * q) = h * g * g * 2.0 * u / (den * den);
        jac(i, 3 * q + 1) = h * g * u * u / (den * den);
        jac(i, 3 * q + 2) = g * g / den;
      }
      jac(i, np - 1) = 1.0;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    bool improved = false;
    while (damping < 1e12) {
      Eigen::MatrixXd a = jtj;
      for (int d = 0; d < np; ++d) a(d, d) += damping * std::max(jtj(d, d), 1e-30);
      const Eigen::VectorXd step = a.ldlt().solve(-grad);
      Eigen::VectorXd trial = p + step;
      Eigen::VectorXd rt;
      const double tc = residuals(trial, rt);
      if (std::isfinite(tc) && tc < cost) {
        const double rel = (cost - tc) / std::max(cost, 1e-300);
        p = trial;
        r = rt;
        cost = tc;
        damping = std::max(damping / 3.0, 1e-12);
        improved = true;
        if (rel < 1e-12) iter = 1 << 20;
        break;
      }
      damping *= 4.0;
    }
    if (!improved) break;
  }
  for (int q = 0; q < count; ++q) {
    if (!(p(3 * q + 1) > 0.0) || !(p(3 * q + 2) > 0.0)) return false;
    if (p(3 * q) < x[lo] || p(3 * q) > x[hi]) return false;
  }
  return p.allFinite();
}

}  // namespace

std::vector<Peak> fit_peaks(std::span<const double> axis, std::span<const double> values,
                            double prominence) {
  if (axis.size() != values.size()) throw ConfigError("spectrum", "axis/value size mismatch");
  if (!(prominence > 0.0)) throw ConfigError("prominence", "must be positive");
  const std::vector<RawPeak> raw = find_raw_peaks(axis, values, prominence);
  std::vector<Peak> peaks;
  if (raw.empty()) return peaks;

  // Cluster peaks whose half-maximum regions come within two widths.
  std::size_t start = 0;
  while (start < raw.size()) {
    std::size_t end = start;
    while (end + 1 < raw.size() &&
           axis[raw[end + 1].index] - axis[raw[end].index] <
               2.0 * (raw[end].width + raw[end + 1].width)) {
      ++end;
    }
    const int count = static_cast<int>(end - start + 1);
    // Window: a few widths around the cluster, bounded by the valleys that
    // separate it from neighbouring clusters.
    auto clamp_index = [&](double xv) {
      const auto it = std::lower_bound(axis.begin(), axis.end(), xv);
      return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
          std::max<std::ptrdiff_t>(it - axis.begin(), 0),
          static_cast<std::ptrdiff_t>(axis.size() - 1)));
    };
    std::size_t lo = clamp_index(axis[raw[start].index] - 3.0 * raw[start].width);
    std::size_t hi = clamp_index(axis[raw[end].index] + 3.0 * raw[end].width);
    if (start > 0) {
      const std::size_t prev = raw[start - 1].index, cur = raw[start].index;
      const auto valley = std::min_element(values.begin() + static_cast<std::ptrdiff_t>(prev),
                                           values.begin() + static_cast<std::ptrdiff_t>(cur) + 1);
      lo = std::max(lo, static_cast<std::size_t>(valley - values.begin()));
    }
    if (end + 1 < raw.size()) {
      const std::size_t cur = raw[end].index, next = raw[end + 1].index;
      const auto valley = std::min_element(values.begin() + static_cast<std::ptrdiff_t>(cur),
                                           values.begin() + static_cast<std::ptrdiff_t>(next) + 1);
      hi = std::min(hi, static_cast<std::size_t>(valley - values.begin()));
    }

    double base = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i <= hi; ++i) base = std::min(base, values[i]);
    Eigen::VectorXd p(3 * count + 1);
    for (int q = 0; q < count; ++q) {
      const RawPeak& rp = raw[start + static_cast<std::size_t>(q)];
      p(3 * q) = axis[rp.index];
      p(3 * q + 1) = rp.width;
      p(3 * q + 2) = std::max(values[rp.index] - base, 1e-12);
    }
    p(3 * count) = base;
    const bool ok = fit_cluster(axis, values, lo, hi, p, count);

    for (int q = 0; q < count; ++q) {
      const RawPeak& rp = raw[start + static_cast<std::size_t>(q)];
      Peak pk;
      pk.prominence = rp.prominence;
      const bool sane = ok && std::abs(p(3 * q) - axis[rp.index]) < rp.width;
      if (sane) {
        pk.center = p(3 * q);
        pk.width = p(3 * q + 1);
        pk.height = Lorentzians::eval(p, count, pk.center);
      } else {
        pk.center = axis[rp.index];
        pk.width = rp.width;
        pk.height = values[rp.index];
        pk.fit_failed = true;
      }
      pk.height = std::clamp(pk.height, 0.0, 1.0);
      peaks.push_back(pk);
    }
    start = end + 1;
  }
  return peaks;
}

std::vector<Peak> fit_peaks(const ComplexSpectrum& spectrum, double prominence) {
  return fit_peaks(spectrum.axis, spectrum.tsq, prominence);
}

PeakClassifier::PeakClassifier(std::vector<double> ladder, std::vector<double> diffraction_only,
                               double tolerance)
    : ladder_(std::move(ladder)), diffraction_only_(std::move(diffraction_only)),
      tolerance_(tolerance) {
  if (!(tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
}

namespace {

// Peaks of |T|^2 with negative samples (outside the orbit sum's validity)
// flattened to zero.
std::vector<double> peak_centers(const ComplexSpectrum& s, double prominence) {
  std::vector<double> clipped(s.tsq.size());
  std::transform(s.tsq.begin(), s.tsq.end(), clipped.begin(),
                 [](double v) { return std::max(v, 0.0); });
  std::vector<double> out;
  for (const Peak& p : fit_peaks(s.axis, clipped, prominence)) out.push_back(p.center);
  return out;
}

}  // namespace

// Each ladder peak claims the nearest unclaimed peak of the diffractive
// sweep within tolerance; what is left over appears only with diffraction.
PeakClassifier PeakClassifier::from_sweeps(const ComplexSpectrum& without_diffraction,
                                           const ComplexSpectrum& with_diffraction,
                                           double prominence, double tolerance) {
  std::vector<double> ladder = peak_centers(without_diffraction, prominence);
  const std::vector<double> all = peak_centers(with_diffraction, prominence);
  std::vector<bool> claimed(all.size(), false);
  for (double f : ladder) {
    int best = -1;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (claimed[i] || std::abs(all[i] - f) > tolerance) continue;
      if (best < 0 || std::abs(all[i] - f) < std::abs(all[best] - f)) best = static_cast<int>(i);
    }
    if (best >= 0) claimed[best] = true;
  }
  std::vector<double> extra;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!claimed[i]) extra.push_back(all[i]);
  return PeakClassifier(std::move(ladder), std::move(extra), tolerance);
}

// Nearest reference peak wins; ties go to the ladder.
PeakKind PeakClassifier::classify(double center) const {
  double best = tolerance_;
  PeakKind kind = PeakKind::Unclassified;
  for (double f : ladder_) {
    if (std::abs(f - center) <= best) best = std::abs(f - center), kind = PeakKind::FabryPerot;
  }
  for (double d : diffraction_only_) {
    if (std::abs(d - center) < best) best = std::abs(d - center), kind = PeakKind::Diffractive;
  }
  return kind;
}

void PeakClassifier::apply(std::vector<Peak>& peaks) const {
  for (Peak& p : peaks) p.kind = classify(p.center);
}

// ---------------------------------------------------------------- labels

namespace {

// Bilinear interpolation over valid nodes; nullopt if any corner is masked
// or outside the map.
std::optional<Complex> sample(const FieldMap& f, Point r) {
  const double gx = (r.x - f.x0) / f.h, gy = (r.y - f.y0) / f.h;
  const int ix = static_cast<int>(std::floor(gx)), iy = static_cast<int>(std::floor(gy));
  if (ix < 0 || iy < 0 || ix + 1 >= f.nx || iy + 1 >= f.ny) return std::nullopt;
  const double tx = gx - ix, ty = gy - iy;
  Complex acc = 0.0;
  for (int dy = 0; dy <= 1; ++dy) {
    for (int dx = 0; dx <= 1; ++dx) {
      const std::size_t id = f.index(ix + dx, iy + dy);
      if (!f.mask[id]) return std::nullopt;
      acc += (dx ? tx : 1.0 - tx) * (dy ? ty : 1.0 - ty) * f.psi[id];
    }
  }
  return acc;
}

// Sign changes of Re(e^{-i phase} psi) along samples; flags a change where
// both neighbours sit below the noise floor.
int count_sign_changes(const std::vector<Complex>& values, bool& ambiguous) {
  // Dominant real quadrature: rotate by half the argument of sum psi^2.
  Complex s2 = 0.0;
  double peak = 0.0;
  for (const Complex& v : values) {
    s2 += v * v;
    peak = std::max(peak, std::abs(v));
  }
  const Complex rot = std::polar(1.0, -0.5 * std::arg(s2));
  const double floor = 1e-3 * peak;
  int changes = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (const Complex& v : values) {
    const double re = (v * rot).real();
    if (re == 0.0) continue;
    if (have_prev && (re > 0.0) != (prev > 0.0)) {
      ++changes;
      if (std::abs(re) < floor && std::abs(prev) < floor) ambiguous = true;
    }
    prev = re;
    have_prev = true;
  }
  return changes;
}

}  // namespace

ModeLabel label_mode(const FieldMap& field, const ResonatorGeometry& geom) {
  ModeLabel label;
  const int samples = 400;
  const double band = 2.0 * field.h;

  std::vector<Complex> axial;
  const double x_start = geom.antenna_offset() + band;
  const double x_end = geom.separation() - band;
  for (int i = 0; i <= samples; ++i) {
    const double x = x_start + (x_end - x_start) * i / samples;
    if (auto v = sample(field, {x, 0.0})) axial.push_back(*v);
  }
  if (axial.size() < 2) throw ConfigError("field", "map does not cover the symmetry axis");
  label.n = count_sign_changes(axial, label.ambiguous) + 1;

  // Transverse arc about the arc centre through (D/2, 0).
  const Point c = geom.arc_center();
  const double rho = geom.separation() / 2.0 - c.x;
  double phi_max = geom.half_angle();
  if (c.x < 0.0) phi_max = std::min(phi_max, std::acos(std::clamp(-c.x / rho, -1.0, 1.0)));
  std::vector<Complex> transverse;
  for (int i = 0; i <= samples; ++i) {
    const double phi = -phi_max + 2.0 * phi_max * i / samples;
    const Point r = c + Vec2{rho * std::cos(phi), rho * std::sin(phi)};
    if (r.x <= band) continue;
    if (auto v = sample(field, r)) transverse.push_back(*v);
  }
  label.m = transverse.size() < 2 ? 0 : count_sign_changes(transverse, label.ambiguous);
  return label;
}

// ---------------------------------------------------------------- return spectrum

ReturnSpectrum return_spectrum(std::span<const double> k, std::span<const Complex> s11,
                               double radius, const ReturnSpectrumOptions& opts) {
  const std::size_t n = k.size();
  if (n != s11.size()) throw ConfigError("spectrum", "axis/value size mismatch");
  if (n < 2) throw NumericalError("return spectrum needs at least two samples");
  if (!(radius > 0.0)) throw ConfigError("radius_cm", "must be positive");
  if (opts.oversample < 1) throw ConfigError("oversample", "must be at least 1");
  const double dk = (k[n - 1] - k[0]) / static_cast<double>(n - 1);
  if (!(dk > 0.0)) throw NumericalError("return spectrum needs an increasing k axis");
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs((k[j] - k[j - 1]) - dk) > 1e-6 * dk) {
      throw NumericalError("return spectrum needs a uniform k axis (sample " + std::to_string(j) +
                           ")");
    }
  }

  ReturnSpectrum out;
  out.window = opts.window;
  out.k_min = k[0];
  out.k_max = k[n - 1];
  out.radius = radius;
  const double res = 2.0 * kPi / (out.k_max - out.k_min);
  out.resolution = res / radius;
  out.resolution_ok = res < 0.05 * radius;

  Complex mean = 0.0;
  for (const Complex& s : s11) mean += s;
  mean /= static_cast<double>(n);
  std::vector<double> w(n, 1.0);
  if (opts.window == Window::Hann) {
    for (std::size_t j = 0; j < n; ++j) {
      w[j] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(j) / static_cast<double>(n - 1)));
    }
  }
  double wsum = 0.0;
  for (double v : w) wsum += v;

  const double dl = res / opts.oversample;
  const int nl = static_cast<int>(std::floor(opts.max_length_over_radius * radius / dl)) + 1;
  out.length_over_radius.resize(static_cast<std::size_t>(nl));
  out.amplitude.resize(static_cast<std::size_t>(nl));
  out.magnitude.resize(static_cast<std::size_t>(nl));
  for (int l = 0; l < nl; ++l) {
    const double length = l * dl;
    // Phase recurrence along the uniform k grid.
    const Complex step = std::polar(1.0, -dk * length);
    Complex ph = std::polar(1.0, -k[0] * length);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += w[j] * (s11[j] - mean) * ph;
      ph *= step;
    }
    acc /= wsum;
    out.length_over_radius[static_cast<std::size_t>(l)] = length / radius;
    out.amplitude[static_cast<std::size_t>(l)] = acc;
    out.magnitude[static_cast<std::size_t>(l)] = std::abs(acc);
  }
  return out;
}

ReturnSpectrum return_spectrum(const ComplexSpectrum& spectrum, const ReturnSpectrumOptions& opts) {
  if (spectrum.kind != SweepKind::Frequency) {
    throw ConfigError("sweep.kind", "return spectrum needs a frequency sweep");
  }
  return return_spectrum(spectrum.axis, spectrum.s11, spectrum.radius, opts);
}

// ---------------------------------------------------------------- shift map

ShiftMap slater_shift_map(const FieldMap& field, double sphere_radius) {
  if (!(sphere_radius > 0.0)) throw ConfigError("sphere_radius_cm", "must be positive");
  ShiftMap map;
  map.x0 = field.x0;
  map.y0 = field.y0;
  map.h = field.h;
  map.nx = field.nx;
  map.ny = field.ny;
  map.sphere_radius = sphere_radius;
  map.mask = field.mask;
  const std::size_t total = field.psi.size();
  map.shift.assign(total, 0.0);
  map.contour.assign(total, 0);

  double e2max = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    if (field.mask[i]) e2max = std::max(e2max, field.e2[i]);
  }
  if (!(e2max > 0.0)) throw NumericalError("shift map: field vanishes on every valid node");
  const double volume = 4.0 * kPi * std::pow(sphere_radius, 3);
  double most_negative = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    if (!field.mask[i]) continue;
    map.shift[i] = volume * (0.5 * field.h2[i] - field.e2[i]) / e2max;
    most_negative = std::min(most_negative, map.shift[i]);
  }
  if (most_negative < 0.0) {
    for (std::size_t i = 0; i < total; ++i) {
      map.contour[i] = field.mask[i] && map.shift[i] <= 0.2 * most_negative;
    }
  }
  return map;
}

}  // namespace billiard
