#include "billiard/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "billiard/errors.hpp"
#include "billiard/units.hpp"

namespace billiard {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_artifact(const std::filesystem::path& path, const std::string& header,
                    const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    std::istringstream lines(header);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
    out << body << kCompletionMarker << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string join(std::initializer_list<std::string> fields) {
  std::string out;
  for (const auto& f : fields) out += (out.empty() ? "" : ",") + f;
  return out + '\n';
}

std::string n(double v) { return format_number(v); }

}  // namespace

std::string spectrum_csv(const ComplexSpectrum& s) {
  std::string out;
  const bool freq = s.kind == SweepKind::Frequency;
  out += freq ? "axis_value,re_s11,im_s11,tsq,f_GHz\n"
              : "axis_value,re_s11,im_s11,tsq,D_minus_R,D_over_lambda\n";
  const double lambda = freq ? 0.0 : 2.0 * kPi / s.wavenumber;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.axis[i];
    if (freq) {
      out += join({n(x), n(s.s11[i].real()), n(s.s11[i].imag()), n(s.tsq[i]),
                   n(WaveNumber(x).ghz())});
    } else {
      out += join({n(x), n(s.s11[i].real()), n(s.s11[i].imag()), n(s.tsq[i]),
                   n(x - s.radius), n(x / lambda)});
    }
  }
  return out;
}

std::string semiclassical_csv(const ComplexSpectrum& s) {
  std::string out = s.kind == SweepKind::Frequency ? "k,f_GHz,ReT,ImT,Tsq\n"
                                                   : "D,D_minus_R,ReT,ImT,Tsq\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    // Invert the antenna model: x = i kappa g = (S - 1)/(S + 1).
    const Complex x = (s.s11[i] - 1.0) / (s.s11[i] + 1.0);
    const Complex t = 2.0 * std::sqrt(Complex(-x.real(), 0.0)) / (1.0 - x);
    const std::string lead =
        s.kind == SweepKind::Frequency
            ? n(s.axis[i]) + "," + n(WaveNumber(s.axis[i]).ghz())
            : n(s.axis[i]) + "," + n(s.axis[i] - s.radius);
    out += join({lead, n(t.real()), n(t.imag()), n(s.tsq[i])});
  }
  return out;
}

std::string peaks_csv(const std::vector<Peak>& peaks) {
  std::string out = "center,width,height,kind,n,m,fit_ok\n";
  for (const Peak& p : peaks) {
    out += join({n(p.center), n(p.width), n(p.height), to_string(p.kind),
                 p.label ? std::to_string(p.label->n) : "", p.label ? std::to_string(p.label->m) : "",
                 p.fit_failed ? "0" : "1"});
  }
  return out;
}

std::string return_spectrum_csv(const ReturnSpectrum& r) {
  std::string out = "L_over_R,magnitude,re,im\n";
  for (std::size_t i = 0; i < r.magnitude.size(); ++i) {
    out += join({n(r.length_over_radius[i]), n(r.magnitude[i]), n(r.amplitude[i].real()),
                 n(r.amplitude[i].imag())});
  }
  return out;
}

std::string orbit_catalog_csv(const std::vector<ClosedOrbit>& catalog, double radius) {
  std::string out =
      "id,kind,L_cm,L_over_R,repetitions,multiplicity,maslov_count,tip,angle_in_deg,angle_out_deg\n";
  for (const ClosedOrbit& o : catalog) {
    std::string tip, in, outa;
    if (!o.diffraction_events.empty()) {
      const DiffractionEvent& ev = o.diffraction_events.front();
      tip = ev.which == Tip::Upper ? "upper" : "lower";
      in = n(ev.angle_in * 180.0 / kPi);
      outa = n(ev.angle_out * 180.0 / kPi);
    }
    out += join({std::to_string(o.id), to_string(o.kind), n(o.length), n(o.length / radius),
                 std::to_string(o.repetitions), std::to_string(o.multiplicity),
                 std::to_string(o.maslov_count), tip, in, outa});
  }
  return out;
}

std::string breakdown_csv(const ReturnAmplitude& amplitude) {
  std::string out = "orbit_id,re,im\n";
  for (const auto& [id, v] : amplitude.breakdown) {
    out += join({std::to_string(id), n(v.real()), n(v.imag())});
  }
  return out;
}

const char* to_string(FieldQuantity q) {
  switch (q) {
    case FieldQuantity::RePsi: return "re_psi";
    case FieldQuantity::ImPsi: return "im_psi";
    case FieldQuantity::E2: return "e2";
    case FieldQuantity::H2: return "h2";
  }
  return "";
}

std::string grid_header(double x0, double y0, double h, int nx, int ny) {
  return "x0_cm = " + format_number(x0) + "\ny0_cm = " + format_number(y0) +
         "\nh_cm = " + format_number(h) + "\nnx = " + std::to_string(nx) +
         "\nny = " + std::to_string(ny) + "\nrows run over y, columns over x\n";
}

namespace {

template <class Value>
std::string matrix(int nx, int ny, Value&& value) {
  std::string out;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (ix) out += ' ';
      out += value(static_cast<std::size_t>(iy) * nx + ix);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string field_matrix(const FieldMap& f, FieldQuantity q) {
  return matrix(f.nx, f.ny, [&](std::size_t i) {
    if (!f.mask[i]) return std::string("nan");
    switch (q) {
      case FieldQuantity::RePsi: return format_number(f.psi[i].real());
      case FieldQuantity::ImPsi: return format_number(f.psi[i].imag());
      case FieldQuantity::E2: return format_number(f.e2[i]);
      case FieldQuantity::H2: return format_number(f.h2[i]);
    }
    return std::string("nan");
  });
}

std::string shift_matrix(const ShiftMap& m) {
  return matrix(m.nx, m.ny, [&](std::size_t i) {
    return m.mask[i] ? format_number(m.shift[i]) : std::string("nan");
  });
}

std::string contour_matrix(const ShiftMap& m) {
  return matrix(m.nx, m.ny, [&](std::size_t i) { return std::string(m.contour[i] ? "1" : "0"); });
}

}  // namespace billiard
