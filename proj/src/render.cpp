#include "wlab/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "wlab/errors.hpp"

namespace wlab {

namespace {

constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kGray{128, 128, 128};
constexpr Rgb kCurveReal{0, 0, 200};
constexpr Rgb kCurveImag{200, 0, 0};

std::uint8_t quantize(double v) {
  const double clamped = std::clamp(v, 0.0, 255.0);
  return static_cast<std::uint8_t>(std::lround(clamped));  // half away from zero
}

void put_pixel(Image& img, int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  img.at(x, y) = c;
}

// Integer Bresenham line, no anti-aliasing.
void draw_line(Image& img, int x0, int y0, int x1, int y1, Rgb c) {
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    put_pixel(img, x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void draw_arrow(Image& img, int x0, int y0, double ux, double uy, double len, Rgb c) {
  if (len < 0.5) {
    put_pixel(img, x0, y0, c);
    return;
  }
  const int x1 = x0 + static_cast<int>(std::lround(ux * len));
  const int y1 = y0 + static_cast<int>(std::lround(uy * len));
  draw_line(img, x0, y0, x1, y1, c);
  // Two head strokes at +-150 degrees from the shaft direction.
  const double head = std::max(2.0, 0.25 * len);
  const double c30 = std::sqrt(3.0) / 2.0, s30 = 0.5;
  const double hx1 = -ux * c30 + uy * s30, hy1 = -uy * c30 - ux * s30;
  const double hx2 = -ux * c30 - uy * s30, hy2 = -uy * c30 + ux * s30;
  draw_line(img, x1, y1, x1 + static_cast<int>(std::lround(hx1 * head)),
            y1 + static_cast<int>(std::lround(hy1 * head)), c);
  draw_line(img, x1, y1, x1 + static_cast<int>(std::lround(hx2 * head)),
            y1 + static_cast<int>(std::lround(hy2 * head)), c);
}

// Polyline through per-column rows.
void draw_curve(Image& img, int x_off, int y_off, const std::vector<int>& rows,
                Rgb c) {
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    draw_line(img, x_off + static_cast<int>(i), y_off + rows[i],
              x_off + static_cast<int>(i) + 1, y_off + rows[i + 1], c);
}

std::vector<int> curve_rows(const ArrayXd& values, int cols, int rows, double lo,
                            double hi) {
  std::vector<int> out(cols);
  const double span = hi - lo;
  const int n = static_cast<int>(values.size());
  for (int c = 0; c < cols; ++c) {
    const int i = std::min(static_cast<int>(static_cast<long>(c) * n / cols), n - 1);
    const double frac = span > 0.0 ? (hi - values[i]) / span : 0.5;
    out[c] = static_cast<int>(std::lround(frac * (rows - 1)));
  }
  return out;
}

}  // namespace

Rgb diverging_color(double v, double vmax) {
  if (!(vmax > 0.0) || v == 0.0) return kWhite;
  const double u = std::clamp(v / vmax, -1.0, 1.0);
  if (u < 0.0) {
    const std::uint8_t q = quantize(255.0 * (1.0 + u));
    return Rgb{q, q, 255};
  }
  const std::uint8_t q = quantize(255.0 * (1.0 - u));
  return Rgb{255, q, q};
}

Rgb phase_color(double phi) {
  double u = std::fmod(phi, 2.0 * kPi);
  if (u < 0.0) u += 2.0 * kPi;
  const double h = u / (kPi / 3.0);  // sextant coordinate in [0, 6)
  const int i = std::min(static_cast<int>(h), 5);
  const double f = h - i;
  const std::uint8_t up = quantize(255.0 * f);
  const std::uint8_t down = quantize(255.0 * (1.0 - f));
  switch (i) {
    case 0: return Rgb{255, up, 0};
    case 1: return Rgb{down, 255, 0};
    case 2: return Rgb{0, 255, up};
    case 3: return Rgb{0, down, 255};
    case 4: return Rgb{up, 0, 255};
    default: return Rgb{255, 0, down};
  }
}

RenderStyle parse_style(const std::string& name) {
  if (name == "reim") return RenderStyle::reim;
  if (name == "phasor") return RenderStyle::phasor;
  if (name == "phase_color") return RenderStyle::phase_color;
  if (name == "wigner_map") return RenderStyle::wigner_map;
  if (name == "wigner_flow") return RenderStyle::wigner_flow;
  throw UsageError("unknown render style '" + name + "'");
}

void RenderSpec::validate() const {
  if (width < 64 || height < 64)
    throw UsageError("render: width and height must be at least 64");
  if (quiver_stride < 1) throw UsageError("render: quiver stride must be >= 1");
}

Image render_wavefunction(const WaveFunction& psi, const RenderSpec& spec) {
  spec.validate();
  if (spec.style != RenderStyle::reim && spec.style != RenderStyle::phasor &&
      spec.style != RenderStyle::phase_color)
    throw UsageError("render_wavefunction: style is not a wave-function style");
  Image img(spec.width, spec.height, kWhite);
  const int n = psi.grid.n();

  if (spec.style == RenderStyle::reim) {
    const ArrayXd re = psi.values.real();
    const ArrayXd im = psi.values.imag();
    const double amp =
        std::max({re.abs().maxCoeff(), im.abs().maxCoeff(), 1e-300});
    draw_curve(img, 0, 0, curve_rows(im, spec.width, spec.height, -amp, amp),
               kCurveImag);
    draw_curve(img, 0, 0, curve_rows(re, spec.width, spec.height, -amp, amp),
               kCurveReal);
    return img;
  }

  if (spec.style == RenderStyle::phasor) {
    const double amp = psi.values.abs().maxCoeff();
    const int base_row = spec.height / 2;
    const double max_len = 0.45 * spec.height;
    for (int i = 0; i < n; i += spec.quiver_stride) {
      const int col = static_cast<int>(static_cast<long>(i) * spec.width / n);
      const double mag = std::abs(psi.values[i]);
      if (amp <= 0.0 || mag < 1e-12 * amp) continue;
      const double phi = std::arg(psi.values[i]);
      // Screen y grows downward; positive phase tilts the arrow upward.
      draw_arrow(img, col, base_row, std::cos(phi), -std::sin(phi),
                 mag / amp * max_len, kBlack);
    }
    return img;
  }

  // phase_color: fill below the |psi|^2 curve with the phase hue.
  const ArrayXd density = psi.values.abs2();
  const double peak = density.maxCoeff();
  for (int c = 0; c < spec.width; ++c) {
    const int i = std::min(static_cast<int>(static_cast<long>(c) * n / spec.width),
                           n - 1);
    if (peak <= 0.0) continue;
    const int bar =
        static_cast<int>(std::lround(density[i] / peak * (spec.height - 1)));
    if (bar <= 0) continue;
    const Rgb color = phase_color(std::arg(psi.values[i]));
    for (int r = spec.height - bar; r < spec.height; ++r) put_pixel(img, c, r, color);
  }
  return img;
}

Image render_wigner(const WignerGrid& w, const RenderSpec& spec,
                    const FlowField* flow) {
  spec.validate();
  if (spec.style != RenderStyle::wigner_map && spec.style != RenderStyle::wigner_flow)
    throw UsageError("render_wigner: style is not a Wigner style");
  if (flow && !(flow->pgrid == w.pgrid))
    throw SizeError("render_wigner: flow grid does not match Wigner grid");

  Image img(spec.width, spec.height, kWhite);
  const int np = w.pgrid.p.n();
  const int nx = w.pgrid.x.n();
  const double vmax = w.values.abs().maxCoeff();

  // Layout: optional color bar at the left, marginal panels top and right.
  const int bar_w = spec.colorbar ? std::max(8, spec.width / 16) : 0;
  const int gap = spec.colorbar ? 2 : 0;
  const int panel_h = spec.marginal_panels ? spec.height / 4 : 0;
  const int panel_w = spec.marginal_panels ? spec.width / 4 : 0;
  const int map_x = bar_w + gap;
  const int map_y = panel_h;
  const int map_w = spec.width - map_x - panel_w;
  const int map_h = spec.height - map_y;
  if (map_w < 16 || map_h < 16)
    throw UsageError("render_wigner: image too small for the requested panels");

  auto x_index = [&](int px) {
    return std::min(static_cast<int>(static_cast<long>(px) * nx / map_w), nx - 1);
  };
  auto p_index = [&](int py) {
    return np - 1 - std::min(static_cast<int>(static_cast<long>(py) * np / map_h),
                             np - 1);
  };

  for (int py = 0; py < map_h; ++py)
    for (int px = 0; px < map_w; ++px)
      img.at(map_x + px, map_y + py) =
          diverging_color(w.values(p_index(py), x_index(px)), vmax);

  if (spec.colorbar) {
    for (int py = 0; py < map_h; ++py) {
      const double v = vmax * (1.0 - 2.0 * py / (map_h - 1.0));
      const Rgb c = diverging_color(v, vmax);
      for (int px = 0; px < bar_w; ++px) img.at(px, map_y + py) = c;
    }
  }

  if (spec.contours) {
    const double wmin = w.values.minCoeff();
    const double wmax = w.values.maxCoeff();
    for (int k = 1; k <= 9; ++k) {
      const double level = wmin + k * (wmax - wmin) / 10.0;
      for (int py = 0; py < map_h; ++py) {
        for (int px = 0; px < map_w; ++px) {
          const double v0 = w.values(p_index(py), x_index(px)) - level;
          const double vr = px + 1 < map_w
                                ? w.values(p_index(py), x_index(px + 1)) - level
                                : v0;
          const double vd = py + 1 < map_h
                                ? w.values(p_index(py + 1), x_index(px)) - level
                                : v0;
          if (v0 * vr < 0.0 || v0 * vd < 0.0)
            img.at(map_x + px, map_y + py) = kGray;
        }
      }
    }
  }

  if (flow) {
    const double jmax =
        std::max((flow->jx.square() + flow->jp.square()).sqrt().maxCoeff(), 1e-300);
    const int cell_px = std::max(2, spec.quiver_stride * map_w / nx);
    for (int gj = spec.quiver_stride / 2; gj < np; gj += spec.quiver_stride) {
      for (int gi = spec.quiver_stride / 2; gi < nx; gi += spec.quiver_stride) {
        const double jx = flow->jx(gj, gi);
        const double jp = flow->jp(gj, gi);
        const double mag = std::hypot(jx, jp);
        if (mag < 1e-9 * jmax) continue;
        const int px = map_x + static_cast<int>(static_cast<long>(gi) * map_w / nx);
        const int py =
            map_y + static_cast<int>(static_cast<long>(np - 1 - gj) * map_h / np);
        draw_arrow(img, px, py, jx / mag, -jp / mag, mag / jmax * cell_px, kBlack);
      }
    }
  }

  if (spec.marginal_panels) {
    const ArrayXd mx = marginal_x(w);
    const ArrayXd mp = marginal_p(w);
    const double mx_peak = std::max(mx.maxCoeff(), 1e-300);
    const double mp_peak = std::max(mp.maxCoeff(), 1e-300);
    // Top panel: position density over the map columns.
    std::vector<int> rows =
        curve_rows(mx, map_w, std::max(2, panel_h - 2), 0.0, mx_peak);
    draw_curve(img, map_x, 1, rows, kBlack);
    // Right panel: momentum density, p upward, value to the right.
    for (int py = 0; py + 1 < map_h; ++py) {
      const int j0 = p_index(py);
      const int j1 = p_index(py + 1);
      const int c0 = static_cast<int>(std::lround(mp[j0] / mp_peak * (panel_w - 3)));
      const int c1 = static_cast<int>(std::lround(mp[j1] / mp_peak * (panel_w - 3)));
      draw_line(img, spec.width - panel_w + 1 + c0, map_y + py,
                spec.width - panel_w + 1 + c1, map_y + py + 1, kBlack);
    }
  }

  return img;
}

void write_image(const Image& image, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "P6\n" << image.width << " " << image.height << "\n255\n";
  for (const Rgb& p : image.pixels) {
    const char bytes[3] = {static_cast<char>(p.r), static_cast<char>(p.g),
                           static_cast<char>(p.b)};
    os.write(bytes, 3);
  }
  if (!os) throw IoError("failed writing image " + path.string());
}

}  // namespace wlab
