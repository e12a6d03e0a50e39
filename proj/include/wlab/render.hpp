#ifndef WLAB_RENDER_HPP
#define WLAB_RENDER_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wlab/flow.hpp"
#include "wlab/wavefunction.hpp"
#include "wlab/wigner.hpp"

namespace wlab {

struct Rgb {
  std::uint8_t r = 255, g = 255, b = 255;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Raster image, row-major, origin top-left.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  Image() = default;
  Image(int w, int h, Rgb fill = Rgb{}) : width(w), height(h), pixels(w * h, fill) {}
  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

/// Signed diverging map: v in [-V, V] with V = max|field|; zero is white,
/// negative values blue, positive red. Quantization rounds half away from
/// zero.
Rgb diverging_color(double v, double vmax);

/// 2*pi-periodic phase map via the HSV sextant formula with S = V = 1;
/// phi = 0 is pure red.
Rgb phase_color(double phi);

enum class RenderStyle { reim, phasor, phase_color, wigner_map, wigner_flow };

RenderStyle parse_style(const std::string& name);

struct RenderSpec {
  int width = 512;
  int height = 512;
  RenderStyle style = RenderStyle::wigner_map;
  int quiver_stride = 16;
  bool marginal_panels = false;
  bool contours = false;
  bool colorbar = false;

  void validate() const;
};

/// Wave-function plot in one of the three curve styles (reim, phasor,
/// phase_color).
Image render_wavefunction(const WaveFunction& psi, const RenderSpec& spec);

/// False-color Wigner map, p increasing upward, origin pixel = (x_min, p_max).
/// Optional marginal side panels, 9-level contour lines, and quiver arrows
/// for a matching flow field.
Image render_wigner(const WignerGrid& w, const RenderSpec& spec,
                    const FlowField* flow = nullptr);

/// Binary PPM (P6, maxval 255), the byte-exact format of record.
void write_image(const Image& image, const std::filesystem::path& path);

}  // namespace wlab

#endif  // WLAB_RENDER_HPP
