#ifndef WLAB_IO_HPP
#define WLAB_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wlab/flow.hpp"
#include "wlab/tomography.hpp"
#include "wlab/wavefunction.hpp"
#include "wlab/wigner.hpp"

namespace wlab {

/// One axis of a stored grid: origin, spacing, sample count.
struct AxisDesc {
  double min = 0.0;
  double spacing = 1.0;
  std::uint32_t count = 0;
};

/// In-memory image of a "WLAB1" grid file: magic, little-endian u32 rank,
/// u32 dims, f64 (min, spacing, count) per axis, f64 payload row-major.
struct GridFile {
  std::vector<std::uint32_t> dims;
  std::vector<AxisDesc> axes;
  std::vector<double> payload;
};

void write_grid_file(const std::filesystem::path& path, const GridFile& file);
GridFile read_grid_file(const std::filesystem::path& path);

/// CRC-32 (IEEE 802.3 polynomial) used for manifest checksums.
std::uint32_t crc32(const unsigned char* data, std::size_t size);
std::uint32_t file_crc32(const std::filesystem::path& path);

/// Writers pair each binary grid with a JSON sidecar at path + ".json"
/// carrying the semantic metadata (field kind, t, hbar, mass, ...).
void save_wavefunction(const std::filesystem::path& path, const WaveFunction& psi);
WaveFunction load_wavefunction(const std::filesystem::path& path);

void save_wigner(const std::filesystem::path& path, const WignerGrid& w);
WignerGrid load_wigner(const std::filesystem::path& path);

void save_flow(const std::filesystem::path& path, const FlowField& j);
FlowField load_flow(const std::filesystem::path& path);

void save_sinogram(const std::filesystem::path& path, const Sinogram& sino);
Sinogram load_sinogram(const std::filesystem::path& path);

void save_marginal(const std::filesystem::path& path, const Eigen::ArrayXd& values,
                   const Grid1D& axis, const std::string& kind, double t);

}  // namespace wlab

#endif  // WLAB_IO_HPP
