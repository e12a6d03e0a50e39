#include "wlab/io.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "wlab/errors.hpp"

namespace wlab {

namespace {

using nlohmann::json;

constexpr char kMagic[5] = {'W', 'L', 'A', 'B', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  const std::array<unsigned char, 4> b = {
      static_cast<unsigned char>(v & 0xff),
      static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff),
      static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  is.read(reinterpret_cast<char*>(b.data()), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b.data()), 8);
}

double get_f64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

json read_sidecar(const std::filesystem::path& path) {
  const auto side = path.string() + ".json";
  std::ifstream is(side);
  if (!is) throw IoError("cannot open sidecar " + side);
  json j;
  is >> j;
  return j;
}

void write_sidecar(const std::filesystem::path& path, const json& j) {
  const auto side = path.string() + ".json";
  std::ofstream os(side, std::ios::binary);
  if (!os) throw IoError("cannot write sidecar " + side);
  os << j.dump(2) << "\n";
  if (!os) throw IoError("failed writing sidecar " + side);
}

AxisDesc axis_of(const Grid1D& g) {
  return AxisDesc{g.min(), g.spacing(), static_cast<std::uint32_t>(g.n())};
}

Grid1D grid_of(const AxisDesc& a) {
  const int n = static_cast<int>(a.count);
  return Grid1D(n, a.min, a.min + n * a.spacing);
}

}  // namespace

void write_grid_file(const std::filesystem::path& path, const GridFile& file) {
  if (file.dims.size() != file.axes.size())
    throw SizeError("write_grid_file: rank mismatch between dims and axes");
  std::size_t expect = 1;
  for (std::uint32_t d : file.dims) expect *= d;
  if (expect != file.payload.size())
    throw SizeError("write_grid_file: payload size does not match dims");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(kMagic, sizeof(kMagic));
  put_u32(os, static_cast<std::uint32_t>(file.dims.size()));
  for (std::uint32_t d : file.dims) put_u32(os, d);
  for (const AxisDesc& a : file.axes) {
    put_f64(os, a.min);
    put_f64(os, a.spacing);
    put_f64(os, static_cast<double>(a.count));
  }
  for (double v : file.payload) put_f64(os, v);
  if (!os) throw IoError("failed writing " + path.string());
}

GridFile read_grid_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  char magic[5];
  is.read(magic, 5);
  if (!is || std::memcmp(magic, kMagic, 5) != 0)
    throw IoError(path.string() + ": not a WLAB1 grid file");
  GridFile file;
  const std::uint32_t rank = get_u32(is);
  if (rank == 0 || rank > 8) throw IoError(path.string() + ": bad rank");
  file.dims.resize(rank);
  for (auto& d : file.dims) d = get_u32(is);
  file.axes.resize(rank);
  for (auto& a : file.axes) {
    a.min = get_f64(is);
    a.spacing = get_f64(is);
    a.count = static_cast<std::uint32_t>(get_f64(is));
  }
  std::size_t total = 1;
  for (std::uint32_t d : file.dims) total *= d;
  file.payload.resize(total);
  for (auto& v : file.payload) v = get_f64(is);
  if (!is) throw IoError(path.string() + ": truncated grid file");
  return file;
}

std::uint32_t crc32(const unsigned char* data, std::size_t size) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < size; ++i)
    crc = table[(crc ^ data[i]) & 0xffu] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

std::uint32_t file_crc32(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)),
                                 std::istreambuf_iterator<char>());
  return crc32(buf.data(), buf.size());
}

void save_wavefunction(const std::filesystem::path& path, const WaveFunction& psi) {
  const int n = psi.grid.n();
  GridFile file;
  file.dims = {2, static_cast<std::uint32_t>(n)};
  file.axes = {AxisDesc{0.0, 1.0, 2}, axis_of(psi.grid)};
  file.payload.resize(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    file.payload[i] = psi.values[i].real();
    file.payload[n + i] = psi.values[i].imag();
  }
  write_grid_file(path, file);
  json j;
  j["kind"] = "wavefunction";
  j["t"] = psi.t;
  j["hbar"] = psi.consts.hbar;
  j["mass"] = psi.consts.mass;
  j["representation"] =
      psi.rep == Representation::position ? "position" : "momentum";
  write_sidecar(path, j);
}

WaveFunction load_wavefunction(const std::filesystem::path& path) {
  const GridFile file = read_grid_file(path);
  if (file.dims.size() != 2 || file.dims[0] != 2)
    throw IoError(path.string() + ": not a wave-function file");
  const json j = read_sidecar(path);
  if (j.value("kind", "") != "wavefunction")
    throw IoError(path.string() + ": sidecar kind is not 'wavefunction'");
  const int n = static_cast<int>(file.dims[1]);
  WaveFunction psi{grid_of(file.axes[1]), ArrayXcd(n), j.at("t").get<double>(),
                   Constants{j.at("hbar").get<double>(), j.at("mass").get<double>()},
                   j.value("representation", "position") == std::string("momentum")
                       ? Representation::momentum
                       : Representation::position};
  for (int i = 0; i < n; ++i)
    psi.values[i] = Complex(file.payload[i], file.payload[n + i]);
  return psi;
}

void save_wigner(const std::filesystem::path& path, const WignerGrid& w) {
  const int np = w.pgrid.p.n();
  const int nx = w.pgrid.x.n();
  GridFile file;
  file.dims = {static_cast<std::uint32_t>(np), static_cast<std::uint32_t>(nx)};
  file.axes = {axis_of(w.pgrid.p), axis_of(w.pgrid.x)};
  file.payload.resize(static_cast<std::size_t>(np) * nx);
  for (int r = 0; r < np; ++r)
    for (int c = 0; c < nx; ++c)
      file.payload[static_cast<std::size_t>(r) * nx + c] = w.values(r, c);
  write_grid_file(path, file);
  json j;
  j["kind"] = "wigner";
  j["t"] = w.t;
  j["hbar"] = w.consts.hbar;
  j["mass"] = w.consts.mass;
  write_sidecar(path, j);
}

WignerGrid load_wigner(const std::filesystem::path& path) {
  const GridFile file = read_grid_file(path);
  if (file.dims.size() != 2) throw IoError(path.string() + ": not a Wigner file");
  const json j = read_sidecar(path);
  if (j.value("kind", "") != "wigner")
    throw IoError(path.string() + ": sidecar kind is not 'wigner'");
  const int np = static_cast<int>(file.dims[0]);
  const int nx = static_cast<int>(file.dims[1]);
  WignerGrid w{PhaseGrid{grid_of(file.axes[1]), grid_of(file.axes[0])},
               ArrayXXd(np, nx), j.at("t").get<double>(),
               Constants{j.at("hbar").get<double>(), j.at("mass").get<double>()}};
  for (int r = 0; r < np; ++r)
    for (int c = 0; c < nx; ++c)
      w.values(r, c) = file.payload[static_cast<std::size_t>(r) * nx + c];
  return w;
}

void save_flow(const std::filesystem::path& path, const FlowField& f) {
  const int np = f.pgrid.p.n();
  const int nx = f.pgrid.x.n();
  GridFile file;
  file.dims = {2, static_cast<std::uint32_t>(np), static_cast<std::uint32_t>(nx)};
  file.axes = {AxisDesc{0.0, 1.0, 2}, axis_of(f.pgrid.p), axis_of(f.pgrid.x)};
  file.payload.resize(2 * static_cast<std::size_t>(np) * nx);
  for (int r = 0; r < np; ++r)
    for (int c = 0; c < nx; ++c) {
      file.payload[static_cast<std::size_t>(r) * nx + c] = f.jx(r, c);
      file.payload[static_cast<std::size_t>(np) * nx + static_cast<std::size_t>(r) * nx + c] =
          f.jp(r, c);
    }
  write_grid_file(path, file);
  json j;
  j["kind"] = "flow";
  j["t"] = f.t;
  j["hbar"] = f.consts.hbar;
  j["mass"] = f.consts.mass;
  j["truncation_l_max"] = f.truncation_l_max;
  write_sidecar(path, j);
}

FlowField load_flow(const std::filesystem::path& path) {
  const GridFile file = read_grid_file(path);
  if (file.dims.size() != 3 || file.dims[0] != 2)
    throw IoError(path.string() + ": not a flow-field file");
  const json j = read_sidecar(path);
  if (j.value("kind", "") != "flow")
    throw IoError(path.string() + ": sidecar kind is not 'flow'");
  const int np = static_cast<int>(file.dims[1]);
  const int nx = static_cast<int>(file.dims[2]);
  FlowField f{PhaseGrid{grid_of(file.axes[2]), grid_of(file.axes[1])},
              ArrayXXd(np, nx), ArrayXXd(np, nx), j.at("t").get<double>(),
              Constants{j.at("hbar").get<double>(), j.at("mass").get<double>()},
              j.value("truncation_l_max", -1)};
  const std::size_t plane = static_cast<std::size_t>(np) * nx;
  for (int r = 0; r < np; ++r)
    for (int c = 0; c < nx; ++c) {
      f.jx(r, c) = file.payload[static_cast<std::size_t>(r) * nx + c];
      f.jp(r, c) = file.payload[plane + static_cast<std::size_t>(r) * nx + c];
    }
  return f;
}

void save_sinogram(const std::filesystem::path& path, const Sinogram& sino) {
  const int rows = static_cast<int>(sino.angles.size());
  const int cols = sino.offsets.n();
  GridFile file;
  file.dims = {static_cast<std::uint32_t>(rows), static_cast<std::uint32_t>(cols)};
  file.axes = {AxisDesc{0.0, 1.0, static_cast<std::uint32_t>(rows)},
               axis_of(sino.offsets)};
  file.payload.resize(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      file.payload[static_cast<std::size_t>(r) * cols + c] = sino.values(r, c);
  write_grid_file(path, file);
  json j;
  j["kind"] = "sinogram";
  j["angles"] = std::vector<double>(sino.angles.data(),
                                    sino.angles.data() + sino.angles.size());
  j["times"] = sino.times;
  write_sidecar(path, j);
}

Sinogram load_sinogram(const std::filesystem::path& path) {
  const GridFile file = read_grid_file(path);
  if (file.dims.size() != 2) throw IoError(path.string() + ": not a sinogram file");
  const json j = read_sidecar(path);
  if (j.value("kind", "") != "sinogram")
    throw IoError(path.string() + ": sidecar kind is not 'sinogram'");
  const int rows = static_cast<int>(file.dims[0]);
  const int cols = static_cast<int>(file.dims[1]);
  const auto angles = j.at("angles").get<std::vector<double>>();
  if (static_cast<int>(angles.size()) != rows)
    throw IoError(path.string() + ": angle count mismatch");
  Sinogram sino{Eigen::ArrayXd(rows), grid_of(file.axes[1]), ArrayXXd(rows, cols),
                j.value("times", std::vector<double>{})};
  for (int r = 0; r < rows; ++r) sino.angles[r] = angles[static_cast<std::size_t>(r)];
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      sino.values(r, c) = file.payload[static_cast<std::size_t>(r) * cols + c];
  return sino;
}

void save_marginal(const std::filesystem::path& path, const Eigen::ArrayXd& values,
                   const Grid1D& axis, const std::string& kind, double t) {
  GridFile file;
  file.dims = {static_cast<std::uint32_t>(values.size())};
  file.axes = {axis_of(axis)};
  file.payload.assign(values.data(), values.data() + values.size());
  write_grid_file(path, file);
  json j;
  j["kind"] = kind;
  j["t"] = t;
  write_sidecar(path, j);
}

}  // namespace wlab
