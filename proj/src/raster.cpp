#include "mphase/raster.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "mphase/config.hpp"

namespace mphase {

void RasterConfig::validate() const {
  detail::require(kernel_size >= 1, "kernel_size must be at least 1");
  detail::require(image_side >= kernel_size, "image_side must be at least kernel_size");
  detail::require(kernel_std > 0.0, "kernel_std must be positive");
  detail::require(box_side > 0.0, "box_side must be positive");
}

std::map<std::string, std::string> to_key_values(const RasterConfig& config) {
  return {{"image_side", std::to_string(config.image_side)},
          {"kernel_size", std::to_string(config.kernel_size)},
          {"kernel_std", format_double(config.kernel_std)},
          {"box_side", format_double(config.box_side)}};
}

RasterConfig raster_config_from_key_values(const std::map<std::string, std::string>& values) {
  check_known_keys(values, {"image_side", "kernel_size", "kernel_std", "box_side"},
                   "raster config");
  RasterConfig config;
  for (const auto& [key, value] : values) {
    if (key == "image_side") config.image_side = parse_int(key, value);
    else if (key == "kernel_size") config.kernel_size = parse_int(key, value);
    else if (key == "kernel_std") config.kernel_std = parse_double(key, value);
    else if (key == "box_side") config.box_side = parse_double(key, value);
  }
  config.validate();
  return config;
}

OccupancyMatrix positions_to_sparse(const Eigen::Matrix<double, Eigen::Dynamic, 2>& positions,
                                    const RasterConfig& config) {
  config.validate();
  const int side = config.image_side;
  auto pixel = [&](double x) {
    detail::require(x >= 0.0 && x < config.box_side, "particle position outside [0, L)");
    const auto p = static_cast<int>(std::floor(side * x / config.box_side));
    return std::min(p, side - 1);
  };
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(positions.rows()));
  for (Index i = 0; i < positions.rows(); ++i)
    entries.emplace_back(pixel(positions(i, 0)), pixel(positions(i, 1)), 1.0);
  OccupancyMatrix out(side, side);
  // Collisions collapse to a single 1.
  out.setFromTriplets(entries.begin(), entries.end(), [](double a, double) { return a; });
  return out;
}

Eigen::MatrixXd convolve(const OccupancyMatrix& occupancy, const Eigen::MatrixXd& kernel) {
  const Index rows = occupancy.rows();
  const Index cols = occupancy.cols();
  const Index ks = kernel.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  for (Index r = 0; r < occupancy.outerSize(); ++r) {
    for (OccupancyMatrix::InnerIterator it(occupancy, r); it; ++it) {
      const Index a = it.row();
      const Index b = it.col();
      // Covers target pixels a + 1 .. a + K (and likewise for columns), clipped to the image.
      const Index h = std::min(ks, rows - 1 - a);
      const Index w = std::min(ks, cols - 1 - b);
      if (h <= 0 || w <= 0) continue;
      out.block(a + 1, b + 1, h, w) += it.value() * kernel.topLeftCorner(h, w);
    }
  }
  return out;
}

Frame quantize(const Eigen::MatrixXd& filtered, const Eigen::MatrixXd& kernel) {
  const double c_max = kernel.maxCoeff();
  Frame out(filtered.rows(), filtered.cols());
  for (Index i = 0; i < filtered.rows(); ++i)
    for (Index j = 0; j < filtered.cols(); ++j) {
      const double level = std::clamp(filtered(i, j) / c_max, 0.0, 1.0);
      out(i, j) = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - level)));
    }
  return out;
}

Frame filter_frame(const OccupancyMatrix& occupancy, const Eigen::MatrixXd& kernel) {
  return quantize(convolve(occupancy, kernel), kernel);
}

FrameMatrix frames_to_matrix(const std::vector<Frame>& frames) {
  detail::require(!frames.empty(), "frames_to_matrix: no frames");
  const Index h = frames.front().rows();
  const Index w = frames.front().cols();
  FrameMatrix out(static_cast<Index>(frames.size()), h * w);
  for (Index n = 0; n < out.rows(); ++n) {
    const Frame& f = frames[static_cast<std::size_t>(n)];
    if (f.rows() != h || f.cols() != w)
      throw DataError("frame " + std::to_string(n + 1) + " is " + std::to_string(f.rows()) + "x" +
                      std::to_string(f.cols()) + ", expected " + std::to_string(h) + "x" +
                      std::to_string(w));
    out.row(n) = Eigen::Map<const Eigen::Matrix<std::uint8_t, 1, Eigen::Dynamic>>(f.data(), h * w)
                     .cast<double>();
  }
  return out;
}

Frame row_to_frame(const FrameMatrix& data, Index frame, Index height, Index width) {
  detail::require(frame >= 1 && frame <= data.rows(), "row_to_frame: frame out of range");
  detail::require(height * width == data.cols(), "row_to_frame: shape does not match row length");
  Frame out(height, width);
  for (Index k = 0; k < data.cols(); ++k) {
    const double v = data(frame - 1, k);
    if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v))
      throw DataError("row " + std::to_string(frame) + " holds a non 8-bit intensity");
    out.data()[k] = static_cast<std::uint8_t>(v);
  }
  return out;
}

std::vector<Frame> render_frames(const SwarmTrajectory& trajectory, const RasterConfig& config) {
  const Eigen::MatrixXd kernel = gaussian_kernel(config.kernel_size, config.kernel_std);
  std::vector<Frame> frames;
  frames.reserve(trajectory.frames.size());
  for (const SwarmState& state : trajectory.frames)
    frames.push_back(filter_frame(positions_to_sparse(state.positions, config), kernel));
  return frames;
}

FrameMatrix render_trajectory(const SwarmTrajectory& trajectory, const RasterConfig& config,
                              bool quantize_frames) {
  detail::require(!trajectory.frames.empty(), "render_trajectory: empty trajectory");
  if (quantize_frames) return frames_to_matrix(render_frames(trajectory, config));
  const Eigen::MatrixXd kernel = gaussian_kernel(config.kernel_size, config.kernel_std);
  const Index side = config.image_side;
  FrameMatrix out(trajectory.steps(), side * side);
  for (Index n = 0; n < out.rows(); ++n) {
    const RowMatrix<double> c =
        convolve(positions_to_sparse(trajectory.frames[static_cast<std::size_t>(n)].positions,
                                     config),
                 kernel);
    out.row(n) = Eigen::Map<const Eigen::RowVectorXd>(c.data(), side * side);
  }
  return out;
}

// ---------------------------------------------------------------------------

void write_pgm(std::ostream& out, const Frame& frame) {
  out << "P5\n" << frame.cols() << ' ' << frame.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.data()), frame.size());
  if (!out) throw DataError("failed to write PGM data");
}

namespace {

long read_pgm_field(std::istream& in) {
  int c = in.get();
  while (true) {
    if (c == '#') {
      while (c != '\n' && c != EOF) c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (!std::isdigit(c)) throw DataError("malformed PGM header");
  long value = 0;
  while (std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > (1L << 24)) throw DataError("PGM dimension too large");
    c = in.get();
  }
  if (!std::isspace(c)) throw DataError("malformed PGM header");
  return value;
}

}  // namespace

Frame read_pgm(std::istream& in) {
  char magic[2];
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5')
    throw DataError("not a binary PGM (P5) file");
  const long width = read_pgm_field(in);
  const long height = read_pgm_field(in);
  const long maxval = read_pgm_field(in);
  if (maxval != 255) throw DataError("only 8-bit PGM (maxval 255) is supported");
  if (width <= 0 || height <= 0) throw DataError("PGM has an empty image");
  Frame out(height, width);
  if (!in.read(reinterpret_cast<char*>(out.data()), out.size()))
    throw DataError("PGM pixel data is truncated");
  return out;
}

void write_pgm(const std::filesystem::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_pgm(out, frame);
}

Frame read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return read_pgm(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string frame_filename(Index frame) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%04ld.pgm", static_cast<long>(frame));
  return buf;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
    throw DataError("FMAT file is truncated");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void write_fmat(std::ostream& out, const FrameMatrix& data) {
  detail::require(data.rows() <= 0xFFFFFFFFL && data.cols() <= 0xFFFFFFFFL,
                  "FMAT dimensions exceed 32 bits");
  out.write("FMAT", 4);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(data.rows()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(data.cols()));
  for (Index k = 0; k < data.size(); ++k) put_le(out, std::bit_cast<std::uint64_t>(data.data()[k]));
  if (!out) throw DataError("failed to write FMAT data");
}

FrameMatrix read_fmat(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != "FMAT")
    throw DataError("not an FMAT file (bad magic)");
  const auto rows = get_le<std::uint32_t>(in);
  const auto cols = get_le<std::uint32_t>(in);
  FrameMatrix out(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index k = 0; k < out.size(); ++k) {
    out.data()[k] = std::bit_cast<double>(get_le<std::uint64_t>(in));
    if (!std::isfinite(out.data()[k])) throw DataError("FMAT contains a non-finite entry");
  }
  return out;
}

void write_fmat(const std::filesystem::path& path, const FrameMatrix& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_fmat(out, data);
}

FrameMatrix read_fmat(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return read_fmat(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace mphase
