#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "mphase/types.hpp"
#include "mphase/vicsek.hpp"

namespace mphase {

struct RasterConfig {
  int image_side = 128;
  int kernel_size = 10;
  double kernel_std = 10.0;
  double box_side = 5.0;

  void validate() const;
};

std::map<std::string, std::string> to_key_values(const RasterConfig& config);
RasterConfig raster_config_from_key_values(const std::map<std::string, std::string>& values);

using Frame = RowMatrix<std::uint8_t>;
using OccupancyMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// size x size kernel, exp(-((i-c)^2 + (j-c)^2) / (2 std^2)) with c = (size-1)/2,
/// normalized to unit sum.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gaussian_kernel(int size, Scalar stddev) {
  detail::require(size >= 1, "gaussian_kernel: size must be at least 1");
  detail::require(stddev > Scalar(0), "gaussian_kernel: std must be positive");
  using std::exp;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k(size, size);
  const Scalar c = Scalar(size - 1) / 2;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      k(i, j) = exp(-((i - c) * (i - c) + (j - c) * (j - c)) / (2 * stddev * stddev));
  return k / k.sum();
}

/// Binary occupancy: pixel (floor(R x / L), floor(R y / L)) is 1 for every particle.
OccupancyMatrix positions_to_sparse(const Eigen::Matrix<double, Eigen::Dynamic, 2>& positions,
                                    const RasterConfig& config);

/// C(n1, n2) = sum_{k1,k2=1..K} A(n1 - k1, n2 - k2) B(k1, k2) with zero padding, where
/// B(k1, k2) is kernel(k1 - 1, k2 - 1). Evaluated by scattering each occupied pixel.
Eigen::MatrixXd convolve(const OccupancyMatrix& occupancy, const Eigen::MatrixXd& kernel);

/// v = round(255 (1 - min(1, C / C_max))), C_max = largest kernel entry.
Frame quantize(const Eigen::MatrixXd& filtered, const Eigen::MatrixXd& kernel);

Frame filter_frame(const OccupancyMatrix& occupancy, const Eigen::MatrixXd& kernel);

/// Row n = row-major flattening of frames[n].
FrameMatrix frames_to_matrix(const std::vector<Frame>& frames);

/// Inverse of frames_to_matrix for one row. Entries must be integers in [0, 255].
Frame row_to_frame(const FrameMatrix& data, Index frame, Index height, Index width);

/// Renders every trajectory step. With `quantize_frames` false the rows hold the real
/// filtered values C_n instead of 8-bit intensities.
FrameMatrix render_trajectory(const SwarmTrajectory& trajectory, const RasterConfig& config,
                              bool quantize_frames = true);
std::vector<Frame> render_frames(const SwarmTrajectory& trajectory, const RasterConfig& config);

// Binary PGM (P5, maxval 255).
void write_pgm(std::ostream& out, const Frame& frame);
Frame read_pgm(std::istream& in);
void write_pgm(const std::filesystem::path& path, const Frame& frame);
Frame read_pgm(const std::filesystem::path& path);

/// `frame_%04d.pgm`, 1-based.
std::string frame_filename(Index frame);

// FMAT: "FMAT", uint32 LE N, uint32 LE P, then N*P float64 LE, row-major.
void write_fmat(std::ostream& out, const FrameMatrix& data);
FrameMatrix read_fmat(std::istream& in);
void write_fmat(const std::filesystem::path& path, const FrameMatrix& data);
FrameMatrix read_fmat(const std::filesystem::path& path);

}  // namespace mphase
