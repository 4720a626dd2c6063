#pragma once

#include "emsde/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace emsde {

inline constexpr int kMaxLevels = 24;

/// One Brownian path on the dyadic grid {k T / 2^L}, stored as its fine
/// increments plus all dyadic block sums.
///
/// Block sums are formed pairwise (node = left child + right child), so the
/// increment of any coarser dyadic grid is a single stored node and coarsening
/// commutes exactly across resolutions.
class MasterPath {
 public:
  MasterPath() = default;

  /// Builds a path from explicit fine increments (rows = 2^L intervals, m columns).
  MasterPath(double horizon, int levels, int m, std::vector<double> increments,
             std::uint64_t seed = 0, std::uint64_t path_id = 0);

  double horizon() const { return horizon_; }
  int levels() const { return levels_; }
  int dim() const { return m_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t path_id() const { return path_id_; }
  std::size_t fine_steps() const { return std::size_t{1} << levels_; }
  double fine_dt() const { return horizon_ / static_cast<double>(fine_steps()); }

  /// Row-major fine increments, 2^L x m.
  const std::vector<double>& increments() const { return increments_; }

  /// Sum of fine increments over the dyadic block [j 2^(L-l), (j+1) 2^(L-l)).
  Noise node(int level, std::size_t j) const;

  /// W over fine index range [begin, end), assembled from aligned dyadic blocks
  /// left to right.
  Noise range_sum(std::size_t begin, std::size_t end) const;

  /// W at fine index k (W_0 = 0).
  Noise value_at_index(std::size_t k) const { return range_sum(0, k); }

  /// Fine index of a dyadic time; throws InvalidArgument when t is not on the grid.
  std::size_t index_of(double t) const;

 private:
  void build_tree();

  double horizon_ = 1.0;
  int levels_ = 0;
  int m_ = 1;
  std::uint64_t seed_ = 0;
  std::uint64_t path_id_ = 0;
  std::vector<double> increments_;
  // level l occupies [(2^l - 1) m, (2^(l+1) - 1) m); level L equals increments_.
  std::vector<double> tree_;
};

/// Draws the fine increments from the counter-based normal generator keyed by
/// (seed, path_id), consumed row-major. Throws ResourceError for L > 24.
MasterPath generate(std::uint64_t seed, std::uint64_t path_id, int levels, double horizon, int m);

/// Increments of the N-step uniform grid; N must divide 2^L.
std::vector<Noise> coarsen(const MasterPath& master, std::size_t n_steps);

/// W_t at a dyadic time t = k T / 2^L.
Noise value_at(const MasterPath& master, double t);

/// Binary fixture format: "EMSP1", T (f64 LE), L (u32 LE), m (u32 LE), then the
/// increments row-major as f64 LE.
void write_master_path(std::ostream& os, const MasterPath& path);
MasterPath read_master_path(std::istream& is);

}  // namespace emsde
