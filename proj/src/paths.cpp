#include "emsde/paths.hpp"

#include "emsde/random.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

namespace emsde {

namespace {

std::size_t level_offset(int level, int m) {
  return ((std::size_t{1} << level) - 1) * static_cast<std::size_t>(m);
}

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  os.write(buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw InvalidArgument("truncated master path fixture");
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace

MasterPath::MasterPath(double horizon, int levels, int m, std::vector<double> increments,
                       std::uint64_t seed, std::uint64_t path_id)
    : horizon_(horizon),
      levels_(levels),
      m_(m),
      seed_(seed),
      path_id_(path_id),
      increments_(std::move(increments)) {
  if (levels < 0) throw InvalidArgument("master path level must be non-negative");
  if (levels > kMaxLevels) {
    throw ResourceError("master path level " + std::to_string(levels) + " exceeds " +
                        std::to_string(kMaxLevels));
  }
  if (m < 1 || m > kMaxDim) throw InvalidArgument("noise dimension out of range");
  if (!(horizon > 0.0)) throw InvalidArgument("master path horizon must be positive");
  if (increments_.size() != fine_steps() * static_cast<std::size_t>(m)) {
    throw InvalidArgument("increment count does not match 2^L * m");
  }
  build_tree();
}

void MasterPath::build_tree() {
  const auto m = static_cast<std::size_t>(m_);
  tree_.assign(level_offset(levels_ + 1, m_), 0.0);
  std::copy(increments_.begin(), increments_.end(), tree_.begin() + static_cast<std::ptrdiff_t>(level_offset(levels_, m_)));
  for (int l = levels_ - 1; l >= 0; --l) {
    const std::size_t here = level_offset(l, m_);
    const std::size_t below = level_offset(l + 1, m_);
    const std::size_t count = std::size_t{1} << l;
    for (std::size_t j = 0; j < count; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        tree_[here + j * m + k] = tree_[below + 2 * j * m + k] + tree_[below + (2 * j + 1) * m + k];
      }
    }
  }
}

Noise MasterPath::node(int level, std::size_t j) const {
  const std::size_t base = level_offset(level, m_) + j * static_cast<std::size_t>(m_);
  Noise out(m_);
  for (int k = 0; k < m_; ++k) out[k] = tree_[base + static_cast<std::size_t>(k)];
  return out;
}

Noise MasterPath::range_sum(std::size_t begin, std::size_t end) const {
  if (begin > end || end > fine_steps()) throw InvalidArgument("range outside master grid");
  Noise acc = Noise::Zero(m_);
  while (begin < end) {
    // largest aligned dyadic block starting at `begin` that fits in [begin, end)
    int span_log = levels_;
    while (span_log > 0 && ((begin & ((std::size_t{1} << span_log) - 1)) != 0 ||
                            begin + (std::size_t{1} << span_log) > end)) {
      --span_log;
    }
    const int level = levels_ - span_log;
    acc += node(level, begin >> span_log);
    begin += std::size_t{1} << span_log;
  }
  return acc;
}

std::size_t MasterPath::index_of(double t) const {
  if (!(t >= 0.0) || t > horizon_) throw InvalidArgument("time outside [0, T]");
  const double scaled = t / horizon_ * static_cast<double>(fine_steps());
  const double k = std::round(scaled);
  if (std::abs(scaled - k) > 1e-9 * std::max(1.0, k)) {
    throw InvalidArgument("time " + std::to_string(t) + " is not on the master grid");
  }
  return static_cast<std::size_t>(k);
}

MasterPath generate(std::uint64_t seed, std::uint64_t path_id, int levels, double horizon, int m) {
  if (levels < 0) throw InvalidArgument("master path level must be non-negative");
  if (levels > kMaxLevels) {
    throw ResourceError("master path level " + std::to_string(levels) + " exceeds " +
                        std::to_string(kMaxLevels));
  }
  if (m < 1 || m > kMaxDim) throw InvalidArgument("noise dimension out of range");
  const std::size_t n = std::size_t{1} << levels;
  const double scale = std::sqrt(horizon / static_cast<double>(n));
  std::vector<double> inc(n * static_cast<std::size_t>(m));
  CounterNormal(seed, path_id).fill(0, inc.data(), inc.size());
  for (double& v : inc) v *= scale;
  return MasterPath(horizon, levels, m, std::move(inc), seed, path_id);
}

std::vector<Noise> coarsen(const MasterPath& master, std::size_t n_steps) {
  if (n_steps == 0 || !std::has_single_bit(n_steps) || n_steps > master.fine_steps()) {
    throw InvalidArgument("N = " + std::to_string(n_steps) + " does not divide 2^L = " +
                          std::to_string(master.fine_steps()));
  }
  const int level = std::countr_zero(n_steps);
  std::vector<Noise> out;
  out.reserve(n_steps);
  for (std::size_t j = 0; j < n_steps; ++j) out.push_back(master.node(level, j));
  return out;
}

Noise value_at(const MasterPath& master, double t) {
  return master.value_at_index(master.index_of(t));
}

void write_master_path(std::ostream& os, const MasterPath& path) {
  os.write("EMSP1", 5);
  put_le<double>(os, path.horizon());
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(path.levels()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(path.dim()));
  for (double v : path.increments()) put_le<double>(os, v);
}

MasterPath read_master_path(std::istream& is) {
  char magic[5];
  if (!is.read(magic, 5) || std::memcmp(magic, "EMSP1", 5) != 0) {
    throw InvalidArgument("not an EMSP1 master path fixture");
  }
  const auto horizon = get_le<double>(is);
  const auto levels = get_le<std::uint32_t>(is);
  const auto m = get_le<std::uint32_t>(is);
  if (levels > kMaxLevels) throw ResourceError("fixture level too large");
  std::vector<double> inc((std::size_t{1} << levels) * m);
  for (double& v : inc) v = get_le<double>(is);
  return MasterPath(horizon, static_cast<int>(levels), static_cast<int>(m), std::move(inc));
}

}  // namespace emsde
