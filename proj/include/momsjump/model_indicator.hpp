#ifndef MOMSJUMP_MODEL_INDICATOR_HPP
#define MOMSJUMP_MODEL_INDICATOR_HPP

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace momsjump {

/// Inclusion vector over p predictors. Ordered lexicographically on the bit
/// sequence so that enumeration and model tallies are deterministic.
class ModelIndicator {
 public:
  ModelIndicator() = default;
  explicit ModelIndicator(std::size_t p, bool included = false)
      : bits_(p, included ? 1 : 0), size_(included ? p : 0) {}

  /// Bit i of `mask` sets predictor i.
  static ModelIndicator from_mask(std::size_t p, std::uint64_t mask) {
    ModelIndicator m(p);
    for (std::size_t i = 0; i < p; ++i)
      if ((mask >> i) & 1u) m.set(i, true);
    return m;
  }

  static ModelIndicator from_string(const std::string& s) {
    ModelIndicator m(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) m.set(i, s[i] == '1');
    return m;
  }

  std::size_t dim() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const { return bits_[i] != 0; }

  void set(std::size_t i, bool on) {
    if (on == (bits_[i] != 0)) return;
    bits_[i] = on ? 1 : 0;
    on ? ++size_ : --size_;
  }
  void flip(std::size_t i) { set(i, !(*this)[i]); }

  ModelIndicator flipped(std::size_t i) const {
    ModelIndicator m = *this;
    m.flip(i);
    return m;
  }

  /// Indices of included predictors, ascending.
  std::vector<Eigen::Index> included() const {
    std::vector<Eigen::Index> idx;
    idx.reserve(size_);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) idx.push_back(static_cast<Eigen::Index>(i));
    return idx;
  }

  std::string to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) s[i] = '1';
    return s;
  }

  auto operator<=>(const ModelIndicator& other) const { return bits_ <=> other.bits_; }
  bool operator==(const ModelIndicator& other) const { return bits_ == other.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t size_ = 0;
};

}  // namespace momsjump

#endif  // MOMSJUMP_MODEL_INDICATOR_HPP
