#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "wtf/rng.hpp"

namespace wtf {

// Phase sequence theta_0, theta_1, ... in [0, 1). iid draws are computed on
// demand from (seed, index), so shifts never need the sequence stored.
class ThetaSequence {
 public:
  enum class Mode { zeros, iid_uniform };

  static ThetaSequence zeros() { return ThetaSequence(Mode::zeros, 0, 0); }
  static ThetaSequence iid_uniform(std::uint64_t seed) {
    return ThetaSequence(Mode::iid_uniform, seed, 0);
  }

  double at(std::size_t n) const noexcept {
    if (mode_ == Mode::zeros) return 0.0;
    return to_unit(hash_key(seed_, static_cast<std::uint64_t>(offset_ + n)));
  }
  double operator[](std::size_t n) const noexcept { return at(n); }

  // sigma^k: drops the first k entries.
  ThetaSequence shifted(std::size_t k) const noexcept { return ThetaSequence(mode_, seed_, offset_ + k); }

  Mode mode() const noexcept { return mode_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t offset() const noexcept { return offset_; }
  std::string describe() const {
    if (mode_ == Mode::zeros) return "zeros";
    std::string s = "iid_uniform(seed=" + std::to_string(seed_) + ")";
    if (offset_ != 0) s += "+shift(" + std::to_string(offset_) + ")";
    return s;
  }

  bool operator==(const ThetaSequence&) const = default;

 private:
  ThetaSequence(Mode mode, std::uint64_t seed, std::size_t offset)
      : mode_(mode), seed_(seed), offset_(offset) {}

  Mode mode_;
  std::uint64_t seed_;
  std::size_t offset_;
};

}  // namespace wtf
