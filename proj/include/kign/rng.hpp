#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The key is
// the user seed and the upper counter half is a stream id, so stream i is a
// pure function of (seed, i) and needs no sequential state from other streams.

#include <array>
#include <boost/random/normal_distribution.hpp>
#include <cstdint>

namespace kign {

class Philox4x32 {
 public:
  using result_type = std::uint64_t;

  Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    if (pos_ == 2) refill();
    return buf_[pos_++];
  }

  // Raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

  void refill() noexcept {
    const auto out = block({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                            stream_[0], stream_[1]},
                           key_);
    buf_[0] = (static_cast<result_type>(out[1]) << 32) | out[0];
    buf_[1] = (static_cast<result_type>(out[3]) << 32) | out[2];
    ++counter_;
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t counter_ = 0;
  std::array<result_type, 2> buf_{};
  int pos_ = 2;
};

// Standard normals for one stream (ziggurat sampler from Boost.Random, whose
// output is fixed by the library rather than by the standard library vendor).
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept : engine_(seed, stream) {}
  double operator()() { return dist_(engine_); }

 private:
  Philox4x32 engine_;
  boost::random::normal_distribution<double> dist_;
};

}  // namespace kign
