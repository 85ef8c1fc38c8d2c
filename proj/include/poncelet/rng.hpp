#pragma once

#include <cstdint>
#include <random>

namespace poncelet {

/// Reproducible stream for one (seed, stream) pair. mt19937_64 and seed_seq
/// are fully specified by the standard, and draws avoid
/// std::uniform_int_distribution, so the sequence is portable.
class StreamRng {
 public:
  StreamRng(uint64_t seed, uint64_t stream) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
    eng_.seed(seq);
  }

  /// Uniform integer in [0, n), n > 0.
  uint64_t below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace poncelet
