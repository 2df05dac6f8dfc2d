#pragma once

#include <cstdint>
#include <random>

namespace evesim {

// splitmix64 finalizer; used to hash stream keys into generator seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Value-semantic random stream. Copy it to replay a sequence.
// All draws are derived from raw 64-bit outputs so results do not depend
// on standard-library distribution internals.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1) with 53-bit resolution
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  // unbiased draw from [0, n), n >= 1
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(below(static_cast<std::uint64_t>(n)));
  }

 private:
  std::mt19937_64 gen_;
};

enum class StreamKind : std::uint64_t {
  habitat = 1,
  sector = 2,
  network = 3,
  run = 4,
};

enum class Phase : std::uint64_t {
  init = 1,
  request = 2,
  ga = 3,
  migrate = 4,
  drift = 5,
  archetype = 6,
  topology = 7,
  analysis = 8,
};

// Deterministic stream derivation: distinct (kind, id, epoch, phase) tuples
// yield independent streams, and the same tuple always yields the same
// stream. This is what makes per-habitat work order- and thread-count-
// independent.
struct RngDiscipline {
  std::uint64_t master_seed = 0;

  RngStream stream(StreamKind kind, std::uint64_t id, std::uint64_t epoch,
                   Phase phase) const {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ static_cast<std::uint64_t>(kind));
    h = mix64(h ^ id);
    h = mix64(h ^ epoch);
    h = mix64(h ^ static_cast<std::uint64_t>(phase));
    return RngStream(h);
  }
};

}  // namespace evesim
