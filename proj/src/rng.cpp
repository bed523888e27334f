#include "sesem/rng.hpp"

namespace sesem {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStreams::substream_seed(std::uint64_t seed, std::string_view purpose) {
  return splitmix64(splitmix64(seed) ^ fnv1a(purpose));
}

RngStreams::RngStreams(std::uint64_t seed)
    : direction_(substream_seed(seed, "direction")),
      affine_matrix_(substream_seed(seed, "affine_matrix")),
      spline_init_(substream_seed(seed, "spline_init")),
      obs_mask_(substream_seed(seed, "obs_mask")),
      manning_perturb_(substream_seed(seed, "manning_perturb")) {}

}  // namespace sesem
