#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sesem {

// Purpose-tagged random substreams derived deterministically from one 64-bit
// seed. Distinct purposes never share a stream, so adding draws to one
// consumer cannot shift the sequence seen by another.
class RngStreams {
 public:
  explicit RngStreams(std::uint64_t seed);

  std::mt19937_64& direction() { return direction_; }
  std::mt19937_64& affine_matrix() { return affine_matrix_; }
  std::mt19937_64& spline_init() { return spline_init_; }
  std::mt19937_64& obs_mask() { return obs_mask_; }
  std::mt19937_64& manning_perturb() { return manning_perturb_; }

  // Derivation rule shared by all substreams, exposed for tests.
  static std::uint64_t substream_seed(std::uint64_t seed, std::string_view purpose);

 private:
  std::mt19937_64 direction_;
  std::mt19937_64 affine_matrix_;
  std::mt19937_64 spline_init_;
  std::mt19937_64 obs_mask_;
  std::mt19937_64 manning_perturb_;
};

}  // namespace sesem
