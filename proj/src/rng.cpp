#include "hamoeba/rng.hpp"

#include <cmath>
#include <numbers>

namespace hamoeba {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept {
  return mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ (label * 0xd1b54a32d192ed03ULL));
}

Stream::Stream(std::uint64_t seed, std::uint64_t index) noexcept {
  const std::uint64_t a = mix64(seed ^ 0x5851f42d4c957f2dULL);
  const std::uint64_t b = mix64(index + 0x14057b7ef767814fULL);
  state_ = mix64(a ^ ((b << 17) | (b >> 47)));
}

Stream::result_type Stream::operator()() noexcept {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double Stream::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double Stream::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace hamoeba
