#pragma once

#include <cstdint>

namespace fockcheck::numkit {

/// Independent per-trial seed from a master seed (splitmix64 finalizer), so
/// parallel and serial sampling draw identical streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace fockcheck::numkit
