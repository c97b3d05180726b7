#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bw/bigint.hpp"

namespace bw {

// Address of a node in the infinite binary tree: the bit path from the root.
// Depth d, ordinal in [0, 2^d). Bit 0 = left/first child, 1 = right/second;
// children of ordinal r at depth d are ordinals 2r and 2r+1 at depth d+1.
struct NodeAddress {
  std::vector<int> bits;

  std::uint64_t depth() const { return bits.size(); }
  BigNat ordinal() const { return bits_to_bignat(bits); }

  NodeAddress child(int bit) const;
  std::pair<NodeAddress, NodeAddress> children() const;

  // "root" for the empty path, otherwise the bit string, e.g. "01".
  std::string to_string() const;

  bool operator==(const NodeAddress&) const = default;
};

NodeAddress address_from_bits(std::vector<int> bits);

// Descending ray: an eventually periodic bit stream, finite prefix followed by
// a repeating nonempty pattern. AllZeros/AllOnes are pattern {0} / {1}.
// Stream equality is decidable; normal form has a primitive pattern and a
// minimal prefix, so two rays are equal iff their normal forms are identical.
struct RaySpec {
  std::vector<int> prefix;
  std::vector<int> pattern;

  static RaySpec all_zeros(std::vector<int> prefix = {});
  static RaySpec all_ones(std::vector<int> prefix = {});
  static RaySpec periodic(std::vector<int> prefix, std::vector<int> pattern);

  void validate() const;

  int bit_at(std::uint64_t k) const;
  std::vector<int> bits_upto(std::uint64_t count) const;

  // Node address of the ray's vertex at the given depth.
  NodeAddress node_at(std::uint64_t depth) const;

  RaySpec normalized() const;

  // Short literal form "<prefix>/<pattern>", e.g. "/0", "01/10".
  std::string to_string() const;
};

bool rays_equal(const RaySpec& a, const RaySpec& b);

// Index of the first differing bit (= number of shared leading bits).
// nullopt when the streams are equal.
std::optional<std::uint64_t> ray_divergence_depth(const RaySpec& a, const RaySpec& b);

}  // namespace bw
