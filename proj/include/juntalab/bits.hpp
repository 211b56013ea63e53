#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace juntalab {

// Subsets of [n] are bitmasks: element j (1-based) <-> bit j-1.
// The same encoding indexes truth tables: bit j-1 of index i is x_j.
using mask_t = std::uint64_t;

inline int popcount(mask_t m) { return std::popcount(m); }

inline bool contains(mask_t m, int element) { return (m >> (element - 1)) & 1; }

inline mask_t with_element(mask_t m, int element) { return m | (mask_t{1} << (element - 1)); }

inline mask_t full_mask(int n) { return n >= 64 ? ~mask_t{0} : (mask_t{1} << n) - 1; }

inline bool intersects(mask_t a, mask_t b) { return (a & b) != 0; }

// Enumerates all subsets of `universe` of the given size, in increasing mask order.
std::vector<mask_t> subsets_of_size(mask_t universe, int size);

// C(n, k) as double (exact for the ranges used here) and as unsigned 64-bit.
double binomial_d(int n, int k);
std::uint64_t binomial_u64(int n, int k);

}  // namespace juntalab
