#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <type_traits>
#include <utility>

#include "aggregation/window.hpp"

namespace spscagg::bench {

// Queue element for the micro-benchmarks: a Tuple followed by inert padding so that
// every copy moves `Size` bytes.
#pragma pack(push, 4)
template <std::size_t Size>
struct Payload {
  agg::Tuple tuple;
  std::array<std::byte, Size - sizeof(agg::Tuple)> padding{};
};
template <>
struct Payload<sizeof(agg::Tuple)> {
  agg::Tuple tuple;
};
#pragma pack(pop)

inline constexpr std::size_t kElementSizes[] = {12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 512, 1024};

template <std::size_t Size>
using ElementSize = std::integral_constant<std::size_t, Size>;

template <std::size_t... Sizes>
constexpr bool all_exact(std::index_sequence<Sizes...>) {
  return ((sizeof(Payload<kElementSizes[Sizes]>) == kElementSizes[Sizes]) && ...);
}
static_assert(all_exact(std::make_index_sequence<std::size(kElementSizes)>{}));

constexpr bool supported_element_size(std::size_t size) {
  for (std::size_t s : kElementSizes) {
    if (s == size) return true;
  }
  return false;
}

// Calls fn(ElementSize<size>{}). `size` must satisfy supported_element_size.
template <class Fn>
decltype(auto) visit_element_size(std::size_t size, Fn&& fn) {
  switch (size) {
    case 16: return fn(ElementSize<16>{});
    case 24: return fn(ElementSize<24>{});
    case 32: return fn(ElementSize<32>{});
    case 48: return fn(ElementSize<48>{});
    case 64: return fn(ElementSize<64>{});
    case 96: return fn(ElementSize<96>{});
    case 128: return fn(ElementSize<128>{});
    case 192: return fn(ElementSize<192>{});
    case 256: return fn(ElementSize<256>{});
    case 512: return fn(ElementSize<512>{});
    case 1024: return fn(ElementSize<1024>{});
    default: return fn(ElementSize<12>{});
  }
}

}  // namespace spscagg::bench
