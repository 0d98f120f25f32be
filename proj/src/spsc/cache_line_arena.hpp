#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <new>
#include <type_traits>
#include <utility>
#include <vector>

namespace spscagg::spsc {

// One aligned allocation split into cache-line-padded control regions followed by
// a payload array. Region i starts on a line boundary and spans a whole number of
// lines, so two regions never share a line. The line size is a runtime value.
//
// The arena only owns raw memory: objects placed with emplace<T>() must be trivially
// destructible, and the payload's lifetime is managed by the owner.
class CacheLineArena {
 public:
  CacheLineArena(std::size_t line_bytes, std::initializer_list<std::size_t> region_bytes,
                 std::size_t payload_bytes, std::size_t payload_align)
      : line_(line_bytes), align_(std::max(line_bytes, payload_align)) {
    std::size_t offset = 0;
    for (std::size_t bytes : region_bytes) {
      offsets_.push_back(offset);
      offset += round_up(std::max<std::size_t>(bytes, 1), line_);
    }
    payload_offset_ = round_up(offset, align_);
    size_ = round_up(payload_offset_ + std::max<std::size_t>(payload_bytes, 1), line_);
    base_ = static_cast<std::byte*>(::operator new(size_, std::align_val_t{align_}));
  }

  CacheLineArena(const CacheLineArena&) = delete;
  CacheLineArena& operator=(const CacheLineArena&) = delete;

  ~CacheLineArena() { ::operator delete(base_, size_, std::align_val_t{align_}); }

  template <class T, class... Args>
  T* emplace(std::size_t region, Args&&... args) {
    static_assert(std::is_trivially_destructible_v<T>,
                  "arena regions are released without running destructors");
    return ::new (static_cast<void*>(base_ + offsets_.at(region)))
        T(std::forward<Args>(args)...);
  }

  void* payload() const noexcept { return base_ + payload_offset_; }
  std::byte* region_address(std::size_t region) const { return base_ + offsets_.at(region); }
  std::size_t line_bytes() const noexcept { return line_; }
  std::size_t region_count() const noexcept { return offsets_.size(); }

 private:
  static std::size_t round_up(std::size_t v, std::size_t m) noexcept {
    return (v + m - 1) / m * m;
  }

  std::size_t line_;
  std::size_t align_;
  std::vector<std::size_t> offsets_;
  std::size_t payload_offset_ = 0;
  std::size_t size_ = 0;
  std::byte* base_ = nullptr;
};

// Owns `count` value-initialised T objects living in arena payload memory.
template <class T>
class ArenaArray {
 public:
  ArenaArray(void* storage, std::size_t count) : data_(static_cast<T*>(storage)), count_(count) {
    std::uninitialized_value_construct_n(data_, count_);
  }
  ArenaArray(const ArenaArray&) = delete;
  ArenaArray& operator=(const ArenaArray&) = delete;
  ~ArenaArray() { std::destroy_n(data_, count_); }

  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }
  std::size_t size() const noexcept { return count_; }
  T* data() const noexcept { return data_; }

 private:
  T* data_;
  std::size_t count_;
};

}  // namespace spscagg::spsc
