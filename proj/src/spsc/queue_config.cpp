#include "spsc/queue_config.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <utility>

namespace spscagg::spsc {

void validate(QueueKind kind, const QueueConfig& config) {
  if (config.capacity < 2) {
    throw ConfigError("capacity must be at least 2, got " + std::to_string(config.capacity));
  }
  if (!std::has_single_bit(config.cache_line_bytes) || config.cache_line_bytes < 8 ||
      config.cache_line_bytes > 4096) {
    throw ConfigError("cache_line_bytes must be a power of two in [8, 4096], got " +
                      std::to_string(config.cache_line_bytes));
  }
  if (kind == QueueKind::BatchQueue && config.capacity % 2 != 0) {
    throw ConfigError("BatchQueue capacity must be even (two halves), got " +
                      std::to_string(config.capacity));
  }
  if (kind == QueueKind::MCRingBuffer) {
    if (config.mcr_batch_size == 0 || config.mcr_batch_size > config.capacity) {
      throw ConfigError("mcr_batch_size must be in [1, capacity], got " +
                        std::to_string(config.mcr_batch_size));
    }
    if (config.capacity % config.mcr_batch_size != 0) {
      throw ConfigError("mcr_batch_size " + std::to_string(config.mcr_batch_size) +
                        " does not divide capacity " + std::to_string(config.capacity));
    }
  }
}

std::string_view to_string(QueueKind kind) noexcept {
  switch (kind) {
    case QueueKind::Lamport:
      return "lamport";
    case QueueKind::FastForward:
      return "fastforward";
    case QueueKind::BatchQueue:
      return "batchqueue";
    case QueueKind::MCRingBuffer:
      return "mcringbuffer";
  }
  return "unknown";
}

std::optional<QueueKind> parse_kind(std::string_view name) noexcept {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  static constexpr std::array<std::pair<std::string_view, QueueKind>, 8> kNames{{
      {"lamport", QueueKind::Lamport},
      {"fastforward", QueueKind::FastForward},
      {"ff", QueueKind::FastForward},
      {"batchqueue", QueueKind::BatchQueue},
      {"bq", QueueKind::BatchQueue},
      {"mcringbuffer", QueueKind::MCRingBuffer},
      {"mcr", QueueKind::MCRingBuffer},
      {"mcring", QueueKind::MCRingBuffer},
  }};
  for (const auto& [key, kind] : kNames) {
    if (lower == key) return kind;
  }
  return std::nullopt;
}

std::size_t usable_capacity(QueueKind kind, const QueueConfig& config) noexcept {
  switch (kind) {
    case QueueKind::Lamport:
    case QueueKind::MCRingBuffer:
      return config.capacity - 1;
    case QueueKind::FastForward:
    case QueueKind::BatchQueue:
      return config.capacity;
  }
  return 0;
}

}  // namespace spscagg::spsc
