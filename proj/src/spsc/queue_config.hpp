#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spscagg::spsc {

enum class QueueKind { Lamport, FastForward, BatchQueue, MCRingBuffer };

inline constexpr QueueKind kAllKinds[] = {QueueKind::Lamport, QueueKind::FastForward,
                                          QueueKind::BatchQueue, QueueKind::MCRingBuffer};

struct QueueConfig {
  std::size_t capacity = 128;
  std::size_t cache_line_bytes = 64;
  // MCRingBuffer only. Shared indices are published every `mcr_batch_size` operations.
  std::size_t mcr_batch_size = 1;
  // MCRingBuffer only. 0 disables heartbeats; otherwise one dummy element is injected
  // every `mcr_heartbeat_period` idle ticks on the producer endpoint.
  std::size_t mcr_heartbeat_period = 0;
  // Enables ownership tracking (BatchQueue) and other debug-only bookkeeping.
  bool debug_checks = false;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws ConfigError when `config` is not usable for `kind`.
void validate(QueueKind kind, const QueueConfig& config);

std::string_view to_string(QueueKind kind) noexcept;

// Accepts canonical names ("lamport", "fastforward", "batchqueue", "mcringbuffer")
// and the short forms "ff", "bq", "mcr".
std::optional<QueueKind> parse_kind(std::string_view name) noexcept;

// Elements the queue can hold at once before try_enqueue reports Full.
std::size_t usable_capacity(QueueKind kind, const QueueConfig& config) noexcept;

}  // namespace spscagg::spsc
