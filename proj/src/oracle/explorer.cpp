#include "oracle/explorer.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <deque>
#include <optional>
#include <sstream>
#include <string_view>
#include <type_traits>
#include <unordered_map>

namespace spscagg::oracle {

namespace {

using spsc::QueueKind;

constexpr std::int8_t kTerm = 99;

// Whole model state: shared memory, both agents' program counters and private
// registers. Every field is a byte so the struct has no padding and can be hashed and
// compared as raw bytes.
struct ModelState {
  std::int8_t ring[kMaxExploreCapacity];
  std::int8_t tag[kMaxExploreCapacity];  // FastForward occupancy tags
  std::int8_t sh[4];                     // shared scalars, meaning depends on the kind
  std::int8_t p[4];                      // producer registers
  std::int8_t c[8];                      // consumer registers
  std::int8_t cbuf[kMaxExploreCapacity / 2];  // BatchQueue consumer copy buffer
  std::int8_t p_pc;
  std::int8_t c_pc;
  std::int8_t p_ops;  // elements committed by the producer
  std::int8_t c_ops;  // elements returned to the consumer
  std::int8_t p_pub;  // Lamport: tail publications
  std::int8_t c_pub;  // Lamport: head publications
  std::int8_t c_drained;
  std::int8_t unused;
};
static_assert(std::has_unique_object_representations_v<ModelState>);

bool operator==(const ModelState& a, const ModelState& b) {
  return std::memcmp(&a, &b, sizeof(ModelState)) == 0;
}

struct StateHash {
  std::size_t operator()(const ModelState& s) const noexcept {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(&s), sizeof(ModelState)));
  }
};

enum class Thread { Producer, Consumer };

class Describer {
 public:
  explicit Describer(std::string* out) : out_(out) {}
  template <class... Parts>
  void operator()(const Parts&... parts) const {
    if (!out_) return;
    std::ostringstream os;
    (os << ... << parts);
    *out_ = os.str();
  }

 private:
  std::string* out_;
};

// Register / shared-slot names per kind.
namespace lamport {
enum Shared { kHead, kTail, kDone };
enum Prod { kTailCopy };
enum Cons { kHeadCopy, kSawDone };
}  // namespace lamport
namespace ff {
enum Shared { kDone = 2 };
enum Prod { kTail };
enum Cons { kHead, kSawDone };
}  // namespace ff
namespace bq {
enum Shared { kIsFull, kFinalEnq, kDone };
enum Prod { kEnq, kPending };
enum Cons { kDeq, kBufPos, kBufLen, kSawDone, kCopyJ, kCopyN, kCopyingHalf, kLeftoverPath };
}  // namespace bq
namespace mcr {
enum Shared { kRead, kWrite, kDone };
enum Prod { kLocalRead, kNextWrite, kWBatch, kPublishedWrite };
enum Cons { kLocalWrite, kNextRead, kRBatch, kPublishedRead, kSawDone };
}  // namespace mcr

class Machine {
 public:
  Machine(QueueKind kind, const ExploreBounds& b, Mutation m)
      : kind_(kind),
        cap_(static_cast<int>(b.capacity)),
        half_(static_cast<int>(b.capacity / 2)),
        enq_(static_cast<int>(b.enqueues)),
        deq_(static_cast<int>(b.dequeues)),
        batch_(static_cast<int>(b.mcr_batch)),
        mutant_(m == Mutation::PublishBeforeWrite) {}

  // Executes one atomic step. Returns false if `th` has terminated.
  bool step(ModelState& s, Thread th, std::string* desc, std::string& violation) const {
    Describer say(desc);
    if (th == Thread::Producer) {
      if (s.p_pc == kTerm) return false;
      switch (kind_) {
        case QueueKind::Lamport:
          lamport_producer(s, say);
          break;
        case QueueKind::FastForward:
          ff_producer(s, say);
          break;
        case QueueKind::BatchQueue:
          bq_producer(s, say, violation);
          break;
        case QueueKind::MCRingBuffer:
          mcr_producer(s, say);
          break;
      }
    } else {
      if (s.c_pc == kTerm) return false;
      switch (kind_) {
        case QueueKind::Lamport:
          lamport_consumer(s, say, violation);
          break;
        case QueueKind::FastForward:
          ff_consumer(s, say, violation);
          break;
        case QueueKind::BatchQueue:
          bq_consumer(s, say, violation);
          break;
        case QueueKind::MCRingBuffer:
          mcr_consumer(s, say, violation);
          break;
      }
    }
    if (violation.empty()) violation = invariant_violation(s);
    return true;
  }

  bool terminal(const ModelState& s) const {
    if (s.c_pc != kTerm) return false;
    return s.p_pc == kTerm || deq_ < enq_;
  }

  std::string terminal_violation(const ModelState& s) const {
    if (s.c_drained && s.c_ops != s.p_ops) {
      return "consumer drained " + std::to_string(s.c_ops) + " of " + std::to_string(s.p_ops) +
             " committed elements";
    }
    if (!s.c_drained && s.c_ops != deq_) return "consumer stopped early";
    return {};
  }

  bool progress_required() const { return deq_ >= enq_; }

 private:
  std::int8_t next(int i) const { return static_cast<std::int8_t>((i + 1) % cap_); }
  std::int8_t value(const ModelState& s) const { return static_cast<std::int8_t>(s.p_ops + 1); }

  static void check_value(const ModelState& s, int v, std::string& violation) {
    if (v != s.c_ops + 1) {
      violation = "FIFO violated: dequeued " + std::to_string(v) + ", expected " +
                  std::to_string(s.c_ops + 1);
    }
  }

  // ---- Lamport -------------------------------------------------------------
  void lamport_producer(ModelState& s, const Describer& say) const {
    using namespace lamport;
    const int t = s.p[kTailCopy];
    switch (s.p_pc) {
      case 0:
        if (s.p_ops == enq_) {
          s.sh[kDone] = 1;
          s.p_pc = kTerm;
          say("P: store done=1");
          return;
        }
        say("P: load head=", int(s.sh[kHead]));
        if (next(t) != s.sh[kHead]) s.p_pc = mutant_ ? 3 : 1;
        return;
      case 1:
        s.ring[t] = value(s);
        s.p_pc = 2;
        say("P: store ring[", t, "]=", int(s.ring[t]));
        return;
      case 2:
        s.sh[kTail] = s.p[kTailCopy] = next(t);
        ++s.p_ops;
        ++s.p_pub;
        s.p_pc = 0;
        say("P: store tail=", int(s.sh[kTail]));
        return;
      case 3:
        s.sh[kTail] = next(t);
        ++s.p_pub;
        s.p_pc = 4;
        say("P: store tail=", int(s.sh[kTail]), " (before payload)");
        return;
      case 4:
        s.ring[t] = value(s);
        s.p[kTailCopy] = next(t);
        ++s.p_ops;
        s.p_pc = 0;
        say("P: store ring[", t, "]=", int(s.ring[t]));
        return;
    }
  }

  void lamport_consumer(ModelState& s, const Describer& say, std::string& violation) const {
    using namespace lamport;
    const int h = s.c[kHeadCopy];
    switch (s.c_pc) {
      case 0:
        if (s.c_ops == deq_) {
          s.c_pc = kTerm;
          say("C: done after ", deq_, " dequeues");
          return;
        }
        s.c[kSawDone] = s.sh[kDone];
        s.c_pc = 1;
        say("C: load done=", int(s.sh[kDone]));
        return;
      case 1:
        say("C: load tail=", int(s.sh[kTail]));
        if (s.sh[kTail] != h) {
          s.c_pc = 2;
        } else if (s.c[kSawDone]) {
          s.c_pc = kTerm;
          s.c_drained = 1;
        } else {
          s.c_pc = 0;
        }
        return;
      case 2:
        say("C: load ring[", h, "]=", int(s.ring[h]));
        check_value(s, s.ring[h], violation);
        s.c_pc = 3;
        return;
      case 3:
        s.sh[kHead] = s.c[kHeadCopy] = next(h);
        ++s.c_ops;
        ++s.c_pub;
        s.c_pc = 0;
        say("C: store head=", int(s.sh[kHead]));
        return;
    }
  }

  // ---- FastForward ---------------------------------------------------------
  void ff_producer(ModelState& s, const Describer& say) const {
    using namespace ff;
    const int t = s.p[kTail];
    switch (s.p_pc) {
      case 0:
        if (s.p_ops == enq_) {
          s.sh[kDone] = 1;
          s.p_pc = kTerm;
          say("P: store done=1");
          return;
        }
        say("P: load tag[", t, "]=", int(s.tag[t]));
        if (!s.tag[t]) s.p_pc = mutant_ ? 3 : 1;
        return;
      case 1:
        s.ring[t] = value(s);
        s.p_pc = 2;
        say("P: store ring[", t, "]=", int(s.ring[t]));
        return;
      case 2:
        s.tag[t] = 1;
        s.p[kTail] = next(t);
        ++s.p_ops;
        s.p_pc = 0;
        say("P: store tag[", t, "]=1");
        return;
      case 3:
        s.tag[t] = 1;
        s.p_pc = 4;
        say("P: store tag[", t, "]=1 (before payload)");
        return;
      case 4:
        s.ring[t] = value(s);
        s.p[kTail] = next(t);
        ++s.p_ops;
        s.p_pc = 0;
        say("P: store ring[", t, "]=", int(s.ring[t]));
        return;
    }
  }

  void ff_consumer(ModelState& s, const Describer& say, std::string& violation) const {
    using namespace ff;
    const int h = s.c[kHead];
    switch (s.c_pc) {
      case 0:
        if (s.c_ops == deq_) {
          s.c_pc = kTerm;
          say("C: done after ", deq_, " dequeues");
          return;
        }
        s.c[kSawDone] = s.sh[kDone];
        s.c_pc = 1;
        say("C: load done=", int(s.sh[kDone]));
        return;
      case 1:
        say("C: load tag[", h, "]=", int(s.tag[h]));
        if (s.tag[h]) {
          s.c_pc = 2;
        } else if (s.c[kSawDone]) {
          s.c_pc = kTerm;
          s.c_drained = 1;
        } else {
          s.c_pc = 0;
        }
        return;
      case 2:
        say("C: load ring[", h, "]=", int(s.ring[h]));
        check_value(s, s.ring[h], violation);
        s.c_pc = 3;
        return;
      case 3:
        s.tag[h] = 0;
        s.c[kHead] = next(h);
        ++s.c_ops;
        s.c_pc = 0;
        say("C: store tag[", h, "]=0");
        return;
    }
  }

  // ---- BatchQueue ----------------------------------------------------------
  void bq_write(ModelState& s, const Describer& say, std::string& violation) const {
    using namespace bq;
    const int e = s.p[kEnq];
    if (s.c[kCopyingHalf] != 0 && s.c[kCopyingHalf] - 1 == e / half_) {
      violation = "producer wrote slot " + std::to_string(e) + " of the half being copied";
    }
    s.ring[e] = value(s);
    s.p[kEnq] = next(e);
    ++s.p_ops;
    say("P: store ring[", e, "]=", int(s.ring[e]));
  }

  void bq_producer(ModelState& s, const Describer& say, std::string& violation) const {
    using namespace bq;
    switch (s.p_pc) {
      case 0:
        if (s.p_ops == enq_) {
          s.sh[kFinalEnq] = s.p[kEnq];
          s.p_pc = 21;
          say("P: store final_enq=", int(s.p[kEnq]));
          return;
        }
        if (s.p[kPending]) {
          say("P: load is_full=", int(s.sh[kIsFull]), " (deferred hand-off)");
          if (!s.sh[kIsFull]) s.p_pc = 5;
          return;
        }
        s.p_pc = (mutant_ && (s.p[kEnq] + 1) % half_ == 0) ? 30 : 1;
        say("P: begin enqueue of ", int(value(s)));
        return;
      case 5:
        s.sh[kIsFull] = 1;
        s.p[kPending] = 0;
        s.p_pc = 1;
        say("P: store is_full=1 (deferred hand-off)");
        return;
      case 1:
        bq_write(s, say, violation);
        s.p_pc = (s.p[kEnq] % half_ == 0) ? 2 : 0;
        return;
      case 2:
        say("P: load is_full=", int(s.sh[kIsFull]));
        if (!s.sh[kIsFull]) {
          s.p_pc = 3;
        } else {
          s.p[kPending] = 1;
          s.p_pc = 0;
        }
        return;
      case 3:
        s.sh[kIsFull] = 1;
        s.p_pc = 0;
        say("P: store is_full=1");
        return;
      case 21:
        s.sh[kDone] = 1;
        s.p_pc = kTerm;
        say("P: store done=1");
        return;
      case 30:
        say("P: load is_full=", int(s.sh[kIsFull]));
        if (!s.sh[kIsFull]) s.p_pc = 31;
        return;
      case 31:
        s.sh[kIsFull] = 1;
        s.p_pc = 32;
        say("P: store is_full=1 (before payload)");
        return;
      case 32:
        bq_write(s, say, violation);
        s.p_pc = 0;
        return;
    }
  }

  void bq_consumer(ModelState& s, const Describer& say, std::string& violation) const {
    using namespace bq;
    switch (s.c_pc) {
      case 0:
        if (s.c_ops == deq_) {
          s.c_pc = kTerm;
          say("C: done after ", deq_, " dequeues");
          return;
        }
        if (s.c[kBufPos] < s.c[kBufLen]) {
          const int v = s.cbuf[s.c[kBufPos]];
          say("C: take copy_buf[", int(s.c[kBufPos]), "]=", v);
          check_value(s, v, violation);
          ++s.c[kBufPos];
          ++s.c_ops;
          return;
        }
        s.c[kSawDone] = s.sh[kDone];
        s.c_pc = 2;
        say("C: load done=", int(s.sh[kDone]));
        return;
      case 2:
        say("C: load is_full=", int(s.sh[kIsFull]));
        if (s.sh[kIsFull]) {
          start_copy(s, half_, false);
        } else {
          s.c_pc = s.c[kSawDone] ? 6 : 0;
        }
        return;
      case 3: {
        const int slot = s.c[kDeq] + s.c[kCopyJ];
        s.cbuf[s.c[kCopyJ]] = s.ring[slot];
        say("C: load ring[", slot, "]=", int(s.ring[slot]));
        if (++s.c[kCopyJ] == s.c[kCopyN]) s.c_pc = s.c[kLeftoverPath] ? 8 : 4;
        return;
      }
      case 4:
        finish_copy(s);
        s.sh[kIsFull] = 0;
        say("C: store is_full=0");
        return;
      case 6: {
        const int remaining = (s.sh[kFinalEnq] + cap_ - s.c[kDeq]) % cap_;
        say("C: load final_enq=", int(s.sh[kFinalEnq]));
        if (remaining == 0) {
          s.c_pc = kTerm;
          s.c_drained = 1;
        } else {
          start_copy(s, remaining, true);
        }
        return;
      }
      case 8:
        finish_copy(s);
        say("C: leftover copy complete");
        return;
    }
  }

  void start_copy(ModelState& s, int count, bool leftover) const {
    using namespace bq;
    s.c[kCopyJ] = 0;
    s.c[kCopyN] = static_cast<std::int8_t>(count);
    s.c[kCopyingHalf] = static_cast<std::int8_t>(s.c[kDeq] / half_ + 1);
    s.c[kLeftoverPath] = leftover ? 1 : 0;
    s.c_pc = 3;
  }

  void finish_copy(ModelState& s) const {
    using namespace bq;
    s.c[kDeq] = static_cast<std::int8_t>((s.c[kDeq] + s.c[kCopyN]) % cap_);
    s.c[kBufPos] = 0;
    s.c[kBufLen] = s.c[kCopyN];
    s.c[kCopyingHalf] = 0;
    s.c[kCopyJ] = s.c[kCopyN] = s.c[kLeftoverPath] = 0;
    s.c_pc = 0;
  }

  // ---- MCRingBuffer --------------------------------------------------------
  void mcr_producer(ModelState& s, const Describer& say) const {
    using namespace mcr;
    const int nw = s.p[kNextWrite];
    switch (s.p_pc) {
      case 0:
        if (s.p_ops == enq_) {
          s.p_pc = s.p[kWBatch] > 0 ? 10 : 11;
          say("P: begin finish");
          return;
        }
        s.p_pc = next(nw) == s.p[kLocalRead] ? 1 : 2;
        say("P: begin enqueue of ", int(value(s)));
        return;
      case 1:
        s.p[kLocalRead] = s.sh[kRead];
        say("P: load read=", int(s.sh[kRead]));
        if (next(nw) != s.p[kLocalRead]) {
          s.p_pc = 2;
        } else if (s.p[kPublishedWrite] != nw) {
          s.p_pc = 5;
        }
        return;
      case 5:
        s.sh[kWrite] = s.p[kPublishedWrite] = static_cast<std::int8_t>(nw);
        s.p_pc = 1;
        say("P: store write=", nw, " (stall)");
        return;
      case 2:
        if (mutant_ && s.p[kWBatch] + 1 >= batch_) {
          s.sh[kWrite] = s.p[kPublishedWrite] = next(nw);
          s.p_pc = 8;
          say("P: store write=", int(next(nw)), " (before payload)");
          return;
        }
        s.ring[nw] = value(s);
        s.p[kNextWrite] = next(nw);
        ++s.p[kWBatch];
        ++s.p_ops;
        s.p_pc = s.p[kWBatch] >= batch_ ? 3 : 0;
        say("P: store ring[", nw, "]=", int(s.ring[nw]));
        return;
      case 3:
        s.sh[kWrite] = s.p[kPublishedWrite] = static_cast<std::int8_t>(nw);
        s.p[kWBatch] = 0;
        s.p_pc = 0;
        say("P: store write=", nw);
        return;
      case 8:
        s.ring[nw] = value(s);
        s.p[kNextWrite] = next(nw);
        s.p[kWBatch] = 0;
        ++s.p_ops;
        s.p_pc = 0;
        say("P: store ring[", nw, "]=", int(s.ring[nw]));
        return;
      case 10:
        s.sh[kWrite] = s.p[kPublishedWrite] = static_cast<std::int8_t>(nw);
        s.p[kWBatch] = 0;
        s.p_pc = 11;
        say("P: store write=", nw, " (finish)");
        return;
      case 11:
        s.sh[kDone] = 1;
        s.p_pc = kTerm;
        say("P: store done=1");
        return;
    }
  }

  void mcr_consumer(ModelState& s, const Describer& say, std::string& violation) const {
    using namespace mcr;
    const int nr = s.c[kNextRead];
    switch (s.c_pc) {
      case 0:
        if (s.c_ops == deq_) {
          s.c_pc = kTerm;
          say("C: done after ", deq_, " dequeues");
          return;
        }
        s.c[kSawDone] = s.sh[kDone];
        s.c_pc = nr == s.c[kLocalWrite] ? 1 : 2;
        say("C: load done=", int(s.sh[kDone]));
        return;
      case 1:
        s.c[kLocalWrite] = s.sh[kWrite];
        say("C: load write=", int(s.sh[kWrite]));
        if (nr != s.c[kLocalWrite]) {
          s.c_pc = 2;
        } else if (s.c[kSawDone]) {
          s.c_pc = kTerm;
          s.c_drained = 1;
        } else {
          s.c_pc = s.c[kPublishedRead] != nr ? 5 : 0;
        }
        return;
      case 5:
        s.sh[kRead] = s.c[kPublishedRead] = static_cast<std::int8_t>(nr);
        s.c_pc = 0;
        say("C: store read=", nr, " (stall)");
        return;
      case 2:
        say("C: load ring[", nr, "]=", int(s.ring[nr]));
        check_value(s, s.ring[nr], violation);
        s.c[kNextRead] = next(nr);
        ++s.c[kRBatch];
        ++s.c_ops;
        s.c_pc = s.c[kRBatch] >= batch_ ? 3 : 0;
        return;
      case 3:
        s.sh[kRead] = s.c[kPublishedRead] = static_cast<std::int8_t>(nr);
        s.c[kRBatch] = 0;
        s.c_pc = 0;
        say("C: store read=", nr);
        return;
    }
  }

  std::string invariant_violation(const ModelState& s) const {
    switch (kind_) {
      case QueueKind::Lamport: {
        using namespace lamport;
        const int occupancy = (s.sh[kTail] - s.sh[kHead] + cap_) % cap_;
        if (occupancy != s.p_pub - s.c_pub || occupancy > cap_ - 1) {
          return "Lamport occupancy " + std::to_string(occupancy) + " disagrees with " +
                 std::to_string(s.p_pub - s.c_pub) + " published-but-unconsumed elements";
        }
        return {};
      }
      case QueueKind::MCRingBuffer: {
        using namespace mcr;
        const int wlag = (s.p[kNextWrite] - s.sh[kWrite] + cap_) % cap_;
        if ((s.p_pc != 3 && s.p[kWBatch] >= batch_) || wlag > s.p[kWBatch]) {
          return "MCRingBuffer write lag " + std::to_string(wlag) + " exceeds batch bound";
        }
        const int rlag = (s.c[kNextRead] - s.sh[kRead] + cap_) % cap_;
        if ((s.c_pc != 3 && s.c[kRBatch] >= batch_) || rlag > s.c[kRBatch]) {
          return "MCRingBuffer read lag " + std::to_string(rlag) + " exceeds batch bound";
        }
        return {};
      }
      case QueueKind::FastForward:
      case QueueKind::BatchQueue:
        return {};
    }
    return {};
  }

  QueueKind kind_;
  int cap_;
  int half_;
  int enq_;
  int deq_;
  int batch_;
  bool mutant_;
};

struct Edge {
  std::size_t parent;
  Thread thread;
};

std::vector<std::string> replay(const Machine& machine, const std::vector<ModelState>& states,
                                const std::vector<Edge>& edges, std::size_t target,
                                std::optional<Thread> last_step) {
  std::vector<std::pair<std::size_t, Thread>> path;
  for (std::size_t id = target; id != 0; id = edges[id].parent) {
    path.emplace_back(edges[id].parent, edges[id].thread);
  }
  std::reverse(path.begin(), path.end());
  if (last_step) path.emplace_back(target, *last_step);

  std::vector<std::string> trace;
  for (const auto& [from, thread] : path) {
    ModelState s = states[from];
    std::string desc;
    std::string ignored;
    machine.step(s, thread, &desc, ignored);
    trace.push_back(std::move(desc));
  }
  return trace;
}

}  // namespace

ExploreResult explore_interleavings(spsc::QueueKind kind, const ExploreBounds& bounds,
                                    Mutation mutation) {
  if (bounds.capacity > kMaxExploreCapacity || bounds.enqueues > kMaxExploreOps ||
      bounds.dequeues > kMaxExploreOps) {
    throw BoundsExceeded("explorer supports capacity <= " + std::to_string(kMaxExploreCapacity) +
                         " and <= " + std::to_string(kMaxExploreOps) + " operations per side");
  }
  spsc::QueueConfig config;
  config.capacity = bounds.capacity;
  config.mcr_batch_size = bounds.mcr_batch;
  spsc::validate(kind, config);

  const Machine machine(kind, bounds, mutation);
  ModelState initial{};

  std::vector<ModelState> states{initial};
  std::vector<Edge> edges{{0, Thread::Producer}};
  std::vector<std::vector<std::size_t>> predecessors(1);
  std::unordered_map<ModelState, std::size_t, StateHash> index{{initial, 0}};

  ExploreResult result;
  auto fail = [&](std::string why, std::size_t at, std::optional<Thread> step) {
    result.ok = false;
    result.violation = std::move(why);
    result.trace = replay(machine, states, edges, at, step);
    result.states = states.size();
    return result;
  };

  for (std::size_t id = 0; id < states.size(); ++id) {
    if (machine.terminal(states[id])) {
      std::string why = machine.terminal_violation(states[id]);
      if (!why.empty()) return fail(std::move(why), id, std::nullopt);
    }
    for (Thread th : {Thread::Producer, Thread::Consumer}) {
      ModelState next = states[id];
      std::string violation;
      if (!machine.step(next, th, nullptr, violation)) continue;
      if (!violation.empty()) return fail(std::move(violation), id, th);
      if (next == states[id]) continue;
      auto [it, inserted] = index.try_emplace(next, states.size());
      if (inserted) {
        states.push_back(next);
        edges.push_back({id, th});
        predecessors.emplace_back();
      }
      predecessors[it->second].push_back(id);
    }
  }
  result.states = states.size();

  if (machine.progress_required()) {
    // Every reachable state must be able to reach a terminal state.
    std::vector<bool> can_finish(states.size(), false);
    std::deque<std::size_t> work;
    for (std::size_t id = 0; id < states.size(); ++id) {
      if (machine.terminal(states[id])) {
        can_finish[id] = true;
        work.push_back(id);
      }
    }
    while (!work.empty()) {
      const std::size_t id = work.front();
      work.pop_front();
      for (std::size_t pred : predecessors[id]) {
        if (!can_finish[pred]) {
          can_finish[pred] = true;
          work.push_back(pred);
        }
      }
    }
    for (std::size_t id = 0; id < states.size(); ++id) {
      if (!can_finish[id]) return fail("no terminal state reachable (livelock)", id, std::nullopt);
    }
  }
  return result;
}

}  // namespace spscagg::oracle
