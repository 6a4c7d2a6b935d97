#pragma once

#include "hamlet/message.hpp"

#include <condition_variable>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

namespace hamlet {

/// Mailbox runtime. Every registered holon owns a FIFO mailbox and a handler
/// that must return promptly: multi-step protocols are continuation state
/// machines keyed by conversation id, never blocking waits.
///
/// Two scheduling modes:
///  - deterministic: one global FIFO processed on the calling thread; used by
///    every structure-sensitive test and replayable bit-for-bit.
///  - threaded: a small worker pool; a holon's handler runs on at most one
///    thread at a time and per-sender order is preserved through the shared
///    queue. Structural growth should be quiesced before threaded query
///    bursts; cross-holon link state is guarded by the registry lock.
class Runtime {
public:
    using Handler = std::function<void(const Envelope&)>;
    using LabelFn = std::function<std::string(HolonId)>;

    explicit Runtime(bool deterministic = true, unsigned workers = 0);
    ~Runtime();

    Runtime(const Runtime&) = delete;
    Runtime& operator=(const Runtime&) = delete;

    void register_holon(HolonId id, Handler handler);
    bool is_registered(HolonId id) const;

    /// Enqueues exactly once; unknown recipients raise DeliveryError.
    void send(Envelope env);

    /// Drains every mailbox; returns the number of envelopes handled.
    std::uint64_t run_until_idle();

    bool deterministic() const { return deterministic_; }
    const HopTrace& trace() const { return trace_; }
    void clear_trace();

    /// JSON-lines sink, one envelope per line in delivery order.
    void set_trace_file(const std::string& path, LabelFn labels = {});

    std::uint64_t delivered() const { return delivered_; }

private:
    void dispatch(const Envelope& env);
    void worker_loop();

    bool deterministic_;
    unsigned worker_count_;

    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::map<std::uint32_t, Handler> handlers_;
    std::deque<Envelope> fifo_;                  // deterministic mode
    std::map<std::uint32_t, std::deque<Envelope>> boxes_; // threaded mode
    std::deque<std::uint32_t> ready_;
    std::set<std::uint32_t> scheduled_or_running_;
    std::vector<std::thread> workers_;
    bool stopping_ = false;
    unsigned busy_ = 0;
    std::uint64_t pending_ = 0;
    std::uint64_t delivered_ = 0;
    std::uint64_t seq_ = 0;

    HopTrace trace_;
    std::ofstream trace_file_;
    LabelFn label_fn_;
};

} // namespace hamlet
