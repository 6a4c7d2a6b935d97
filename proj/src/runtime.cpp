#include "hamlet/runtime.hpp"

#include <algorithm>

namespace hamlet {

const char* to_string(Performative p) {
    switch (p) {
        case Performative::Cfp: return "CFP";
        case Performative::Propose: return "PROPOSE";
        case Performative::Ask: return "ASK";
        case Performative::Inform: return "INFORM";
        case Performative::Result: return "RESULT";
    }
    return "?";
}

void HopTrace::append(const Envelope& env, std::uint64_t seq) {
    PerConversation& c = conversations_[env.conversation_id];
    c.records.push_back({seq, env.from, env.to, env.performative, env.verb});
    c.by_performative[env.performative]++;
    c.by_verb[env.verb]++;
}

int HopTrace::count(const std::string& conversation, Performative p) const {
    auto it = conversations_.find(conversation);
    if (it == conversations_.end()) return 0;
    auto jt = it->second.by_performative.find(p);
    return jt == it->second.by_performative.end() ? 0 : jt->second;
}

int HopTrace::count_verb(const std::string& conversation, const std::string& verb) const {
    auto it = conversations_.find(conversation);
    if (it == conversations_.end()) return 0;
    auto jt = it->second.by_verb.find(verb);
    return jt == it->second.by_verb.end() ? 0 : jt->second;
}

int HopTrace::total(const std::string& conversation) const {
    auto it = conversations_.find(conversation);
    return it == conversations_.end() ? 0 : static_cast<int>(it->second.records.size());
}

std::vector<HopTrace::Record> HopTrace::records(const std::string& conversation) const {
    auto it = conversations_.find(conversation);
    return it == conversations_.end() ? std::vector<Record>{} : it->second.records;
}

std::vector<std::string> HopTrace::conversations() const {
    std::vector<std::string> out;
    out.reserve(conversations_.size());
    for (const auto& [k, v] : conversations_) out.push_back(k);
    return out;
}

void HopTrace::clear() { conversations_.clear(); }

Runtime::Runtime(bool deterministic, unsigned workers)
    : deterministic_(deterministic),
      worker_count_(deterministic ? 0 : std::max(2u, workers ? workers : std::thread::hardware_concurrency())) {
    if (!deterministic_) {
        for (unsigned i = 0; i < worker_count_; ++i)
            workers_.emplace_back([this] { worker_loop(); });
    }
}

Runtime::~Runtime() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    cv_.notify_all();
    for (auto& t : workers_) t.join();
}

void Runtime::register_holon(HolonId id, Handler handler) {
    std::lock_guard lock(mutex_);
    handlers_[id.value] = std::move(handler);
}

bool Runtime::is_registered(HolonId id) const {
    std::lock_guard lock(mutex_);
    return handlers_.count(id.value) != 0;
}

void Runtime::send(Envelope env) {
    if (env.conversation_id.empty()) throw DeliveryError("conversation id must be non-empty");
    std::lock_guard lock(mutex_);
    if (handlers_.count(env.to.value) == 0)
        throw DeliveryError("no holon registered at address " + std::to_string(env.to.value));
    const std::uint64_t seq = seq_++;
    trace_.append(env, seq);
    if (trace_file_.is_open()) {
        nlohmann::json line = {
            {"seq", seq},
            {"conversation", env.conversation_id},
            {"from", label_fn_ ? label_fn_(env.from) : std::to_string(env.from.value)},
            {"to", label_fn_ ? label_fn_(env.to) : std::to_string(env.to.value)},
            {"performative", to_string(env.performative)},
            {"verb", env.verb},
            {"payload", env.payload}};
        trace_file_ << line.dump() << '\n';
    }
    ++pending_;
    if (deterministic_) {
        fifo_.push_back(std::move(env));
    } else {
        const std::uint32_t to = env.to.value;
        boxes_[to].push_back(std::move(env));
        if (scheduled_or_running_.insert(to).second) {
            ready_.push_back(to);
            cv_.notify_one();
        }
    }
}

void Runtime::dispatch(const Envelope& env) {
    Handler* handler;
    {
        std::lock_guard lock(mutex_);
        handler = &handlers_.at(env.to.value);
    }
    (*handler)(env);
}

std::uint64_t Runtime::run_until_idle() {
    std::uint64_t handled = 0;
    if (deterministic_) {
        for (;;) {
            Envelope env;
            {
                std::lock_guard lock(mutex_);
                if (fifo_.empty()) break;
                env = std::move(fifo_.front());
                fifo_.pop_front();
            }
            dispatch(env);
            {
                std::lock_guard lock(mutex_);
                --pending_;
                ++delivered_;
            }
            ++handled;
        }
        return handled;
    }
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [this] { return pending_ == 0 && busy_ == 0; });
    return handled;
}

void Runtime::worker_loop() {
    for (;;) {
        std::uint32_t target;
        Envelope env;
        {
            std::unique_lock lock(mutex_);
            cv_.wait(lock, [this] { return stopping_ || !ready_.empty(); });
            if (stopping_) return;
            target = ready_.front();
            ready_.pop_front();
            auto& box = boxes_[target];
            env = std::move(box.front());
            box.pop_front();
            ++busy_;
        }
        dispatch(env);
        {
            std::lock_guard lock(mutex_);
            --busy_;
            --pending_;
            ++delivered_;
            auto& box = boxes_[target];
            if (!box.empty()) {
                ready_.push_back(target); // keep the holon scheduled, one envelope at a time
                cv_.notify_one();
            } else {
                scheduled_or_running_.erase(target);
            }
            cv_.notify_all();
        }
    }
}

void Runtime::clear_trace() {
    std::lock_guard lock(mutex_);
    trace_.clear();
}

void Runtime::set_trace_file(const std::string& path, LabelFn labels) {
    std::lock_guard lock(mutex_);
    trace_file_.open(path, std::ios::trunc);
    label_fn_ = std::move(labels);
}

} // namespace hamlet
