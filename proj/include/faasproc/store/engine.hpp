#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <variant>
#include <vector>

#include "faasproc/common/bytes.hpp"
#include "faasproc/common/clock.hpp"
#include "faasproc/common/error.hpp"
#include "faasproc/common/rate_limiter.hpp"

namespace faasproc::store {

struct EngineOptions {
    std::shared_ptr<Clock> clock;        // expiry clock; defaults to steady time
    int64_t sweep_interval_ms = 500;     // periodic expired-key sweep
    bool background_thread = true;       // timer for async pop deadlines + sweeps
    double throttle_mbps = 0.0;          // value-byte bandwidth cap, 0 = unlimited
};

// In-memory data-structure store. A key holds one of: a byte-string list, a
// field->bytes hash, or a signed counter. All mutations are applied under a
// single mutex (the sequencer); blocked pops park outside it in per-key FIFO
// waiter queues and are resumed by push, deadline, or engine shutdown.
//
// Every successful command on a key re-arms its expiry deadline. Expired keys
// behave exactly like absent keys; a periodic sweep reclaims them.
class Engine {
public:
    using PopCallback = std::function<void(Result<Bytes>)>;

    explicit Engine(EngineOptions opts = {}) : opts_(std::move(opts)) {
        if (!opts_.clock) opts_.clock = SteadyClock::instance();
        throttle_.set_rate_mbps(opts_.throttle_mbps);
        if (opts_.background_thread) timer_ = std::thread([this] { timer_loop(); });
    }

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    ~Engine() {
        std::vector<Fired> fired;
        {
            std::lock_guard<std::mutex> lock(mu_);
            stopping_ = true;
            for (auto& [key, q] : waiters_) {
                for (auto& t : q) {
                    if (!t->done) {
                        t->done = true;
                        fired.push_back({std::move(t->cb), Error{ErrCode::Timeout, "engine shutdown"}});
                    }
                }
            }
            waiters_.clear();
            timer_cv_.notify_all();
        }
        run_fired(fired);
        if (timer_.joinable()) timer_.join();
    }

    // ---- list commands ----

    Result<int64_t> push_tail(std::string_view key, Bytes value) {
        throttle_.acquire(value.size());
        std::vector<Fired> fired;
        Result<int64_t> r = [&]() -> Result<int64_t> {
            std::lock_guard<std::mutex> lock(mu_);
            return push_locked(key, std::move(value), fired);
        }();
        run_fired(fired);
        return r;
    }

    // Applies the whole batch under one sequencer acquisition; waiter
    // hand-offs happen per element. Returns the final list length.
    Result<int64_t> push_tail_batch(std::string_view key, std::vector<Bytes> values) {
        size_t bytes = 0;
        for (auto& v : values) bytes += v.size();
        throttle_.acquire(bytes);
        std::vector<Fired> fired;
        Result<int64_t> r = [&]() -> Result<int64_t> {
            std::lock_guard<std::mutex> lock(mu_);
            Result<int64_t> last{int64_t(0)};
            for (auto& v : values) {
                last = push_locked(key, std::move(v), fired);
                if (!last.ok()) break;
            }
            return last;
        }();
        run_fired(fired);
        return r;
    }

    // timeout_ms: nullopt = wait forever, 0 = immediate, >0 = deadline.
    Result<Bytes> pop_head_blocking(std::string_view key, std::optional<int64_t> timeout_ms) {
        struct WaitState {
            std::mutex m;
            std::condition_variable cv;
            bool done = false;
            std::optional<Result<Bytes>> result;
        };
        auto st = std::make_shared<WaitState>();
        TicketPtr ticket;
        {
            std::unique_lock<std::mutex> lock(mu_);
            auto fast = try_pop_locked(key);
            if (fast.has_value()) {
                Result<Bytes> r = std::move(*fast);
                lock.unlock();
                if (r.ok()) throttle_.acquire(r->size());
                return r;
            }
            if (timeout_ms && *timeout_ms <= 0) return Error{ErrCode::Timeout, "no element"};
            ticket = std::make_shared<Ticket>();
            ticket->seq = next_seq_++;
            ticket->key = std::string(key);
            ticket->cb = [st](Result<Bytes> r) {
                std::lock_guard<std::mutex> lk(st->m);
                st->result = std::move(r);
                st->done = true;
                st->cv.notify_all();
            };
            waiters_[ticket->key].push_back(ticket);
        }
        std::unique_lock<std::mutex> lk(st->m);
        if (timeout_ms) {
            if (!st->cv.wait_for(lk, std::chrono::milliseconds(*timeout_ms),
                                 [&] { return st->done; })) {
                lk.unlock();
                if (cancel_ticket(ticket)) return Error{ErrCode::Timeout, "pop timed out"};
                lk.lock();
                st->cv.wait(lk, [&] { return st->done; });  // delivery already in flight
            }
        } else {
            st->cv.wait(lk, [&] { return st->done; });
        }
        Result<Bytes> r = std::move(*st->result);
        if (r.ok()) throttle_.acquire(r->size());
        return r;
    }

    // Non-parking form for servers: the callback fires exactly once, from a
    // pushing thread, the timer thread, or inline for immediate results.
    void pop_head_async(std::string_view key, std::optional<int64_t> timeout_ms, PopCallback cb) {
        std::optional<Result<Bytes>> immediate;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto fast = try_pop_locked(key);
            if (fast.has_value()) {
                immediate = std::move(*fast);
            } else if (timeout_ms && *timeout_ms <= 0) {
                immediate = Result<Bytes>(Error{ErrCode::Timeout, "no element"});
            } else if (stopping_) {
                immediate = Result<Bytes>(Error{ErrCode::Timeout, "engine shutdown"});
            } else {
                auto ticket = std::make_shared<Ticket>();
                ticket->seq = next_seq_++;
                ticket->key = std::string(key);
                ticket->cb = std::move(cb);
                waiters_[ticket->key].push_back(ticket);
                if (timeout_ms) {
                    auto at = std::chrono::steady_clock::now() +
                              std::chrono::milliseconds(*timeout_ms);
                    deadlines_.push({at, ticket});
                    timer_cv_.notify_all();
                }
                return;
            }
        }
        if (immediate->ok()) throttle_.acquire((*immediate)->size());
        cb(std::move(*immediate));
    }

    Result<int64_t> list_len(std::string_view key) {
        std::lock_guard<std::mutex> lock(mu_);
        Entry* e = find_live(key);
        if (!e) return int64_t(0);
        auto* list = std::get_if<List>(&e->value);
        if (!list) return wrong_type(key);
        touch(*e);
        return int64_t(list->size());
    }

    Result<Bytes> list_index_get(std::string_view key, int64_t index) {
        Result<Bytes> r = [&]() -> Result<Bytes> {
            std::lock_guard<std::mutex> lock(mu_);
            Entry* e = find_live(key);
            if (!e) return Error{ErrCode::IndexOutOfRange, "no such key"};
            auto* list = std::get_if<List>(&e->value);
            if (!list) return wrong_type(key);
            int64_t i = normalize_index(index, int64_t(list->size()));
            if (i < 0) return Error{ErrCode::IndexOutOfRange, "index out of range"};
            touch(*e);
            return (*list)[size_t(i)];
        }();
        if (r.ok()) throttle_.acquire(r->size());
        return r;
    }

    Result<Ack> list_index_set(std::string_view key, int64_t index, Bytes value) {
        throttle_.acquire(value.size());
        std::lock_guard<std::mutex> lock(mu_);
        Entry* e = find_live(key);
        if (!e) return Error{ErrCode::IndexOutOfRange, "no such key"};
        auto* list = std::get_if<List>(&e->value);
        if (!list) return wrong_type(key);
        int64_t i = normalize_index(index, int64_t(list->size()));
        if (i < 0) return Error{ErrCode::IndexOutOfRange, "index out of range"};
        (*list)[size_t(i)] = std::move(value);
        touch(*e);
        return Ack{};
    }

    // Inclusive slice with tail-relative negative indices; out-of-range
    // bounds clamp instead of erroring, so (0, -1) is the whole list.
    Result<std::vector<Bytes>> list_range(std::string_view key, int64_t start, int64_t stop) {
        auto r = [&]() -> Result<std::vector<Bytes>> {
            std::lock_guard<std::mutex> lock(mu_);
            Entry* e = find_live(key);
            if (!e) return std::vector<Bytes>{};
            auto* list = std::get_if<List>(&e->value);
            if (!list) return wrong_type(key);
            int64_t n = int64_t(list->size());
            if (start < 0) start += n;
            if (stop < 0) stop += n;
            if (start < 0) start = 0;
            if (stop >= n) stop = n - 1;
            touch(*e);
            std::vector<Bytes> out;
            for (int64_t i = start; i <= stop && i < n; ++i)
                if (i >= 0) out.push_back((*list)[size_t(i)]);
            return out;
        }();
        if (r.ok()) {
            size_t bytes = 0;
            for (auto& v : *r) bytes += v.size();
            throttle_.acquire(bytes);
        }
        return r;
    }

    // ---- hash commands ----

    Result<bool> hash_set(std::string_view key, std::string_view field, Bytes value) {
        throttle_.acquire(value.size());
        std::lock_guard<std::mutex> lock(mu_);
        Entry* e = find_live(key);
        if (!e) e = &map_.try_emplace(std::string(key), Entry{Hash{}, -1, -1}).first->second;
        auto* hash = std::get_if<Hash>(&e->value);
        if (!hash) return wrong_type(key);
        auto [it, created] = hash->insert_or_assign(std::string(field), std::move(value));
        touch(*e);
        return created;
    }

    Result<std::optional<Bytes>> hash_get(std::string_view key, std::string_view field) {
        auto r = [&]() -> Result<std::optional<Bytes>> {
            std::lock_guard<std::mutex> lock(mu_);
            Entry* e = find_live(key);
            if (!e) return std::optional<Bytes>{};
            auto* hash = std::get_if<Hash>(&e->value);
            if (!hash) return wrong_type(key);
            touch(*e);
            auto it = hash->find(field);
            if (it == hash->end()) return std::optional<Bytes>{};
            return std::optional<Bytes>(it->second);
        }();
        if (r.ok() && r->has_value()) throttle_.acquire((*r)->size());
        return r;
    }

    Result<bool> hash_del(std::string_view key, std::string_view field) {
        std::lock_guard<std::mutex> lock(mu_);
        Entry* e = find_live(key);
        if (!e) return false;
        auto* hash = std::get_if<Hash>(&e->value);
        if (!hash) return wrong_type(key);
        auto it = hash->find(field);
        if (it == hash->end()) {
            touch(*e);
            return false;
        }
        hash->erase(it);
        if (hash->empty()) erase_key(key);  // last field removed deletes the key
        else touch(*e);
        return true;
    }

    // Fields come back sorted by name so results are deterministic across
    // transports.
    Result<std::vector<std::pair<std::string, Bytes>>> hash_get_all(std::string_view key) {
        auto r = [&]() -> Result<std::vector<std::pair<std::string, Bytes>>> {
            std::lock_guard<std::mutex> lock(mu_);
            Entry* e = find_live(key);
            if (!e) return std::vector<std::pair<std::string, Bytes>>{};
            auto* hash = std::get_if<Hash>(&e->value);
            if (!hash) return wrong_type(key);
            touch(*e);
            std::vector<std::pair<std::string, Bytes>> out(hash->begin(), hash->end());
            return out;
        }();
        if (r.ok()) {
            size_t bytes = 0;
            for (auto& [f, v] : *r) bytes += v.size();
            throttle_.acquire(bytes);
        }
        return r;
    }

    // ---- counter commands ----

    // Absent keys read as 0; the counter persists at 0 (deleting at zero is
    // the caller's policy, e.g. refcount GC).
    Result<int64_t> counter_add(std::string_view key, int64_t delta) {
        std::lock_guard<std::mutex> lock(mu_);
        Entry* e = find_live(key);
        if (!e) e = &map_.try_emplace(std::string(key), Entry{int64_t(0), -1, -1}).first->second;
        auto* counter = std::get_if<int64_t>(&e->value);
        if (!counter) return wrong_type(key);
        *counter += delta;
        touch(*e);
        return *counter;
    }

    // ---- key commands ----

    // Deleting never wakes blocked poppers; they hold out for a push or
    // their own deadline.
    bool key_delete(std::string_view key) {
        std::lock_guard<std::mutex> lock(mu_);
        Entry* e = find_live(key);
        if (!e) return false;
        erase_key(key);
        return true;
    }

    void key_expire(std::string_view key, int64_t ttl_ms) {
        std::lock_guard<std::mutex> lock(mu_);
        Entry* e = find_live(key);
        if (!e) return;  // idempotent no-op on absent keys
        e->ttl_ms = ttl_ms < 0 ? 0 : ttl_ms;
        e->deadline_ms = opts_.clock->now_ms() + e->ttl_ms;
    }

    bool key_exists(std::string_view key) {
        std::lock_guard<std::mutex> lock(mu_);
        return find_live(key) != nullptr;
    }

    // ---- maintenance / diagnostics ----

    size_t sweep_expired() {
        std::lock_guard<std::mutex> lock(mu_);
        return sweep_locked();
    }

    size_t key_count() {
        std::lock_guard<std::mutex> lock(mu_);
        size_t n = 0;
        int64_t now = opts_.clock->now_ms();
        for (auto& [k, e] : map_)
            if (!(e.deadline_ms >= 0 && now >= e.deadline_ms)) ++n;
        return n;
    }

    std::vector<std::string> keys_with_prefix(std::string_view prefix) {
        std::lock_guard<std::mutex> lock(mu_);
        std::vector<std::string> out;
        int64_t now = opts_.clock->now_ms();
        for (auto& [k, e] : map_) {
            if (e.deadline_ms >= 0 && now >= e.deadline_ms) continue;
            if (k.size() >= prefix.size() && std::string_view(k).substr(0, prefix.size()) == prefix)
                out.push_back(k);
        }
        return out;
    }

    size_t waiter_count(std::string_view key) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = waiters_.find(std::string(key));
        if (it == waiters_.end()) return 0;
        size_t n = 0;
        for (auto& t : it->second)
            if (!t->done) ++n;
        return n;
    }

    const EngineOptions& options() const { return opts_; }

private:
    using List = std::deque<Bytes>;
    using Hash = std::map<std::string, Bytes, std::less<>>;

    struct Entry {
        std::variant<List, Hash, int64_t> value;
        int64_t ttl_ms = -1;       // -1: no ttl configured
        int64_t deadline_ms = -1;  // -1: never expires
    };

    struct Ticket {
        uint64_t seq = 0;
        std::string key;
        PopCallback cb;
        bool done = false;
    };
    using TicketPtr = std::shared_ptr<Ticket>;

    struct Fired {
        PopCallback cb;
        Result<Bytes> result;
    };

    struct DeadlineItem {
        std::chrono::steady_clock::time_point at;
        TicketPtr ticket;
        bool operator>(const DeadlineItem& o) const { return at > o.at; }
    };

    Error wrong_type(std::string_view key) const {
        return Error{ErrCode::WrongType, "key holds another type: " + std::string(key)};
    }

    // Expiry check on access: expired entries are erased and reported absent.
    Entry* find_live(std::string_view key) {
        auto it = map_.find(std::string(key));
        if (it == map_.end()) return nullptr;
        if (it->second.deadline_ms >= 0 && opts_.clock->now_ms() >= it->second.deadline_ms) {
            map_.erase(it);
            return nullptr;
        }
        return &it->second;
    }

    void touch(Entry& e) {
        if (e.ttl_ms >= 0) e.deadline_ms = opts_.clock->now_ms() + e.ttl_ms;
    }

    void erase_key(std::string_view key) { map_.erase(std::string(key)); }

    static int64_t normalize_index(int64_t index, int64_t n) {
        if (index < 0) index += n;
        return (index < 0 || index >= n) ? -1 : index;
    }

    Result<int64_t> push_locked(std::string_view key, Bytes value, std::vector<Fired>& fired) {
        Entry* e = find_live(key);
        if (e && !std::holds_alternative<List>(e->value)) return wrong_type(key);
        List* list = e ? &std::get<List>(e->value) : nullptr;
        bool empty = !list || list->empty();
        if (empty) {
            if (TicketPtr t = take_waiter(key)) {
                // hand the element straight to the oldest waiter; reported
                // length counts the pushed element before the hand-off
                fired.push_back({std::move(t->cb), Result<Bytes>(std::move(value))});
                return int64_t((list ? list->size() : 0) + 1);
            }
        }
        if (!e) {
            e = &map_.try_emplace(std::string(key), Entry{List{}, -1, -1}).first->second;
            list = &std::get<List>(e->value);
        }
        list->push_back(std::move(value));
        touch(*e);
        return int64_t(list->size());
    }

    TicketPtr take_waiter(std::string_view key) {
        auto it = waiters_.find(std::string(key));
        if (it == waiters_.end()) return nullptr;
        TicketPtr live;
        auto& q = it->second;
        while (!q.empty()) {
            TicketPtr t = std::move(q.front());
            q.pop_front();
            if (!t->done) {
                t->done = true;
                live = std::move(t);
                break;
            }
        }
        if (q.empty()) waiters_.erase(it);
        return live;
    }

    // nullopt: list empty or absent (caller may park). Errors pass through.
    std::optional<Result<Bytes>> try_pop_locked(std::string_view key) {
        Entry* e = find_live(key);
        if (!e) return std::nullopt;
        auto* list = std::get_if<List>(&e->value);
        if (!list) return Result<Bytes>(wrong_type(key));
        if (list->empty()) return std::nullopt;  // not reachable in steady state
        Bytes v = std::move(list->front());
        list->pop_front();
        if (list->empty()) erase_key(key);  // last element removed deletes the key
        else touch(*e);
        return Result<Bytes>(std::move(v));
    }

    bool cancel_ticket(const TicketPtr& ticket) {
        std::lock_guard<std::mutex> lock(mu_);
        if (ticket->done) return false;
        ticket->done = true;
        auto it = waiters_.find(ticket->key);
        if (it != waiters_.end()) {
            auto& q = it->second;
            for (auto qit = q.begin(); qit != q.end(); ++qit) {
                if (*qit == ticket) {
                    q.erase(qit);
                    break;
                }
            }
            if (q.empty()) waiters_.erase(it);
        }
        return true;
    }

    void run_fired(std::vector<Fired>& fired) {
        for (auto& f : fired) f.cb(std::move(f.result));
        fired.clear();
    }

    size_t sweep_locked() {
        int64_t now = opts_.clock->now_ms();
        size_t n = 0;
        for (auto it = map_.begin(); it != map_.end();) {
            if (it->second.deadline_ms >= 0 && now >= it->second.deadline_ms) {
                it = map_.erase(it);
                ++n;
            } else {
                ++it;
            }
        }
        return n;
    }

    void timer_loop() {
        std::unique_lock<std::mutex> lock(mu_);
        auto last_sweep = std::chrono::steady_clock::now();
        while (!stopping_) {
            auto now = std::chrono::steady_clock::now();
            auto interval = std::chrono::milliseconds(std::max<int64_t>(opts_.sweep_interval_ms, 10));
            auto next = last_sweep + interval;
            if (!deadlines_.empty() && deadlines_.top().at < next) next = deadlines_.top().at;
            timer_cv_.wait_until(lock, next);
            if (stopping_) break;
            now = std::chrono::steady_clock::now();

            std::vector<Fired> fired;
            while (!deadlines_.empty() && deadlines_.top().at <= now) {
                TicketPtr t = deadlines_.top().ticket;
                deadlines_.pop();
                if (t->done) continue;
                t->done = true;
                remove_waiter(t);
                fired.push_back({std::move(t->cb), Error{ErrCode::Timeout, "pop timed out"}});
            }
            if (now - last_sweep >= interval) {
                sweep_locked();
                last_sweep = now;
            }
            if (!fired.empty()) {
                lock.unlock();
                run_fired(fired);
                lock.lock();
            }
        }
    }

    void remove_waiter(const TicketPtr& ticket) {
        auto it = waiters_.find(ticket->key);
        if (it == waiters_.end()) return;
        auto& q = it->second;
        for (auto qit = q.begin(); qit != q.end(); ++qit) {
            if (*qit == ticket) {
                q.erase(qit);
                break;
            }
        }
        if (q.empty()) waiters_.erase(it);
    }

    EngineOptions opts_;
    RateLimiter throttle_;

    mutable std::mutex mu_;
    std::unordered_map<std::string, Entry> map_;
    std::unordered_map<std::string, std::deque<TicketPtr>> waiters_;
    uint64_t next_seq_ = 0;

    std::priority_queue<DeadlineItem, std::vector<DeadlineItem>, std::greater<DeadlineItem>>
        deadlines_;
    std::condition_variable timer_cv_;
    bool stopping_ = false;
    std::thread timer_;
};

}  // namespace faasproc::store
