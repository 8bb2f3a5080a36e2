#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <thread>

namespace faasproc {

// Millisecond clock used for key expiry decisions. The engine takes the clock
// as a dependency so expiry logic can be driven step-by-step in tests.
class Clock {
public:
    virtual ~Clock() = default;
    virtual int64_t now_ms() const = 0;
};

class SteadyClock : public Clock {
public:
    int64_t now_ms() const override {
        using namespace std::chrono;
        return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
    }
    static std::shared_ptr<SteadyClock> instance() {
        static auto c = std::make_shared<SteadyClock>();
        return c;
    }
};

class ManualClock : public Clock {
public:
    explicit ManualClock(int64_t start_ms = 0) : now_(start_ms) {}
    int64_t now_ms() const override { return now_.load(); }
    void advance_ms(int64_t delta) { now_.fetch_add(delta); }
    void set_ms(int64_t t) { now_.store(t); }

private:
    std::atomic<int64_t> now_;
};

// Wall time for cross-process timestamps (records, traces). Processes on one
// host compare these directly.
inline int64_t wall_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

inline int64_t wall_us() {
    using namespace std::chrono;
    return duration_cast<microseconds>(system_clock::now().time_since_epoch()).count();
}

inline void sleep_ms(int64_t ms) {
    if (ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(ms));
}

inline void sleep_us(int64_t us) {
    if (us > 0) std::this_thread::sleep_for(std::chrono::microseconds(us));
}

// Monotonic stopwatch for measured phases.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }
    double elapsed_s() const { return elapsed_ms() / 1000.0; }
    void reset() { start_ = std::chrono::steady_clock::now(); }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace faasproc
