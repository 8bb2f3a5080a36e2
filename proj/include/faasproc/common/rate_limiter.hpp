#pragma once

#include <algorithm>
#include <chrono>
#include <mutex>
#include <thread>

namespace faasproc {

// Virtual-time bandwidth limiter. Each transfer reserves an interval on a
// shared timeline sized by bytes/rate; callers sleep until their reservation
// ends. Serializing reservations makes the limit aggregate across threads.
class RateLimiter {
public:
    // mbps <= 0 disables the limiter.
    explicit RateLimiter(double mbps = 0.0) : mbps_(mbps) {}

    void set_rate_mbps(double mbps) {
        std::lock_guard<std::mutex> lock(mu_);
        mbps_ = mbps;
    }

    double rate_mbps() const {
        std::lock_guard<std::mutex> lock(mu_);
        return mbps_;
    }

    void acquire(size_t bytes) {
        using namespace std::chrono;
        steady_clock::time_point until;
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (mbps_ <= 0 || bytes == 0) return;
            auto now = steady_clock::now();
            auto start = std::max(now, available_at_);
            auto cost = duration_cast<steady_clock::duration>(
                duration<double>(double(bytes) / (mbps_ * 1e6)));
            available_at_ = start + cost;
            until = available_at_;
        }
        std::this_thread::sleep_until(until);
    }

private:
    mutable std::mutex mu_;
    double mbps_;
    std::chrono::steady_clock::time_point available_at_{};
};

}  // namespace faasproc
