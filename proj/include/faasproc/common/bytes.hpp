#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <random>
#include <string>
#include <string_view>

namespace faasproc {

// Byte strings everywhere: values, payloads, serialized records. std::string
// is used as the container so embedded NULs are fine.
using Bytes = std::string;

using Uuid = std::array<uint8_t, 16>;

inline std::string to_hex(const uint8_t* data, size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(n * 2);
    for (size_t i = 0; i < n; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xF]);
    }
    return out;
}

inline std::string to_hex(const Uuid& u) { return to_hex(u.data(), u.size()); }

inline std::string to_hex(std::string_view bytes) {
    return to_hex(reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size());
}

// Process-wide RNG for uuids and ids. Seeded once from the system source;
// guarded because handles are created from many threads.
inline uint64_t random_u64() {
    static std::mutex mu;
    static std::mt19937_64 rng = [] {
        std::random_device rd;
        return std::mt19937_64((uint64_t(rd()) << 32) ^ rd());
    }();
    std::lock_guard<std::mutex> lock(mu);
    return rng();
}

inline Uuid new_uuid() {
    Uuid u;
    uint64_t a = random_u64();
    uint64_t b = random_u64();
    for (int i = 0; i < 8; ++i) {
        u[i] = uint8_t(a >> (8 * i));
        u[8 + i] = uint8_t(b >> (8 * i));
    }
    return u;
}

}  // namespace faasproc
