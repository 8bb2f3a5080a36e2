#pragma once

#include <cstdint>
#include <string_view>

namespace faasproc {

// FNV-1a, used for payload checksums and blob etags. Not cryptographic; it
// only needs to catch corruption in benchmark integrity checks.
inline uint64_t fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ull) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace faasproc
