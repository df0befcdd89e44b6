#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace taskvec {

// FNV-1a, 64 bit. Stable across platforms and runs, which is all we need for
// content ids and fixture keys; collision odds at corpus scale are negligible.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string to_hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

inline std::string content_hash(std::string_view text) {
    return to_hex16(fnv1a64(text));
}

}  // namespace taskvec
