#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <string_view>

#include "faasproc/common/bytes.hpp"
#include "faasproc/common/error.hpp"

namespace faasproc::wire {

// Append-only encoder for the framed formats used across the project:
// integers are big-endian, variable-size fields are 4-byte-length prefixed.
class Writer {
public:
    void u8(uint8_t v) { out_.push_back(char(v)); }

    void u32(uint32_t v) {
        for (int i = 3; i >= 0; --i) out_.push_back(char(uint8_t(v >> (8 * i))));
    }

    void u64(uint64_t v) {
        for (int i = 7; i >= 0; --i) out_.push_back(char(uint8_t(v >> (8 * i))));
    }

    void i64(int64_t v) { u64(uint64_t(v)); }

    void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }

    void field(std::string_view bytes) {
        u32(uint32_t(bytes.size()));
        out_.append(bytes.data(), bytes.size());
    }

    void i64_field(int64_t v) {
        u32(8);
        i64(v);
    }

    void raw(std::string_view bytes) { out_.append(bytes.data(), bytes.size()); }

    Bytes take() { return std::move(out_); }
    const Bytes& data() const { return out_; }
    size_t size() const { return out_.size(); }

private:
    Bytes out_;
};

// Bounds-checked decoder. Throws MalformedFrame on any short read or
// oversized field, which the protocol layer reports as a malformed frame.
class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    uint8_t u8() {
        need(1);
        return uint8_t(data_[pos_++]);
    }

    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | uint8_t(data_[pos_ + i]);
        pos_ += 4;
        return v;
    }

    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | uint8_t(data_[pos_ + i]);
        pos_ += 8;
        return v;
    }

    int64_t i64() { return int64_t(u64()); }

    double f64() { return std::bit_cast<double>(u64()); }

    std::string_view field() {
        uint32_t n = u32();
        need(n);
        std::string_view v = data_.substr(pos_, n);
        pos_ += n;
        return v;
    }

    int64_t i64_field() {
        uint32_t n = u32();
        if (n != 8) throw MalformedFrame("integer field must be 8 bytes");
        return i64();
    }

    bool done() const { return pos_ == data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }

    void expect_done() const {
        if (!done()) throw MalformedFrame("trailing bytes in frame");
    }

private:
    void need(size_t n) const {
        if (data_.size() - pos_ < n) throw MalformedFrame("truncated frame");
    }

    std::string_view data_;
    size_t pos_ = 0;
};

}  // namespace faasproc::wire
