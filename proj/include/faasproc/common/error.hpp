#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace faasproc {

// Error codes that travel over the wire (store protocol error frames carry
// exactly one of these in the code byte).
enum class ErrCode : uint8_t {
    Ok = 0,
    WrongType = 1,
    IndexOutOfRange = 2,
    Timeout = 3,
    Malformed = 4,
    UnknownOp = 5,
};

inline const char* err_name(ErrCode c) {
    switch (c) {
        case ErrCode::Ok: return "Ok";
        case ErrCode::WrongType: return "WrongType";
        case ErrCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrCode::Timeout: return "Timeout";
        case ErrCode::Malformed: return "Malformed";
        case ErrCode::UnknownOp: return "UnknownOp";
    }
    return "Unknown";
}

struct Error {
    ErrCode code = ErrCode::Ok;
    std::string message;

    bool operator==(const Error& o) const { return code == o.code && message == o.message; }
};

// Minimal expected-like result for store commands. Errors here are data, not
// exceptions: they flow through the wire protocol unchanged.
template <class T>
class Result {
public:
    Result(T v) : v_(std::move(v)) {}
    Result(Error e) : v_(std::move(e)) {}
    Result(ErrCode c, std::string msg = {}) : v_(Error{c, std::move(msg)}) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    T& value() { return std::get<T>(v_); }
    const T& value() const { return std::get<T>(v_); }
    T& operator*() { return value(); }
    const T& operator*() const { return value(); }

    const Error& error() const { return std::get<Error>(v_); }
    ErrCode code() const { return ok() ? ErrCode::Ok : error().code; }

private:
    std::variant<T, Error> v_;
};

struct Ack {
    bool operator==(const Ack&) const { return true; }
};

// Exception hierarchy for conditions that are not command results: transport
// failures, misuse of handles, task failures.
class FaasprocError : public std::runtime_error {
public:
    explicit FaasprocError(const std::string& what) : std::runtime_error(what) {}
};

class StoreOpError : public FaasprocError {
public:
    StoreOpError(ErrCode code, const std::string& what)
        : FaasprocError(std::string(err_name(code)) + ": " + what), code_(code) {}
    ErrCode code() const { return code_; }

private:
    ErrCode code_;
};

class BindError : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class ConnectionClosed : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class TransportTimeout : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class MalformedFrame : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class DroppedResource : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class LockNotHeld : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class BrokenBarrier : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class UnknownFunction : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class PoolClosed : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class JoinTimeout : public FaasprocError {
public:
    using FaasprocError::FaasprocError;
};

class TaskFailed : public FaasprocError {
public:
    TaskFailed(size_t task_index, const std::string& message, std::string backtrace = {})
        : FaasprocError("task " + std::to_string(task_index) + " failed: " + message),
          task_index_(task_index),
          message_(message),
          backtrace_(std::move(backtrace)) {}
    size_t task_index() const { return task_index_; }
    const std::string& message() const { return message_; }
    const std::string& backtrace() const { return backtrace_; }

private:
    size_t task_index_;
    std::string message_;
    std::string backtrace_;
};

}  // namespace faasproc
