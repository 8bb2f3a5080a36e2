#pragma once

// Sequential in-memory oracle for store semantics. Written independently of
// the engine (plain vectors, explicit type tags, its own expiry bookkeeping)
// so randomized histories can be replayed against it and compared result by
// result.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "faasproc/common/bytes.hpp"
#include "faasproc/common/error.hpp"

namespace faasproc::testsupport {

struct ModelResult {
    ErrCode code = ErrCode::Ok;
    int64_t integer = 0;
    bool flag = false;
    bool present = false;
    Bytes value;
    std::vector<Bytes> values;
    std::vector<std::pair<std::string, Bytes>> pairs;

    static ModelResult err(ErrCode c) {
        ModelResult r;
        r.code = c;
        return r;
    }
};

class SeqModel {
public:
    int64_t now_ms = 0;

    ModelResult push_tail(const std::string& key, const Bytes& v) {
        Slot* s = live(key);
        if (s && s->type != Type::List) return ModelResult::err(ErrCode::WrongType);
        if (!s) {
            s = &slots_[key];
            s->type = Type::List;
        }
        s->list.push_back(v);
        refresh(*s);
        ModelResult r;
        r.integer = int64_t(s->list.size());
        return r;
    }

    ModelResult pop_head(const std::string& key) {  // non-blocking form
        Slot* s = live(key);
        if (!s) return ModelResult::err(ErrCode::Timeout);
        if (s->type != Type::List) return ModelResult::err(ErrCode::WrongType);
        ModelResult r;
        r.value = s->list.front();
        s->list.erase(s->list.begin());
        if (s->list.empty()) slots_.erase(key);
        else refresh(*s);
        return r;
    }

    ModelResult list_len(const std::string& key) {
        Slot* s = live(key);
        ModelResult r;
        if (!s) return r;
        if (s->type != Type::List) return ModelResult::err(ErrCode::WrongType);
        refresh(*s);
        r.integer = int64_t(s->list.size());
        return r;
    }

    ModelResult list_index_get(const std::string& key, int64_t i) {
        Slot* s = live(key);
        if (!s) return ModelResult::err(ErrCode::IndexOutOfRange);
        if (s->type != Type::List) return ModelResult::err(ErrCode::WrongType);
        int64_t n = int64_t(s->list.size());
        if (i < 0) i += n;
        if (i < 0 || i >= n) return ModelResult::err(ErrCode::IndexOutOfRange);
        refresh(*s);
        ModelResult r;
        r.value = s->list[size_t(i)];
        return r;
    }

    ModelResult list_index_set(const std::string& key, int64_t i, const Bytes& v) {
        Slot* s = live(key);
        if (!s) return ModelResult::err(ErrCode::IndexOutOfRange);
        if (s->type != Type::List) return ModelResult::err(ErrCode::WrongType);
        int64_t n = int64_t(s->list.size());
        if (i < 0) i += n;
        if (i < 0 || i >= n) return ModelResult::err(ErrCode::IndexOutOfRange);
        s->list[size_t(i)] = v;
        refresh(*s);
        return {};
    }

    ModelResult list_range(const std::string& key, int64_t a, int64_t b) {
        Slot* s = live(key);
        ModelResult r;
        if (!s) return r;
        if (s->type != Type::List) return ModelResult::err(ErrCode::WrongType);
        refresh(*s);
        int64_t n = int64_t(s->list.size());
        if (a < 0) a += n;
        if (b < 0) b += n;
        if (a < 0) a = 0;
        if (b >= n) b = n - 1;
        for (int64_t i = a; i <= b && i < n; ++i)
            if (i >= 0) r.values.push_back(s->list[size_t(i)]);
        return r;
    }

    ModelResult hash_set(const std::string& key, const std::string& f, const Bytes& v) {
        Slot* s = live(key);
        if (s && s->type != Type::Hash) return ModelResult::err(ErrCode::WrongType);
        if (!s) {
            s = &slots_[key];
            s->type = Type::Hash;
        }
        ModelResult r;
        r.flag = s->hash.find(f) == s->hash.end();
        s->hash[f] = v;
        refresh(*s);
        return r;
    }

    ModelResult hash_get(const std::string& key, const std::string& f) {
        Slot* s = live(key);
        ModelResult r;
        if (!s) return r;
        if (s->type != Type::Hash) return ModelResult::err(ErrCode::WrongType);
        refresh(*s);
        auto it = s->hash.find(f);
        if (it != s->hash.end()) {
            r.present = true;
            r.value = it->second;
        }
        return r;
    }

    ModelResult hash_del(const std::string& key, const std::string& f) {
        Slot* s = live(key);
        ModelResult r;
        if (!s) return r;
        if (s->type != Type::Hash) return ModelResult::err(ErrCode::WrongType);
        r.flag = s->hash.erase(f) > 0;
        if (s->hash.empty()) slots_.erase(key);
        else refresh(*s);
        return r;
    }

    ModelResult hash_get_all(const std::string& key) {
        Slot* s = live(key);
        ModelResult r;
        if (!s) return r;
        if (s->type != Type::Hash) return ModelResult::err(ErrCode::WrongType);
        refresh(*s);
        for (auto& [f, v] : s->hash) r.pairs.emplace_back(f, v);
        return r;
    }

    ModelResult counter_add(const std::string& key, int64_t delta) {
        Slot* s = live(key);
        if (s && s->type != Type::Counter) return ModelResult::err(ErrCode::WrongType);
        if (!s) {
            s = &slots_[key];
            s->type = Type::Counter;
        }
        s->counter += delta;
        refresh(*s);
        ModelResult r;
        r.integer = s->counter;
        return r;
    }

    ModelResult key_delete(const std::string& key) {
        ModelResult r;
        r.flag = live(key) != nullptr;
        slots_.erase(key);
        return r;
    }

    ModelResult key_expire(const std::string& key, int64_t ttl) {
        Slot* s = live(key);
        if (s) {
            s->ttl = ttl < 0 ? 0 : ttl;
            s->deadline = now_ms + s->ttl;
        }
        return {};
    }

    ModelResult key_exists(const std::string& key) {
        ModelResult r;
        r.flag = live(key) != nullptr;
        return r;
    }

private:
    enum class Type { List, Hash, Counter };

    struct Slot {
        Type type = Type::List;
        std::vector<Bytes> list;
        std::map<std::string, Bytes> hash;
        int64_t counter = 0;
        int64_t ttl = -1;
        int64_t deadline = -1;
    };

    Slot* live(const std::string& key) {
        auto it = slots_.find(key);
        if (it == slots_.end()) return nullptr;
        if (it->second.deadline >= 0 && now_ms >= it->second.deadline) {
            slots_.erase(it);
            return nullptr;
        }
        return &it->second;
    }

    void refresh(Slot& s) {
        if (s.ttl >= 0) s.deadline = now_ms + s.ttl;
    }

    std::map<std::string, Slot> slots_;
};

}  // namespace faasproc::testsupport
