#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace fvsmim {

/// Dense bitset over the vertex ids 0..universe-1 of a host graph.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe)
        : universe_(universe), words_((static_cast<size_t>(universe) + 63) / 64, 0) {}
    VertexSet(int universe, std::initializer_list<int> members) : VertexSet(universe) {
        for (int v : members) insert(v);
    }
    template <class Range>
    static VertexSet of(int universe, const Range& members) {
        VertexSet s(universe);
        for (int v : members) s.insert(v);
        return s;
    }
    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (int v = 0; v < universe; ++v) s.insert(v);
        return s;
    }

    int universe() const { return universe_; }

    void insert(int v) { words_[v >> 6] |= uint64_t{1} << (v & 63); }
    void erase(int v) { words_[v >> 6] &= ~(uint64_t{1} << (v & 63)); }
    bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }

    int size() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    /// Smallest member, or -1 when empty.
    int first() const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w) {
                int b = std::countr_zero(w);
                f(static_cast<int>(i * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(size());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    bool intersects(const VertexSet& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool subset_of(const VertexSet& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    VertexSet complement() const { return full(universe_) - *this; }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }
    friend bool operator<(const VertexSet& a, const VertexSet& b) {
        return a.words_ < b.words_;
    }

    size_t hash() const {
        size_t h = 0x9e3779b97f4a7c15ull;
        for (uint64_t w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
        return h;
    }

private:
    int universe_ = 0;
    std::vector<uint64_t> words_;
};

inline void hash_combine(size_t& seed, size_t h) {
    seed ^= h + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

}  // namespace fvsmim

template <>
struct std::hash<fvsmim::VertexSet> {
    size_t operator()(const fvsmim::VertexSet& s) const { return s.hash(); }
};
