// Fixed-capacity bit set over input indices.
//
// Consistent-input sets are the hot data structure of the solver: every
// memo key and every restriction is one of these. Storage is inline (no heap)
// and only the words covering the universe are touched.

#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kchange {

inline constexpr int kMaxInputs = 1024;

class InputSet {
public:
        static constexpr int kWords = kMaxInputs / 64;

        InputSet() = default;

        explicit InputSet(int universe) : universe_(universe)
        {
                assert(universe >= 0 && universe <= kMaxInputs);
        }

        static InputSet
        full(int universe)
        {
                InputSet s(universe);
                for (int w = 0; w < s.used_words(); ++w)
                        s.words_[w] = ~std::uint64_t{0};
                s.trim();
                return s;
        }

        static InputSet
        of(int universe, std::initializer_list<int> members)
        {
                InputSet s(universe);
                for (int x : members)
                        s.insert(x);
                return s;
        }

        int universe() const { return universe_; }

        bool
        contains(int x) const
        {
                assert(x >= 0 && x < universe_);
                return (words_[x >> 6] >> (x & 63)) & 1u;
        }

        void
        insert(int x)
        {
                assert(x >= 0 && x < universe_);
                words_[x >> 6] |= std::uint64_t{1} << (x & 63);
        }

        void
        erase(int x)
        {
                assert(x >= 0 && x < universe_);
                words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
        }

        int
        size() const
        {
                int n = 0;
                for (int w = 0; w < used_words(); ++w)
                        n += std::popcount(words_[w]);
                return n;
        }

        bool
        empty() const
        {
                for (int w = 0; w < used_words(); ++w)
                        if (words_[w])
                                return false;
                return true;
        }

        // Lowest member, or -1.
        int
        first() const
        {
                for (int w = 0; w < used_words(); ++w)
                        if (words_[w])
                                return w * 64 + std::countr_zero(words_[w]);
                return -1;
        }

        // Lowest member strictly above x, or -1.
        int
        next(int x) const
        {
                ++x;
                if (x >= universe_)
                        return -1;
                int w = x >> 6;
                std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (x & 63));
                while (true) {
                        if (bits)
                                return w * 64 + std::countr_zero(bits);
                        if (++w >= used_words())
                                return -1;
                        bits = words_[w];
                }
        }

        // Number of members below x; x itself need not be a member.
        int
        rank(int x) const
        {
                int r = 0;
                int w = x >> 6;
                for (int i = 0; i < w; ++i)
                        r += std::popcount(words_[i]);
                if (x & 63)
                        r += std::popcount(words_[w] & ((std::uint64_t{1} << (x & 63)) - 1));
                return r;
        }

        bool
        is_subset_of(const InputSet &other) const
        {
                for (int w = 0; w < used_words(); ++w)
                        if (words_[w] & ~other.words_[w])
                                return false;
                return true;
        }

        InputSet &
        operator&=(const InputSet &o)
        {
                for (int w = 0; w < used_words(); ++w)
                        words_[w] &= o.words_[w];
                return *this;
        }

        InputSet &
        operator|=(const InputSet &o)
        {
                for (int w = 0; w < used_words(); ++w)
                        words_[w] |= o.words_[w];
                return *this;
        }

        // Set difference.
        InputSet &
        operator-=(const InputSet &o)
        {
                for (int w = 0; w < used_words(); ++w)
                        words_[w] &= ~o.words_[w];
                return *this;
        }

        friend InputSet operator&(InputSet a, const InputSet &b) { return a &= b; }
        friend InputSet operator|(InputSet a, const InputSet &b) { return a |= b; }
        friend InputSet operator-(InputSet a, const InputSet &b) { return a -= b; }

        friend bool
        operator==(const InputSet &a, const InputSet &b)
        {
                if (a.universe_ != b.universe_)
                        return false;
                for (int w = 0; w < a.used_words(); ++w)
                        if (a.words_[w] != b.words_[w])
                                return false;
                return true;
        }

        std::vector<int>
        members() const
        {
                std::vector<int> out;
                out.reserve(size());
                for (int x = first(); x >= 0; x = next(x))
                        out.push_back(x);
                return out;
        }

        template <typename F>
        void
        for_each(F &&f) const
        {
                for (int w = 0; w < used_words(); ++w) {
                        std::uint64_t bits = words_[w];
                        while (bits) {
                                f(w * 64 + std::countr_zero(bits));
                                bits &= bits - 1;
                        }
                }
        }

        std::size_t
        hash() const
        {
                std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(universe_);
                for (int w = 0; w < used_words(); ++w) {
                        h ^= words_[w] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
                        h *= 0xff51afd7ed558ccdull;
                }
                return static_cast<std::size_t>(h ^ (h >> 33));
        }

        // Lowercase hex, most significant word first; stable across runs.
        std::string
        to_hex() const
        {
                static constexpr char digits[] = "0123456789abcdef";
                std::string out;
                for (int w = used_words() - 1; w >= 0; --w)
                        for (int s = 60; s >= 0; s -= 4)
                                out.push_back(digits[(words_[w] >> s) & 0xf]);
                return out;
        }

private:
        int used_words() const { return (universe_ + 63) / 64; }

        void
        trim()
        {
                if (universe_ & 63)
                        words_[used_words() - 1] &= (std::uint64_t{1} << (universe_ & 63)) - 1;
        }

        std::array<std::uint64_t, kWords> words_{};
        int universe_ = 0;
};

struct InputSetHash {
        std::size_t operator()(const InputSet &s) const { return s.hash(); }
};

} // namespace kchange
