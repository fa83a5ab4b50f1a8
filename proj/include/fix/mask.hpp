#pragma once
// Binary feature masks and ordered collections of them.
//
// A FeatureMask marks a subset of the d low-level features of one sample
// (pixels, timestamps, words). A GroupSet is an ordered list of masks over
// the same d; order and duplicates are preserved because downstream
// aggregation counts covering groups with multiplicity.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "fix/errors.hpp"

namespace fix {

class FeatureMask {
public:
    FeatureMask() = default;
    explicit FeatureMask(std::size_t d) : d_(d), words_((d + 63) / 64, 0) {}

    static FeatureMask ones(std::size_t d);
    static FeatureMask from_indices(std::size_t d, std::initializer_list<std::size_t> idx);
    static FeatureMask from_indices(std::size_t d, const std::vector<std::size_t>& idx);
    // Convenience for tests and file formats: "1100" -> bits 0,1 set, d=4.
    static FeatureMask from_bits(std::string_view bits);

    std::size_t size() const { return d_; }

    bool test(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value = true) {
        check_index(i);
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= bit;
        else
            words_[i >> 6] &= ~bit;
    }

    // Number of one-bits, |g|.
    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Calls fn(i) for every set bit, ascending.
    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                fn(wi * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const;

    bool operator==(const FeatureMask& other) const = default;

    const std::vector<std::uint64_t>& words() const { return words_; }

    friend std::size_t intersection_count(const FeatureMask& a, const FeatureMask& b);
    friend std::size_t union_count(const FeatureMask& a, const FeatureMask& b);
    friend FeatureMask mask_and(const FeatureMask& a, const FeatureMask& b);
    friend FeatureMask mask_or(const FeatureMask& a, const FeatureMask& b);

private:
    void check_index(std::size_t i) const {
        if (i >= d_) throw ArgumentError("feature index " + std::to_string(i) +
                                         " out of range for d=" + std::to_string(d_));
    }

    std::size_t d_ = 0;
    std::vector<std::uint64_t> words_;
};

std::size_t intersection_count(const FeatureMask& a, const FeatureMask& b);
std::size_t union_count(const FeatureMask& a, const FeatureMask& b);
FeatureMask mask_and(const FeatureMask& a, const FeatureMask& b);
FeatureMask mask_or(const FeatureMask& a, const FeatureMask& b);

// Ordered list of masks sharing one feature count. May be empty; may hold
// duplicates (a duplicate counts twice in the per-feature averages).
class GroupSet {
public:
    GroupSet() = default;
    explicit GroupSet(std::size_t d, std::string provenance = {})
        : d_(d), provenance_(std::move(provenance)) {}

    void add(FeatureMask mask) {
        if (empty() && d_ == 0) d_ = mask.size();
        if (mask.size() != d_)
            throw ArgumentError("mask length " + std::to_string(mask.size()) +
                                " does not match group set d=" + std::to_string(d_));
        groups_.push_back(std::move(mask));
    }

    std::size_t dim() const { return d_; }
    std::size_t size() const { return groups_.size(); }
    bool empty() const { return groups_.empty(); }

    const FeatureMask& operator[](std::size_t k) const { return groups_[k]; }
    auto begin() const { return groups_.begin(); }
    auto end() const { return groups_.end(); }

    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    // True when the masks are pairwise disjoint and their union is all-ones.
    bool is_partition() const;

private:
    std::size_t d_ = 0;
    std::string provenance_;
    std::vector<FeatureMask> groups_;
};

} // namespace fix
