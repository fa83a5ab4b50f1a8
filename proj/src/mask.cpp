#include "fix/mask.hpp"

#include <algorithm>

namespace fix {

FeatureMask FeatureMask::ones(std::size_t d) {
    FeatureMask m(d);
    if (d == 0) return m;
    std::fill(m.words_.begin(), m.words_.end(), ~std::uint64_t{0});
    const std::size_t tail = d & 63;
    if (tail != 0) m.words_.back() = (std::uint64_t{1} << tail) - 1;
    return m;
}

FeatureMask FeatureMask::from_indices(std::size_t d, std::initializer_list<std::size_t> idx) {
    FeatureMask m(d);
    for (std::size_t i : idx) m.set(i);
    return m;
}

FeatureMask FeatureMask::from_indices(std::size_t d, const std::vector<std::size_t>& idx) {
    FeatureMask m(d);
    for (std::size_t i : idx) m.set(i);
    return m;
}

FeatureMask FeatureMask::from_bits(std::string_view bits) {
    FeatureMask m(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            m.set(i);
        else if (bits[i] != '0')
            throw ArgumentError("mask bit string may only contain 0 and 1");
    }
    return m;
}

std::vector<std::size_t> FeatureMask::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each_set([&](std::size_t i) { out.push_back(i); });
    return out;
}

namespace {

void check_same_length(const FeatureMask& a, const FeatureMask& b) {
    if (a.size() != b.size())
        throw ArgumentError("mask length mismatch: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
}

} // namespace

std::size_t intersection_count(const FeatureMask& a, const FeatureMask& b) {
    check_same_length(a, b);
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
        n += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    return n;
}

std::size_t union_count(const FeatureMask& a, const FeatureMask& b) {
    check_same_length(a, b);
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
        n += static_cast<std::size_t>(std::popcount(a.words_[i] | b.words_[i]));
    return n;
}

FeatureMask mask_and(const FeatureMask& a, const FeatureMask& b) {
    check_same_length(a, b);
    FeatureMask out(a.size());
    for (std::size_t i = 0; i < a.words_.size(); ++i) out.words_[i] = a.words_[i] & b.words_[i];
    return out;
}

FeatureMask mask_or(const FeatureMask& a, const FeatureMask& b) {
    check_same_length(a, b);
    FeatureMask out(a.size());
    for (std::size_t i = 0; i < a.words_.size(); ++i) out.words_[i] = a.words_[i] | b.words_[i];
    return out;
}

bool GroupSet::is_partition() const {
    FeatureMask seen(d_);
    for (const FeatureMask& g : groups_) {
        if (intersection_count(seen, g) != 0) return false;
        seen = mask_or(seen, g);
    }
    return seen.count() == d_;
}

} // namespace fix
