#include "dipgp/fock/space.hpp"

namespace dipgp::fock {

namespace {

void enumerate(int slots, int remaining, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (slots == 1) {
        cur.push_back(remaining);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        cur.push_back(k);
        enumerate(slots - 1, remaining - k, cur, out);
        cur.pop_back();
    }
}

} // namespace

FockSpace::FockSpace(int modes, int cap) : m_(modes), cap_(cap) {
    if (modes < 1 || modes > 15) throw UsageError("FockSpace: modes must be in [1, 15]");
    if (cap < 0 || cap > 15) throw UsageError("FockSpace: cap must be in [0, 15]");
    sector_begin_.push_back(0);
    std::vector<int> cur;
    for (int total = 0; total <= cap; ++total) {
        enumerate(m_, total, cur, basis_);
        sector_begin_.push_back(basis_.size());
    }
    totals_.resize(basis_.size());
    lookup_.reserve(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        int t = 0;
        for (int n : basis_[i]) t += n;
        totals_[i] = t;
        lookup_.emplace(key(basis_[i]), i);
    }
}

std::uint64_t FockSpace::key(const std::vector<int>& occ) const {
    std::uint64_t k = 0;
    for (int n : occ) k = (k << 4) | static_cast<std::uint64_t>(n & 0xF);
    return k;
}

std::size_t FockSpace::index(const std::vector<int>& occ) const {
    if (static_cast<int>(occ.size()) != m_) throw UsageError("FockSpace::index: wrong mode count");
    const auto it = lookup_.find(key(occ));
    if (it == lookup_.end()) throw UsageError("FockSpace::index: occupation not in the space");
    return it->second;
}

} // namespace dipgp::fock
