#pragma once
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dipgp/errors.hpp"

namespace dipgp::fock {

/// Occupation-number basis of m bosonic modes with at most cap particles in
/// total. States are stored graded by total particle number, so every number
/// sector is a contiguous index range.
class FockSpace {
public:
    FockSpace(int modes, int cap);

    int modes() const { return m_; }
    int cap() const { return cap_; }
    std::size_t dim() const { return basis_.size(); }

    const std::vector<int>& occ(std::size_t i) const { return basis_[i]; }
    int total(std::size_t i) const { return totals_[i]; }

    /// Index of an occupation vector; throws if it is not in the space.
    std::size_t index(const std::vector<int>& occ) const;

    /// Contiguous index range [begin, end) of the k-particle sector.
    std::size_t sector_begin(int k) const { return sector_begin_[k]; }
    std::size_t sector_end(int k) const { return sector_begin_[k + 1]; }

    bool operator==(const FockSpace& o) const { return m_ == o.m_ && cap_ == o.cap_; }

private:
    std::uint64_t key(const std::vector<int>& occ) const;

    int m_, cap_;
    std::vector<std::vector<int>> basis_;
    std::vector<int> totals_;
    std::vector<std::size_t> sector_begin_;
    std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

} // namespace dipgp::fock
