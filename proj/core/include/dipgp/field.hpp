#pragma once
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "dipgp/grid.hpp"

namespace dipgp {

using cplx = std::complex<double>;

/// Allocator with FFTW-compatible (32-byte) alignment so transform plans can
/// be shared across field buffers.
template <typename T>
struct AlignedAllocator {
    using value_type = T;
    AlignedAllocator() = default;
    template <class U>
    constexpr AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
    T* allocate(std::size_t n) {
        void* p = std::aligned_alloc(32, ((n * sizeof(T) + 31) / 32) * 32);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { std::free(p); }
    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using cvec = std::vector<cplx, AlignedAllocator<cplx>>;

enum class Space { position, frequency };

/// Complex scalar field on a Grid3, tagged with the space it currently lives
/// in. Values are stored row-major with x fastest.
class Field {
public:
    Field(Grid3 grid, Space space) : grid_(grid), space_(space), v_(grid.size(), cplx{0.0, 0.0}) {}

    const Grid3& grid() const { return grid_; }
    Space space() const { return space_; }
    void set_space(Space s) { space_ = s; }

    cplx& operator[](std::size_t i) { return v_[i]; }
    const cplx& operator[](std::size_t i) const { return v_[i]; }
    cplx& at(int ix, int iy, int iz) { return v_[grid_.idx(ix, iy, iz)]; }
    const cplx& at(int ix, int iy, int iz) const { return v_[grid_.idx(ix, iy, iz)]; }

    cvec& values() { return v_; }
    const cvec& values() const { return v_; }
    std::size_t size() const { return v_.size(); }

private:
    Grid3 grid_;
    Space space_;
    cvec v_;
};

/// Real Fourier-multiplier table on a grid (kernel transforms are real since
/// Omega is real and even). Entry at k = 0 is pinned to 0 for kernel-derived
/// tables.
class MultiplierTable {
public:
    MultiplierTable(Grid3 grid) : grid_(grid), v_(grid.size(), 0.0) {}

    const Grid3& grid() const { return grid_; }
    double& operator[](std::size_t i) { return v_[i]; }
    const double& operator[](std::size_t i) const { return v_[i]; }
    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }
    std::size_t size() const { return v_.size(); }

    double max_abs() const;

private:
    Grid3 grid_;
    std::vector<double> v_;
};

// Flat binary serialization shared by Field (complex payload) and
// MultiplierTable (real payload):
//   bytes 0..7   magic "DIPGPBIN"
//   bytes 8..11  version (u32 LE) = 1
//   bytes 12..15 payload kind (u32 LE): 0 complex field, 1 real table
//   n (u64 LE), L (f64 LE)
//   payload f64 LE, row-major x fastest; complex interleaved re, im
void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);
void write_multiplier(const std::string& path, const MultiplierTable& m);
MultiplierTable read_multiplier(const std::string& path);

} // namespace dipgp
