#include "dipgp/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace dipgp {

double MultiplierTable::max_abs() const {
    double m = 0.0;
    for (double v : v_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

constexpr char kMagic[8] = {'D', 'I', 'P', 'G', 'P', 'B', 'I', 'N'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

void put_u32(std::ofstream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::ofstream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ofstream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

struct Header {
    std::uint32_t kind;
    std::uint64_t n;
    double L;
};

Header read_header(std::ifstream& is, const std::string& path) {
    char magic[8];
    std::uint32_t version = 0, kind = 0;
    std::uint64_t n = 0;
    double L = 0.0;
    is.read(magic, 8);
    is.read(reinterpret_cast<char*>(&version), 4);
    is.read(reinterpret_cast<char*>(&kind), 4);
    is.read(reinterpret_cast<char*>(&n), 8);
    is.read(reinterpret_cast<char*>(&L), 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw UsageError("not a dipgp binary file: " + path);
    if (version != kVersion)
        throw UsageError("unsupported file version in " + path);
    return {kind, n, L};
}

void write_header(std::ofstream& os, std::uint32_t kind, const Grid3& g) {
    os.write(kMagic, 8);
    put_u32(os, kVersion);
    put_u32(os, kind);
    put_u64(os, static_cast<std::uint64_t>(g.n()));
    put_f64(os, g.L());
}

} // namespace

void write_field(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot open for writing: " + path);
    write_header(os, 0, f.grid());
    os.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(f.size() * sizeof(cplx)));
    if (!os) throw UsageError("write failed: " + path);
}

Field read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw UsageError("cannot open: " + path);
    const Header h = read_header(is, path);
    if (h.kind != 0) throw UsageError("expected complex field payload in " + path);
    Field f(Grid3(static_cast<int>(h.n), h.L), Space::position);
    is.read(reinterpret_cast<char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(cplx)));
    if (!is) throw UsageError("truncated field file: " + path);
    return f;
}

void write_multiplier(const std::string& path, const MultiplierTable& m) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot open for writing: " + path);
    write_header(os, 1, m.grid());
    os.write(reinterpret_cast<const char*>(m.values().data()),
             static_cast<std::streamsize>(m.size() * sizeof(double)));
    if (!os) throw UsageError("write failed: " + path);
}

MultiplierTable read_multiplier(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw UsageError("cannot open: " + path);
    const Header h = read_header(is, path);
    if (h.kind != 1) throw UsageError("expected real table payload in " + path);
    MultiplierTable m(Grid3(static_cast<int>(h.n), h.L));
    is.read(reinterpret_cast<char*>(m.values().data()),
            static_cast<std::streamsize>(m.size() * sizeof(double)));
    if (!is) throw UsageError("truncated table file: " + path);
    return m;
}

} // namespace dipgp
