#include "dipgp/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace dipgp {

namespace {

// One forward/backward plan pair per grid size. Plans are created once under a
// lock (the FFTW planner is not thread-safe) and afterwards shared freely;
// fftw_execute_dft on distinct arrays is thread-safe.
struct PlanPair {
    fftw_plan fwd{};
    fftw_plan bwd{};
    ~PlanPair() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

const PlanPair& plans_for(int n) {
    static std::map<int, std::unique_ptr<PlanPair>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto pp = std::make_unique<PlanPair>();
        const std::size_t sz = static_cast<std::size_t>(n) * n * n;
        cvec a(sz), b(sz);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        pp->fwd = fftw_plan_dft_3d(n, n, n, pa, pb, FFTW_FORWARD, FFTW_MEASURE);
        pp->bwd = fftw_plan_dft_3d(n, n, n, pa, pb, FFTW_BACKWARD, FFTW_MEASURE);
        it = cache.emplace(n, std::move(pp)).first;
    }
    return *it->second;
}

void execute(fftw_plan plan, const cvec& in, cvec& out) {
    // in is not modified by a c2c out-of-place transform
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

namespace {

// The raw DFT phases are index-based while grid coordinates are centered at
// the box origin; the checkerboard sign (-1)^{ix+iy+iz} is exactly
// e^{i k . L/2} and makes the transform literally
// fhat(k) = dx^3 sum_j f(x_j) e^{-i k . x_j} with x_j = (j - n/2) dx.
void apply_center_phase(Field& f, double scale) {
    const int n = f.grid().n();
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i)
                f[i] *= ((ix + iy + iz) % 2 == 0) ? scale : -scale;
}

} // namespace

Field fft_forward(const Field& f) {
    if (f.space() != Space::position)
        throw UsageError("fft_forward: input must be in position space");
    const auto& g = f.grid();
    Field out(g, Space::frequency);
    execute(plans_for(g.n()).fwd, f.values(), out.values());
    apply_center_phase(out, g.dx() * g.dx() * g.dx());
    return out;
}

Field fft_inverse(const Field& f) {
    if (f.space() != Space::frequency)
        throw UsageError("fft_inverse: input must be in frequency space");
    const auto& g = f.grid();
    Field tmp = f;
    apply_center_phase(tmp, 1.0);
    Field out(g, Space::position);
    execute(plans_for(g.n()).bwd, tmp.values(), out.values());
    const double scale = 1.0 / (g.L() * g.L() * g.L());
    for (auto& v : out.values()) v *= scale;
    return out;
}

Field laplacian(const Field& f) {
    const auto& g = f.grid();
    Field hat = (f.space() == Space::position) ? fft_forward(f) : f;
    const int n = g.n();
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i) hat[i] *= -g.k2(ix, iy, iz);
    return (f.space() == Space::position) ? fft_inverse(hat) : hat;
}

Field convolve_multiplier(const Field& f, const MultiplierTable& m) {
    if (f.grid() != m.grid())
        throw UsageError("convolve_multiplier: field and multiplier grids differ");
    Field hat = (f.space() == Space::position) ? fft_forward(f) : f;
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= m[i];
    return (f.space() == Space::position) ? fft_inverse(hat) : hat;
}

double l2_norm(const Field& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::norm(v);
    const auto& g = f.grid();
    const double w = (f.space() == Space::position) ? g.dx() * g.dx() * g.dx()
                                                    : 1.0 / (g.L() * g.L() * g.L());
    return std::sqrt(s * w);
}

cplx inner_product(const Field& f, const Field& g) {
    if (f.grid() != g.grid() || f.space() != g.space())
        throw UsageError("inner_product: mismatched fields");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) s += std::conj(f[i]) * g[i];
    const auto& gr = f.grid();
    const double w = (f.space() == Space::position) ? gr.dx() * gr.dx() * gr.dx()
                                                    : 1.0 / (gr.L() * gr.L() * gr.L());
    return s * w;
}

void dealias_23(Field& f) {
    if (f.space() != Space::frequency) throw UsageError("dealias_23: frequency space expected");
    const auto& g = f.grid();
    const int n = g.n();
    const double kcut = (2.0 / 3.0) * std::acos(-1.0) * n / g.L();
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i) {
                if (std::abs(g.k(ix)) > kcut || std::abs(g.k(iy)) > kcut ||
                    std::abs(g.k(iz)) > kcut)
                    f[i] = 0.0;
            }
}

bool all_finite(const Field& f) {
    for (const auto& v : f.values())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

} // namespace dipgp
