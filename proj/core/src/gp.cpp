#include "dipgp/gp.hpp"

#include <cmath>
#include <string>

#include "dipgp/errors.hpp"
#include "dipgp/spectral.hpp"

namespace dipgp {

GPSolver::GPSolver(const Grid3& grid, const PotentialSpec& pot, GPEquation eq, GPOptions opt)
    : grid_(grid), pot_(pot), eq_(eq), opt_(opt) {
    pot_.validate();
    mult_ = (eq == GPEquation::scaled) ? pot_.scaled_multiplier(grid_)
                                       : pot_.limiting_multiplier(grid_);
}

GPState GPSolver::initial_state(const InitialData& init) const {
    GPState st{make_initial(grid_, init), 0.0,
               (eq_ == GPEquation::scaled) ? GPEquation::scaled : GPEquation::limiting, 0};
    return st;
}

void GPSolver::density_potential(const Field& psi, Field& V, double& mu) const {
    Field rho(grid_, Space::position);
    for (std::size_t i = 0; i < psi.size(); ++i) rho[i] = std::norm(psi[i]);
    Field rhohat = fft_forward(rho);
    if (opt_.dealias) dealias_23(rhohat);
    const double L3 = grid_.L() * grid_.L() * grid_.L();
    double acc = 0.0;
    for (std::size_t i = 0; i < rhohat.size(); ++i) {
        acc += (std::conj(rhohat[i]) * mult_[i] * rhohat[i]).real();
        rhohat[i] *= mult_[i];
    }
    mu = opt_.include_mu ? 0.5 * acc / L3 : 0.0;
    V = fft_inverse(rhohat);
    // w and rho are real, so the convolution is real up to roundoff
    for (auto& v : V.values()) v = v.real();
}

void GPSolver::step(GPState& state, double dt) const {
    if (!(dt > 0.0)) throw UsageError("GPSolver::step: dt must be positive");
    Field& psi = state.psi;
    Field V(grid_, Space::position);
    double mu = 0.0;

    density_potential(psi, V, mu);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double phase = -(V[i].real() - mu) * dt / 2.0;
        psi[i] *= cplx{std::cos(phase), std::sin(phase)};
    }

    Field hat = fft_forward(psi);
    const int n = grid_.n();
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i) {
                const double phase = -grid_.k2(ix, iy, iz) * dt;
                hat[i] *= cplx{std::cos(phase), std::sin(phase)};
            }
    psi = fft_inverse(hat);

    density_potential(psi, V, mu);
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double phase = -(V[j].real() - mu) * dt / 2.0;
        psi[j] *= cplx{std::cos(phase), std::sin(phase)};
    }

    state.t += dt;
    state.steps += 1;
    if (!all_finite(psi))
        throw DivergenceError("gp: non-finite field after step " + std::to_string(state.steps) +
                              " at t = " + std::to_string(state.t));
}

double GPSolver::chemical_potential(const GPState& state) const {
    Field rho(grid_, Space::position);
    for (std::size_t i = 0; i < state.psi.size(); ++i) rho[i] = std::norm(state.psi[i]);
    const Field rhohat = fft_forward(rho);
    const double L3 = grid_.L() * grid_.L() * grid_.L();
    double acc = 0.0;
    for (std::size_t i = 0; i < rhohat.size(); ++i)
        acc += (std::conj(rhohat[i]) * mult_[i] * rhohat[i]).real();
    return 0.5 * acc / L3;
}

double GPSolver::energy(const GPState& state) const {
    const Field hat = fft_forward(state.psi);
    const double L3 = grid_.L() * grid_.L() * grid_.L();
    const int n = grid_.n();
    double kin = 0.0;
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i) kin += grid_.k2(ix, iy, iz) * std::norm(hat[i]);
    kin /= L3;

    Field rho(grid_, Space::position);
    for (std::size_t j = 0; j < state.psi.size(); ++j) rho[j] = std::norm(state.psi[j]);
    const Field rhohat = fft_forward(rho);
    double inter = 0.0;
    // Re(mult) is the transform of the symmetrized (even) interaction; for an
    // even w it is the full multiplier.
    for (std::size_t j = 0; j < rhohat.size(); ++j)
        inter += mult_[j].real() * std::norm(rhohat[j]);
    inter *= 0.5 / L3;
    return kin + inter;
}

double GPSolver::sobolev_norm(const GPState& state, int order) const {
    if (order < 1 || order > 4) throw UsageError("sobolev_norm: order must be in {1,2,3,4}");
    const Field hat = fft_forward(state.psi);
    const double L3 = grid_.L() * grid_.L() * grid_.L();
    const int n = grid_.n();
    double acc = 0.0;
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix, ++i) {
                const double w = 1.0 + grid_.k2(ix, iy, iz);
                double f = w;
                for (int p = 1; p < order; ++p) f *= w;
                acc += f * std::norm(hat[i]);
            }
    return std::sqrt(acc / L3);
}

GPDiag gp_diagnostics(const GPSolver& solver, const GPState& state) {
    GPDiag d{};
    d.t = state.t;
    d.mass = l2_norm(state.psi);
    d.energy = solver.energy(state);
    d.h1 = solver.sobolev_norm(state, 1);
    d.h2 = solver.sobolev_norm(state, 2);
    d.h3 = solver.sobolev_norm(state, 3);
    d.h4 = solver.sobolev_norm(state, 4);
    d.mu = solver.chemical_potential(state);
    return d;
}

} // namespace dipgp
