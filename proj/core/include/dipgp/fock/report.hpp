#pragma once
#include <vector>

#include "dipgp/fock/evolve.hpp"

namespace dipgp::fock {

/// Comparison of the exact many-body evolution of a condensate against the
/// Bogoliubov approximation, for a list of particle numbers at desk scale.
struct Theorem1Params {
    int m = 4;
    double ell = 6.283185307179586;
    double coupling = 0.2;       // overall interaction strength g
    double sigma_w = 0.5;        // gaussian width of what
    double beta = 0.0;           // N-scaling exponent of the interaction
    std::vector<int> N_list = {3, 4, 5, 6};
    double t_final = 0.5;
    double dt = 2e-3;
    int hartree_substeps = 4;
    DVec u0; // empty: default smooth superposition of the lowest modes
};

struct Theorem1Row {
    int N;
    double t;
    double norm_error;    // || Psi_N(t) - U_N(t)^* Phi(t) ||
    double trace_error;   // || Gamma^(1) - |u_N(t)><u_N(t)| ||_S1
    double norm_drift;    // | ||Phi(t)|| - 1 |
    double a_u_residual;  // || a(u_N(t)) Phi(t) ||
};

ModeBasis theorem1_basis(const Theorem1Params& p, long N);
DVec theorem1_initial_mode(const Theorem1Params& p);

std::vector<Theorem1Row> theorem1_report(const Theorem1Params& p);

} // namespace dipgp::fock
