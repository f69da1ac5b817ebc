#pragma once

// Brute-force reference simulator for tests. Shares only the netlist types
// with the library: element matrices come from line Z-matrices, C-sections
// from the coupled-line four-port, and ports are driven by Thevenin sources
// in a full modified-nodal system solved by plain Gaussian elimination.

#include <complex>
#include <vector>

#include "ringdesign/types.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Matrix = std::vector<std::vector<cplx>>;

/// Solves A x = b (A square) with partial pivoting; throws on a zero pivot.
std::vector<cplx> gauss_solve(Matrix a, std::vector<cplx> b);

/// Inverse of a small dense matrix.
Matrix invert(const Matrix& a);

/// Open-circuit impedance matrix of a uniform line of impedance z and length theta.
Matrix line_z(double z, double theta);

/// Four-port Y of a symmetric coupled pair, port order (a_near, a_far, b_near, b_far).
Matrix coupled_pair_y(double z_even, double z_odd, double theta);

/// Full S matrix of the network at f, port order as in net.ports.
Matrix s_parameters(const ringdesign::Network& net, double f);

/// Chain matrix (a, b, c, d) of a two-port network with equal port impedances,
/// derived from the oracle S matrix.
struct Abcd {
    cplx a, b, c, d;
};
Abcd chain_from_s(const Matrix& s, double z_ref);

}  // namespace oracle
