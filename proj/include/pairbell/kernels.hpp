#pragma once

// Dense complex kernels used by every higher module.
//
// `kernels::` holds the OpenMP-parallel versions. `reference::` holds plain
// serial loops with the same signatures; they are kept as the test oracle for
// the parallel code and as the baseline in the benchmark target. Every
// reduction in `kernels::` sums per-row partials in row order, so results do
// not depend on the thread count or schedule.
//
// Bipartite amplitudes are stored row-major with the side-b index fastest:
// psi[x * dim_b + y].

#include <span>
#include <vector>

#include "pairbell/matrix.hpp"

namespace pairbell::kernels {

CMatrix multiply(const CMatrix& a, const CMatrix& b);
std::vector<cplx> multiply(const CMatrix& a, std::span<const cplx> v);
CMatrix kron(const CMatrix& a, const CMatrix& b);

// <v| m |v>
cplx quadratic_form(const CMatrix& m, std::span<const cplx> v);
// Tr(a b)
cplx trace_product(const CMatrix& a, const CMatrix& b);

// <psi| (a ⊗ b) |psi> without forming the Kronecker product:
// computes sum conj(Psi) .* (a Psi b^T) with Psi the dim_a x dim_b amplitude grid.
cplx local_product_expectation(const CMatrix& a, const CMatrix& b, std::span<const cplx> psi);
// Tr(rho (a ⊗ b)) without forming the Kronecker product.
cplx local_product_trace(const CMatrix& a, const CMatrix& b, const CMatrix& rho);

}  // namespace pairbell::kernels

namespace pairbell::reference {

CMatrix multiply(const CMatrix& a, const CMatrix& b);
std::vector<cplx> multiply(const CMatrix& a, std::span<const cplx> v);
CMatrix kron(const CMatrix& a, const CMatrix& b);
cplx quadratic_form(const CMatrix& m, std::span<const cplx> v);
cplx trace_product(const CMatrix& a, const CMatrix& b);
cplx local_product_expectation(const CMatrix& a, const CMatrix& b, std::span<const cplx> psi);
cplx local_product_trace(const CMatrix& a, const CMatrix& b, const CMatrix& rho);

}  // namespace pairbell::reference
