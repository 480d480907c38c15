// linalg.hpp — Kronecker assembly, slot embedding, expectations, partial
// transpose, Schmidt coefficients

#pragma once

#include <telres/state.hpp>
#include <telres/types.hpp>

#include <vector>

namespace telres {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product in list order; dimensions multiply.
ComplexMatrix tensor_product(const std::vector<ComplexMatrix>& ops);

// Relabels tensor slots: dest[j] is the new position of source slot j.
// Works on dim-D vectors' index space lifted to matrices (rows and columns
// are permuted identically).
ComplexMatrix permute_slots(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& dest);

// Full-space operator acting as `op` on the listed slots (digit j of op's
// index space lands on slot positions[j]) and as identity elsewhere.
ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& positions,
                             const SubsystemLayout& layout);

// Tr(op * rho) for Hermitian op; the imaginary residue is checked against
// 1e-9 and discarded.
double expectation(const DensityMatrix& rho, const ComplexMatrix& op);

enum class Side { A, B };

// Block transpose on the chosen side of the A|B cut. Output is Hermitian
// whenever the input is, but generally not positive.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Side side);

// True iff the partial transpose has minimum eigenvalue >= -1e-9.
bool is_ppt(const DensityMatrix& rho);

// Singular values of the amplitude matrix M where |phi> = sum_ij M_ij |ij>,
// descending. Squares sum to 1 for a unit vector.
RealVector schmidt_coefficients(const PureState& phi);

// max_ij |m_ij - m_ij^dagger|
double hermiticity_residual(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);

double min_eigenvalue_hermitian(const ComplexMatrix& m);

}  // namespace telres
