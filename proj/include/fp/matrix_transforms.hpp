#pragma once

#include <optional>
#include <vector>

#include "fp/types.hpp"

namespace fp {

// Hermitian PSD square root via eigen-decomposition. Eigenvalues in
// [-1e-10, 0) clamp to zero; anything lower throws DomainError.
CMat hermitian_sqrt(const CMat& A);
Mat symmetric_sqrt(const Mat& A);

double min_eigenvalue(const CMat& B);

// Frobenius-norm bound lambda >= lambda_max(D) for Hermitian PSD D.
double lambda_bound(const CMat& D);

// ---------------------------------------------------------------------------
// Matrix quadratic transform on frozen per-term factors
// ---------------------------------------------------------------------------

// Y_i = B_i^{-1} sqrtA_i. Throws SingularDenominator when the smallest
// eigenvalue of a B_i is below 1e-10.
std::vector<CMat> matrix_qt_aux_update(const std::vector<CMat>& sqrtA,
                                       const std::vector<CMat>& B);

// sum_i w_i Re Tr( sqrtA_i^H Y_i + Y_i^H sqrtA_i - Y_i^H B_i Y_i ).
double matrix_qt_surrogate(const std::vector<CMat>& sqrtA,
                           const std::vector<CMat>& B,
                           const std::vector<CMat>& Y, const Vec& weights);

// sum_i w_i Tr( sqrtA_i^H B_i^{-1} sqrtA_i ).
double matrix_ratio_objective(const std::vector<CMat>& sqrtA,
                              const std::vector<CMat>& B, const Vec& weights);

// ---------------------------------------------------------------------------
// Structured sum-of-matrix-ratios over complex blocks
// ---------------------------------------------------------------------------

// maximize sum_i w_i (A_i x_i)^H E_i(x)^{-1} (A_i x_i)
//   with E_i(x) = noise_i + sum_j B_ij x_j x_j^H B_ij^H,
// one block x_i per term, block constraints unconstrained or euclidean balls.
struct MatrixRatioProblem {
    std::vector<CMat> A;               // A[i]: l_i x m_i
    std::vector<std::vector<CMat>> B;  // B[i][j]: l_i x m_j
    std::vector<CMat> noise;           // noise[i]: l_i x l_i HPSD; empty means zero
    Vec weights;
    std::vector<ConstraintSet> block_constraints;

    int terms() const { return static_cast<int>(A.size()); }
    int block_dim(int i) const { return static_cast<int>(A[i].cols()); }
    void check_well_formed() const;
};

using BlockVec = std::vector<CVec>;

// Auxiliary state of the structured solvers.
struct MatrixAux {
    std::vector<CVec> Y;   // one per term
    BlockVec z;            // anchor copy of the blocks
    Vec lambda;            // per-block bound on lambda_max(D_i)
    BlockVec x_prev, x_prev2;
};

CMat structured_denominator(const MatrixRatioProblem& p, int i, const BlockVec& x);
double structured_objective(const MatrixRatioProblem& p, const BlockVec& x);

// y_i = E_i(x)^{-1} (A_i x_i)
std::vector<CVec> structured_aux_update(const MatrixRatioProblem& p, const BlockVec& x);

// D_i = sum_j w_j B_ji^H y_j y_j^H B_ji; the quadratic coupling seen by block i.
std::vector<CMat> quadratic_coupling(const MatrixRatioProblem& p,
                                     const std::vector<CVec>& y);

// Gradient of the true objective with respect to conj(x_i), evaluated through
// the envelope identity at optimal auxiliaries: w_i A_i^H y_i - D_i x_i.
BlockVec structured_gradient(const MatrixRatioProblem& p, const BlockVec& x);

// Quadratic-transform surrogate sum_i w_i (2 Re{x_i^H A_i^H y_i} - y_i^H E_i(x) y_i).
double structured_fq(const MatrixRatioProblem& p, const BlockVec& x,
                     const std::vector<CVec>& y);

// Nonhomogeneous bound on structured_fq: the coupling quadratic x^H D x is
// majorized around the anchor z with lambda_i >= lambda_max(D_i).
double structured_ft(const MatrixRatioProblem& p, const BlockVec& x,
                     const std::vector<CVec>& y, const BlockVec& z,
                     const Vec& lambda);

// x_i = P_i( z_i + (w_i A_i^H y_i - D_i z_i) / lambda_i ); the sphere-projection
// step of the nonhomogeneous transform, identical to projected gradient ascent
// with stepsize 1/lambda_i when z is the previous iterate.
BlockVec nonhomogeneous_x_update(const MatrixRatioProblem& p,
                                 const std::vector<CVec>& Y, const BlockVec& z,
                                 const Vec& lambda);

// nu = x_prev + eta_{k-1} (x_prev - x_prev2), eta_t = max{(t-2)/(t+1), 0}.
CVec extrapolation_step(int k, const CVec& x_prev, const CVec& x_prev2);

struct MatrixSolveResult {
    BlockVec x;
    double value = 0.0;
    SolverTrace trace;
};

// Alternating-optimization driver over the three transform variants:
//   matrix_basic           exact per-block ellipsoid step,
//   matrix_nonhomogeneous  sphere projection with lambda_i = ||D_i||_F,
//   matrix_extrapolated    nonhomogeneous step taken from the momentum point.
// The trace stores the true objective; the extrapolated variant is not
// monotone by construction.
MatrixSolveResult solve_matrix_fp(const MatrixRatioProblem& problem,
                                  TransformKind variant, const SolverConfig& config,
                                  std::optional<BlockVec> start = std::nullopt);

// ---------------------------------------------------------------------------
// Matrix Lagrangian dual transform (log-det objectives)
// ---------------------------------------------------------------------------

// Gamma_i = sqrtA_i^H B_i^{-1} sqrtA_i.
std::vector<CMat> matrix_ldt_gamma_update(const std::vector<CMat>& sqrtA,
                                          const std::vector<CMat>& B);

// sum_i w_i ( logdet(I + Gamma_i) - Tr(Gamma_i)
//             + Tr((I + Gamma_i) sqrtA_i^H (A_i + B_i)^{-1} sqrtA_i) ).
double matrix_ldt_objective(const std::vector<CMat>& sqrtA,
                            const std::vector<CMat>& B,
                            const std::vector<CMat>& Gamma, const Vec& weights);

// sum_i w_i logdet(I + sqrtA_i^H B_i^{-1} sqrtA_i).
double logdet_rate_objective(const std::vector<CMat>& sqrtA,
                             const std::vector<CMat>& B, const Vec& weights);

}  // namespace fp
