#include "fp/matrix_transforms.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <sstream>

#include "fp/projection.hpp"

namespace fp {

namespace {

using Complex = std::complex<double>;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

Eigen::SelfAdjointEigenSolver<CMat> checked_eigensolver(const CMat& B) {
    if (B.rows() != B.cols()) throw ShapeMismatch("denominator matrix not square");
    Eigen::SelfAdjointEigenSolver<CMat> es(B);
    if (es.info() != Eigen::Success)
        throw SingularDenominator("eigen-decomposition failed");
    if (es.eigenvalues().minCoeff() < kEigenvalueFloor) {
        std::ostringstream os;
        os << "denominator min eigenvalue " << es.eigenvalues().minCoeff()
           << " below floor";
        throw SingularDenominator(os.str());
    }
    return es;
}

CMat hermitian_solve(const CMat& B, const CMat& rhs) {
    const auto es = checked_eigensolver(B);
    return es.eigenvectors() *
           es.eigenvalues().cwiseInverse().asDiagonal() *
           es.eigenvectors().adjoint() * rhs;
}

}  // namespace

CMat hermitian_sqrt(const CMat& A) {
    if (A.rows() != A.cols()) throw ShapeMismatch("hermitian_sqrt: not square");
    Eigen::SelfAdjointEigenSolver<CMat> es(A);
    if (es.info() != Eigen::Success) throw FpError("hermitian_sqrt: decomposition failed");
    Vec ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < -kEigenvalueFloor)
            throw DomainError("hermitian_sqrt: matrix has a negative eigenvalue");
        ev[i] = std::sqrt(std::max(ev[i], 0.0));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Mat symmetric_sqrt(const Mat& A) {
    return hermitian_sqrt(A.cast<Complex>()).real();
}

double min_eigenvalue(const CMat& B) {
    Eigen::SelfAdjointEigenSolver<CMat> es(B);
    if (es.info() != Eigen::Success) throw FpError("min_eigenvalue: decomposition failed");
    return es.eigenvalues().minCoeff();
}

double lambda_bound(const CMat& D) { return D.norm(); }

std::vector<CMat> matrix_qt_aux_update(const std::vector<CMat>& sqrtA,
                                       const std::vector<CMat>& B) {
    if (sqrtA.size() != B.size()) throw ShapeMismatch("aux update: term count mismatch");
    std::vector<CMat> Y(sqrtA.size());
    for (std::size_t i = 0; i < sqrtA.size(); ++i) {
        if (B[i].rows() != sqrtA[i].rows())
            throw ShapeMismatch("aux update: sqrtA/B row mismatch");
        Y[i] = hermitian_solve(B[i], sqrtA[i]);
    }
    return Y;
}

double matrix_qt_surrogate(const std::vector<CMat>& sqrtA,
                           const std::vector<CMat>& B,
                           const std::vector<CMat>& Y, const Vec& weights) {
    const std::size_t n = sqrtA.size();
    if (B.size() != n || Y.size() != n || weights.size() != static_cast<Eigen::Index>(n))
        throw ShapeMismatch("matrix surrogate: term count mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (Y[i].rows() != sqrtA[i].rows() || Y[i].cols() != sqrtA[i].cols())
            throw ShapeMismatch("matrix surrogate: Y shape mismatch");
        if (B[i].rows() != B[i].cols() || B[i].rows() != sqrtA[i].rows())
            throw ShapeMismatch("matrix surrogate: B shape mismatch");
        const double cross = 2.0 * (sqrtA[i].adjoint() * Y[i]).trace().real();
        const double quad = (Y[i].adjoint() * B[i] * Y[i]).trace().real();
        total += weights[i] * (cross - quad);
    }
    return total;
}

double matrix_ratio_objective(const std::vector<CMat>& sqrtA,
                              const std::vector<CMat>& B, const Vec& weights) {
    const std::size_t n = sqrtA.size();
    if (B.size() != n || weights.size() != static_cast<Eigen::Index>(n))
        throw ShapeMismatch("matrix objective: term count mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        total += weights[i] *
                 (sqrtA[i].adjoint() * hermitian_solve(B[i], sqrtA[i])).trace().real();
    return total;
}

// ---------------------------------------------------------------------------
// Structured problems
// ---------------------------------------------------------------------------

void MatrixRatioProblem::check_well_formed() const {
    const int n = terms();
    if (n == 0) throw FpError("matrix problem has no terms");
    if (static_cast<int>(B.size()) != n || weights.size() != n ||
        static_cast<int>(block_constraints.size()) != n)
        throw ShapeMismatch("matrix problem: field sizes disagree");
    if ((weights.array() <= 0.0).any()) throw FpError("weights must be strictly positive");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(B[i].size()) != n)
            throw ShapeMismatch("matrix problem: B row has wrong term count");
        const Eigen::Index l = A[i].rows();
        for (int j = 0; j < n; ++j) {
            if (B[i][j].rows() != l) throw ShapeMismatch("matrix problem: B_ij row dim");
            if (B[i][j].cols() != A[j].cols())
                throw ShapeMismatch("matrix problem: B_ij col dim");
        }
        if (!noise.empty() && (noise[i].rows() != l || noise[i].cols() != l))
            throw ShapeMismatch("matrix problem: noise shape");
    }
}

CMat structured_denominator(const MatrixRatioProblem& p, int i, const BlockVec& x) {
    const Eigen::Index l = p.A[i].rows();
    CMat E = p.noise.empty() ? CMat::Zero(l, l).eval() : p.noise[i];
    for (int j = 0; j < p.terms(); ++j) {
        const CVec bx = p.B[i][j] * x[j];
        E.noalias() += bx * bx.adjoint();
    }
    return E;
}

double structured_objective(const MatrixRatioProblem& p, const BlockVec& x) {
    double total = 0.0;
    for (int i = 0; i < p.terms(); ++i) {
        const CVec ax = p.A[i] * x[i];
        const CMat E = structured_denominator(p, i, x);
        total += p.weights[i] * (ax.adjoint() * hermitian_solve(E, ax))(0, 0).real();
    }
    return total;
}

std::vector<CVec> structured_aux_update(const MatrixRatioProblem& p, const BlockVec& x) {
    std::vector<CVec> y(p.terms());
    for (int i = 0; i < p.terms(); ++i) {
        const CVec ax = p.A[i] * x[i];
        y[i] = hermitian_solve(structured_denominator(p, i, x), ax);
    }
    return y;
}

std::vector<CMat> quadratic_coupling(const MatrixRatioProblem& p,
                                     const std::vector<CVec>& y) {
    std::vector<CMat> D(p.terms());
    for (int i = 0; i < p.terms(); ++i) {
        const int m = p.block_dim(i);
        D[i] = CMat::Zero(m, m);
        for (int j = 0; j < p.terms(); ++j) {
            const CVec byj = p.B[j][i].adjoint() * y[j];
            D[i].noalias() += p.weights[j] * (byj * byj.adjoint());
        }
    }
    return D;
}

BlockVec structured_gradient(const MatrixRatioProblem& p, const BlockVec& x) {
    const auto y = structured_aux_update(p, x);
    const auto D = quadratic_coupling(p, y);
    BlockVec g(p.terms());
    for (int i = 0; i < p.terms(); ++i)
        g[i] = p.weights[i] * (p.A[i].adjoint() * y[i]) - D[i] * x[i];
    return g;
}

double structured_fq(const MatrixRatioProblem& p, const BlockVec& x,
                     const std::vector<CVec>& y) {
    double total = 0.0;
    for (int i = 0; i < p.terms(); ++i) {
        const CVec ax = p.A[i] * x[i];
        const CMat E = structured_denominator(p, i, x);
        total += p.weights[i] * (2.0 * ax.dot(y[i]).real() -
                                 (y[i].adjoint() * E * y[i])(0, 0).real());
    }
    return total;
}

double structured_ft(const MatrixRatioProblem& p, const BlockVec& x,
                     const std::vector<CVec>& y, const BlockVec& z,
                     const Vec& lambda) {
    const auto D = quadratic_coupling(p, y);
    double total = 0.0;
    for (int i = 0; i < p.terms(); ++i) {
        const CVec ax = p.A[i] * x[i];
        total += p.weights[i] * 2.0 * ax.dot(y[i]).real();
        if (!p.noise.empty())
            total -= p.weights[i] * (y[i].adjoint() * p.noise[i] * y[i])(0, 0).real();
        const CVec shifted = lambda[i] * z[i] - D[i] * z[i];
        total -= lambda[i] * x[i].squaredNorm() - 2.0 * x[i].dot(shifted).real() +
                 z[i].dot(shifted).real();
    }
    return total;
}

BlockVec nonhomogeneous_x_update(const MatrixRatioProblem& p,
                                 const std::vector<CVec>& Y, const BlockVec& z,
                                 const Vec& lambda) {
    const auto D = quadratic_coupling(p, Y);
    BlockVec x(p.terms());
    for (int i = 0; i < p.terms(); ++i) {
        if (lambda[i] <= 0.0) throw FpError("nonhomogeneous update: lambda must be positive");
        const CVec step =
            z[i] + (p.weights[i] * (p.A[i].adjoint() * Y[i]) - D[i] * z[i]) / lambda[i];
        x[i] = project_complex(p.block_constraints[i], step);
    }
    return x;
}

CVec extrapolation_step(int k, const CVec& x_prev, const CVec& x_prev2) {
    if (k < 1) throw FpError("extrapolation_step: iteration index must be >= 1");
    const int t = k - 1;
    const double eta = std::max(static_cast<double>(t - 2) / static_cast<double>(t + 1), 0.0);
    return x_prev + eta * (x_prev - x_prev2);
}

namespace {

// argmin over the block set of x^H D x - 2 Re{x^H b}; D Hermitian PSD.
CVec ellipsoid_argmin(const CMat& D, const CVec& b, const ConstraintSet& set) {
    Eigen::SelfAdjointEigenSolver<CMat> es(D);
    if (es.info() != Eigen::Success) throw FpError("ellipsoid step: decomposition failed");
    const Vec lam = es.eigenvalues();
    const CVec bt = es.eigenvectors().adjoint() * b;
    const double lam_max = lam.maxCoeff();
    const double rank_floor = std::max(lam_max, 1.0) * 1e-13;

    auto x_of = [&](double nu) {
        CVec w(bt.size());
        for (Eigen::Index i = 0; i < bt.size(); ++i) w[i] = bt[i] / (lam[i] + nu);
        return CVec(es.eigenvectors() * w);
    };

    switch (set.kind) {
        case SetKind::unconstrained: {
            CVec w(bt.size());
            for (Eigen::Index i = 0; i < bt.size(); ++i) {
                if (lam[i] > rank_floor) {
                    w[i] = bt[i] / lam[i];
                } else if (std::abs(bt[i]) <= 1e-10 * std::max(1.0, b.norm())) {
                    w[i] = 0.0;  // minimum-norm component on the null space
                } else {
                    throw SingularDenominator("ellipsoid step: unbounded direction");
                }
            }
            return es.eigenvectors() * w;
        }
        case SetKind::euclidean_ball: {
            // Interior solution if it exists, otherwise solve ||x(nu)|| = r.
            bool unbounded = false;
            CVec w(bt.size());
            for (Eigen::Index i = 0; i < bt.size(); ++i) {
                if (lam[i] > rank_floor) w[i] = bt[i] / lam[i];
                else if (std::abs(bt[i]) <= 1e-12 * std::max(1.0, b.norm())) w[i] = 0.0;
                else { unbounded = true; break; }
            }
            if (!unbounded) {
                const CVec cand = es.eigenvectors() * w;
                if (cand.norm() <= set.radius) return cand;
            }
            double lo = 0.0;
            double hi = std::max(b.norm() / set.radius, 1e-12);
            while (x_of(hi).norm() > set.radius) hi *= 2.0;
            for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                if (x_of(mid).norm() > set.radius) lo = mid;
                else hi = mid;
            }
            return x_of(hi);
        }
        default:
            throw UnsupportedSet("ellipsoid step: unsupported block constraint");
    }
}

}  // namespace

MatrixSolveResult solve_matrix_fp(const MatrixRatioProblem& problem,
                                  TransformKind variant, const SolverConfig& config,
                                  std::optional<BlockVec> start) {
    problem.check_well_formed();
    config.check();
    if (variant != TransformKind::matrix_basic &&
        variant != TransformKind::matrix_nonhomogeneous &&
        variant != TransformKind::matrix_extrapolated)
        throw FpError("solve_matrix_fp: variant must be a matrix transform");

    const int n = problem.terms();
    MatrixSolveResult out;
    out.trace.variant = variant;
    out.trace.direction = Direction::maximize;

    BlockVec x(n);
    if (start) {
        x = *start;
    } else {
        for (int i = 0; i < n; ++i) {
            const int m = problem.block_dim(i);
            CVec v = CVec::Constant(m, Complex(1.0, 0.0));
            x[i] = project_complex(problem.block_constraints[i], v);
        }
    }

    MatrixAux aux;
    aux.x_prev = x;
    aux.x_prev2 = x;  // x^(-1) = x^(0)
    aux.lambda.resize(n);

    Stopwatch clock;
    double prev_obj = structured_objective(problem, x);

    for (int it = 1; it <= config.max_iters; ++it) {
        if (variant == TransformKind::matrix_extrapolated) {
            // Momentum point, then one sphere-projection step with the
            // gradient evaluated at the momentum point.
            BlockVec nu(n);
            for (int i = 0; i < n; ++i)
                nu[i] = extrapolation_step(it, aux.x_prev[i], aux.x_prev2[i]);
            aux.Y = structured_aux_update(problem, nu);
            const auto D = quadratic_coupling(problem, aux.Y);
            for (int i = 0; i < n; ++i) aux.lambda[i] = lambda_bound(D[i]);
            aux.z = nu;
            BlockVec x_next = nonhomogeneous_x_update(problem, aux.Y, aux.z, aux.lambda);
            aux.x_prev2 = aux.x_prev;
            aux.x_prev = x_next;
            x = std::move(x_next);
        } else {
            aux.Y = structured_aux_update(problem, x);
            const auto D = quadratic_coupling(problem, aux.Y);
            if (variant == TransformKind::matrix_basic) {
                for (int i = 0; i < n; ++i) {
                    const CVec b = problem.weights[i] * (problem.A[i].adjoint() * aux.Y[i]);
                    x[i] = ellipsoid_argmin(D[i], b, problem.block_constraints[i]);
                }
            } else {
                for (int i = 0; i < n; ++i) aux.lambda[i] = lambda_bound(D[i]);
                aux.z = x;
                x = nonhomogeneous_x_update(problem, aux.Y, aux.z, aux.lambda);
            }
            aux.x_prev2 = aux.x_prev;
            aux.x_prev = x;
        }

        const double obj = structured_objective(problem, x);
        double aux_norm = 0.0;
        for (const auto& yi : aux.Y) aux_norm += yi.squaredNorm();
        const std::vector<CMat> sqrtA_now = [&] {
            std::vector<CMat> s(n);
            for (int i = 0; i < n; ++i) s[i] = problem.A[i] * x[i];
            return s;
        }();
        std::vector<CMat> B_now(n);
        for (int i = 0; i < n; ++i) B_now[i] = structured_denominator(problem, i, x);
        std::vector<CMat> Y_now(n);
        for (int i = 0; i < n; ++i) Y_now[i] = aux.Y[i];
        const double surrogate = matrix_qt_surrogate(sqrtA_now, B_now, Y_now, problem.weights);
        out.trace.records.push_back({it, obj, surrogate, std::sqrt(aux_norm), clock.ms()});

        if (variant != TransformKind::matrix_extrapolated &&
            std::abs(obj - prev_obj) <= config.obj_tol) {
            prev_obj = obj;
            out.trace.status = SolveStatus::converged;
            break;
        }
        prev_obj = obj;
    }
    out.x = x;
    out.value = prev_obj;
    return out;
}

// ---------------------------------------------------------------------------
// Matrix Lagrangian dual transform
// ---------------------------------------------------------------------------

std::vector<CMat> matrix_ldt_gamma_update(const std::vector<CMat>& sqrtA,
                                          const std::vector<CMat>& B) {
    if (sqrtA.size() != B.size()) throw ShapeMismatch("matrix ldt: term count mismatch");
    std::vector<CMat> Gamma(sqrtA.size());
    for (std::size_t i = 0; i < sqrtA.size(); ++i)
        Gamma[i] = sqrtA[i].adjoint() * hermitian_solve(B[i], sqrtA[i]);
    return Gamma;
}

double matrix_ldt_objective(const std::vector<CMat>& sqrtA,
                            const std::vector<CMat>& B,
                            const std::vector<CMat>& Gamma, const Vec& weights) {
    const std::size_t n = sqrtA.size();
    if (B.size() != n || Gamma.size() != n || weights.size() != static_cast<Eigen::Index>(n))
        throw ShapeMismatch("matrix ldt objective: term count mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Index d = sqrtA[i].cols();
        if (Gamma[i].rows() != d || Gamma[i].cols() != d)
            throw ShapeMismatch("matrix ldt objective: Gamma shape");
        const CMat eye_plus = CMat::Identity(d, d) + Gamma[i];
        Eigen::SelfAdjointEigenSolver<CMat> es(eye_plus);
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw DomainError("matrix ldt objective: I + Gamma not positive definite");
        const double logdet = es.eigenvalues().array().log().sum();
        const CMat denom = sqrtA[i] * sqrtA[i].adjoint() + B[i];
        const CMat ratio = sqrtA[i].adjoint() * hermitian_solve(denom, sqrtA[i]);
        total += weights[i] * (logdet - Gamma[i].trace().real() +
                               (eye_plus * ratio).trace().real());
    }
    return total;
}

double logdet_rate_objective(const std::vector<CMat>& sqrtA,
                             const std::vector<CMat>& B, const Vec& weights) {
    const std::size_t n = sqrtA.size();
    if (B.size() != n || weights.size() != static_cast<Eigen::Index>(n))
        throw ShapeMismatch("logdet objective: term count mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Index d = sqrtA[i].cols();
        const CMat M = CMat::Identity(d, d) +
                       sqrtA[i].adjoint() * hermitian_solve(B[i], sqrtA[i]);
        Eigen::SelfAdjointEigenSolver<CMat> es(M);
        total += weights[i] * es.eigenvalues().array().log().sum();
    }
    return total;
}

}  // namespace fp
