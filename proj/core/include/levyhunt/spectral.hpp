#pragma once

#include <optional>
#include <span>

#include "levyhunt/linalg.hpp"

namespace levyhunt {

class LevyTriplet;

// Eigensystem of a symmetric PSD matrix and everything derived from it:
// orthogonal O (rows are eigenvectors, eigenvalues descending), the numeric
// rank, the PSD square root, and range-membership tests.
struct SpectralData {
    Mat O;
    Vec D;                 // eigenvalues, descending, clamped at 0
    int rank = 0;          // count of eigenvalues above rank_tol
    Mat sqrtA;             // O^T diag(sqrt(D)) O, null directions zeroed
    double rank_tol = 0.0; // absolute threshold applied to D

    int dim() const { return static_cast<int>(D.size()); }

    Vec project_range(std::span<const double> x) const;
    double range_distance(std::span<const double> x) const;
    // relative membership test, tol * (1 + |x|)
    bool in_range(std::span<const double> x, double tol = 1e-9) const;
};

struct DecomposeOptions {
    double rank_tol_rel = 1e-10;    // threshold relative to the largest eigenvalue
    int max_sweeps = 100;
    double offdiag_tol_rel = 1e-12; // convergence, relative to ||A||_F
};

// Cyclic Jacobi. Throws InvalidInput for non-symmetric or non-PSD input
// (eigenvalues below -1e-10 * spectral radius), Error if sweeps run out.
SpectralData decompose(const Mat& A, const DecomposeOptions& opt = {});

struct SolveResult {
    bool solvable = false;
    std::optional<Vec> y;    // minimal-norm solution of sqrtA y = b', when solvable
    double residual = 0.0;   // |sqrtA y - b'|
};

// Solvability of sqrtA y = b', decided by the distance of b' to range(sqrtA)
// against solve_tol * (1 + |b'|).
SolveResult solve_condition_S(const SpectralData& s, std::span<const double> bprime,
                              double solve_tol = 1e-9);

// X -> QX for an arbitrary orthogonal Q: a -> Qa, A -> QAQ^T, jumps pushed forward.
LevyTriplet rotate_triplet(const LevyTriplet& t, const Mat& Q);

// Specialization to Q = s.O; the Gaussian part comes out exactly diagonal.
LevyTriplet transform_triplet(const LevyTriplet& t, const SpectralData& s);

}  // namespace levyhunt
