#pragma once

#include <array>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rotinv/context.hpp"
#include "rotinv/state.hpp"

namespace rotinv {

/// Uniform measure on the q x q grid of q-th roots of unity, theta = p / q.
struct GridMode {
  int p = 1;
  int q = 1;
  bool operator==(const GridMode&) const = default;
};

/// Finitely many atoms with user-supplied Radon-Nikodym ratios
/// rn1 = d nu_{1,0} / d nu and rn2 = d nu_{0,1} / d nu at each atom.
struct SampledMode {
  double theta = 0.0;
  std::vector<std::array<cplx, 2>> points;
  std::vector<double> weights;
  std::vector<double> rn1;
  std::vector<double> rn2;
};

/// (m, nu, b1, b2). b1[i], b2[i] are m x m matrices at measure point i; points
/// are ordered lexicographically ((i, j) -> (omega^i, omega^j) in grid mode).
struct RepSpec {
  int m = 1;
  std::variant<GridMode, SampledMode> mode;
  std::vector<Eigen::MatrixXcd> b1;
  std::vector<Eigen::MatrixXcd> b2;
};

struct RepMatrices {
  AlgebraContext ctx;
  int m = 1;
  std::size_t points = 0;
  /// pi(W1) .. pi(W4) in orthonormal coordinates, side m * points.
  std::array<Eigen::MatrixXcd, 4> W;
};

AlgebraContext rep_context(const RepSpec& spec);
std::vector<std::array<cplx, 2>> rep_points(const RepSpec& spec);
std::vector<double> rep_weights(const RepSpec& spec);

/// Index of beta_gen(z) for each point z, gen in {0, 1}. The translations are
/// beta_1 z = (conj(lambda) z1, z2) and beta_2 z = (z1, conj(lambda) z2), the
/// direction for which pi(W1) pi(W3) = lambda pi(W3) pi(W1). Throws
/// NonQuasiInvariant when a sampled point has no image in the support.
std::vector<std::size_t> shift_table(const RepSpec& spec, int gen);

/// Checks the spec invariants: positive normalized weights, unitary cocycles,
/// closed orbits, consistent Radon-Nikodym tables, and the compatibility
/// b1(z) b2(beta_1 z) = b2(z) b1(beta_2 z) that W3 W4 = W4 W3 requires.
void validate_rep(const RepSpec& spec);

/// (W1 f)(z) = z1 f(z), (W2 f)(z) = z2 f(z),
/// (W3 f)(z) = b1(z) sqrt(rn1(z)) f(beta_1 z), (W4 f)(z) = b2(z) sqrt(rn2(z)) f(beta_2 z).
/// `validate` = false skips validate_rep; used to probe the relation checker.
RepMatrices build_rep(const RepSpec& spec, bool validate = true);

/// Largest operator-norm residual over W1W2 = W2W1, W3W4 = W4W3,
/// W1W3 = lambda W3W1, W2W4 = lambda W4W2.
double relations_residual(const RepMatrices& reps);
double relations_residual(const std::array<Eigen::MatrixXcd, 4>& W, const AlgebraContext& ctx);

/// max_i |W_i^* W_i - I| in operator norm.
double unitarity_residual(const RepMatrices& reps);

/// max over points of |W(z) b_i(z) - b~_i(z) W(beta_i z)|, i = 1, 2.
/// Throws MeasureMismatch unless both specs share m and the measure.
double cocycle_equiv_residual(const RepSpec& a, const RepSpec& b,
                              const std::vector<Eigen::MatrixXcd>& W);

/// b~_i(z) = W(z) b_i(z) W(beta_i z)^*.
RepSpec gauge_transform(const RepSpec& spec, const std::vector<Eigen::MatrixXcd>& W);

/// Block-diagonal unitary (W f)(z) = W(z) f(z) in orthonormal coordinates.
Eigen::MatrixXcd gauge_operator(const RepSpec& spec, const std::vector<Eigen::MatrixXcd>& W);

/// Unit vector for the constant function 1 in the first multiplicity slot
/// (scaled to norm one).
Eigen::VectorXcd uniform_vector(const RepMatrices& reps);
/// Basis vector at `index` in orthonormal coordinates.
Eigen::VectorXcd cyclic_basis_vector(const RepMatrices& reps, std::size_t index);

/// Forward direction of the classification: psi(e_g) = <e, pi(eta^-1(e_g)) e> for
/// every g in `indices`.
PsiTable state_from_rep(const RepMatrices& reps, const Eigen::VectorXcd& e,
                        const std::vector<Index4>& indices);
PsiTable state_from_rep(const RepSpec& spec, std::size_t cyclic_index,
                        const std::vector<Index4>& indices);

/// Operator 2-norm.
double op_norm(const Eigen::MatrixXcd& m);

}  // namespace rotinv
