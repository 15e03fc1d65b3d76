#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "maser/params.hpp"

namespace maser {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Level functions C(n), S(n), alpha_n
// ---------------------------------------------------------------------------

/// Per-level values of the cavity functions at x = sqrt(xi*n + eta).
///
/// `cos_part` = cos(pi x), `sinc` = sin(pi x)/x (pi at x = 0), so that
/// C(n) = cos_part + i sqrt(eta) sinc, S(n) = sqrt(xi) sinc and
/// alpha_n = xi * n * sinc^2. At exact resonances sinc is exactly 0 and
/// cos_part is exactly +-1; where sqrt(xi*n+eta) is half an odd integer
/// cos_part is exactly 0.
struct LevelValues {
  double cos_part = 1.0;
  double sinc = 0.0;
  bool resonant = false;
};

LevelValues level_values(const DimensionlessParams& params, long n);

/// C(n) and S(n).
std::pair<cplx, double> eval_CS(const DimensionlessParams& params, long n);

/// alpha_k = sin^2(pi sqrt(xi k + eta)) xi k / (xi k + eta), in [0, 1].
double eval_alpha(const DimensionlessParams& params, long k);

/// Level values tabulated on 0..d+1 (the extra level feeds V_{+-} and V_{++}).
class LevelTable {
 public:
  LevelTable(const DimensionlessParams& params, int d);

  int truncation() const { return d_; }
  cplx C(int n) const;
  double S(int n) const;
  double alpha(int n) const { return alpha_.at(static_cast<std::size_t>(n)); }
  bool resonant(int n) const { return values_.at(static_cast<std::size_t>(n)).resonant; }
  const DimensionlessParams& params() const { return params_; }

 private:
  DimensionlessParams params_;
  int d_;
  double sqrt_xi_;
  double sqrt_eta_;
  std::vector<LevelValues> values_;
  std::vector<double> alpha_;
};

// ---------------------------------------------------------------------------
// Outcomes
// ---------------------------------------------------------------------------

/// Measurement outcome (sigma, sigma'): atom enters in sigma, exits in sigma'.
enum class Outcome : std::uint8_t { MinusMinus = 0, MinusPlus = 1, PlusMinus = 2, PlusPlus = 3 };

inline constexpr std::array<Outcome, 4> kOutcomes = {Outcome::MinusMinus, Outcome::MinusPlus,
                                                     Outcome::PlusMinus, Outcome::PlusPlus};

/// Level shift of a letter: (+,-) raises by one, (-,+) lowers by one.
constexpr int shift_of(Outcome y) {
  switch (y) {
    case Outcome::MinusPlus: return -1;
    case Outcome::PlusMinus: return +1;
    default: return 0;
  }
}

constexpr std::size_t index_of(Outcome y) { return static_cast<std::size_t>(y); }

std::string_view label(Outcome y);
Outcome parse_outcome(std::string_view text);

// ---------------------------------------------------------------------------
// Factored operators
// ---------------------------------------------------------------------------

/// Operator of the form  |n> -> e^{log_scale} mag[n] e^{i arg[n]} |n + shift>
/// on the truncated space {0..d}. Every Kraus element and every product of
/// them has this form. Magnitudes and phases are kept apart so that
/// populations only ever see mag^2.
struct FactoredOperator {
  int shift = 0;
  std::vector<double> mag;
  std::vector<double> arg;
  double log_scale = 0.0;

  static FactoredOperator identity(int d);
  static FactoredOperator from_complex(int shift, const std::vector<cplx>& amp);
  int truncation() const { return static_cast<int>(mag.size()) - 1; }
  bool kills(int n) const { return mag[static_cast<std::size_t>(n)] == 0.0; }
  /// Unscaled amplitude of |n>.
  cplx amp(int n) const { return std::polar(mag[static_cast<std::size_t>(n)], arg[static_cast<std::size_t>(n)]); }
  /// Unscaled |amp(n)|^2.
  double weight(int n) const { return mag[static_cast<std::size_t>(n)] * mag[static_cast<std::size_t>(n)]; }
  /// Target level of n, or nullopt when the operator annihilates |n>.
  std::optional<int> image_of(int n) const;
  Eigen::MatrixXcd dense(bool with_scale = true) const;
};

/// The product V∘W (apply W first). Amplitudes are renormalized by powers of
/// two whenever their maximum leaves [2^-512, 2^512].
FactoredOperator compose_factored(const FactoredOperator& w, const FactoredOperator& v);

struct KrausSet {
  std::array<FactoredOperator, 4> ops;
  DimensionlessParams params;
  AtomProbabilities atoms;
  int d = 0;
  /// Weight p_+ alpha_{d+1} that V_{+-} would push from |d> above the truncation.
  double boundary_defect = 0.0;

  const FactoredOperator& operator[](Outcome y) const { return ops[index_of(y)]; }
};

KrausSet build_kraus(const DimensionlessParams& params, int d);
KrausSet build_kraus(const LevelTable& table);

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

struct DensityMatrix {
  Eigen::MatrixXcd mat;
  double leakage = 0.0;

  int truncation() const { return static_cast<int>(mat.rows()) - 1; }
  double trace() const { return mat.trace().real(); }

  static DensityMatrix fock(int d, int k);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix diagonal(const Eigen::VectorXd& weights);

  /// Throws std::invalid_argument when Hermiticity, positivity or trace fail.
  void validate(double herm_tol = 1e-12, double eig_tol = 1e-10) const;
};

/// Largest |i-j| with a nonzero entry; -1 for the zero matrix.
int bandwidth(const Eigen::MatrixXcd& m);

struct Applied {
  DensityMatrix rho;  // unnormalized V rho V*
  double weight = 0.0;
};

/// V rho V* in O(d * band) using the factored form. `band` < 0 means
/// "compute it"; passing the known band of rho skips the scan.
Applied apply_to_density(const FactoredOperator& v, const DensityMatrix& rho, int band = -1);

/// Tr(V_y rho V_y*) for the four outcomes; needs only the diagonal of rho.
std::array<double, 4> outcome_weights(const KrausSet& kraus, const Eigen::MatrixXcd& rho);

/// Sum of absolute eigenvalues. Rejects inputs whose asymmetry exceeds 1e-8.
double trace_norm(const Eigen::MatrixXcd& a);

struct StochasticityReport {
  double max_interior_deviation = 0.0;  // over levels 0..d-1
  double boundary_defect = 0.0;         // 1 - sum_y |V_y|d>|^2
};

StochasticityReport verify_stochasticity(const KrausSet& kraus);

}  // namespace maser
