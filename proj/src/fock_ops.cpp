#include "maser/fock_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maser/resonance.hpp"

namespace maser {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi x)/x, with its series below 1e-4 where the quotient loses digits.
double sinc_pi(double x) {
  if (std::abs(x) < 1e-4) {
    const double u = kPi * x;
    const double u2 = u * u;
    return kPi * (1.0 - u2 / 6.0 + u2 * u2 / 120.0);
  }
  return std::sin(kPi * x) / x;
}

bool is_injected(const DimensionlessParams& p, long n) {
  return std::find(p.injected_resonances.begin(), p.injected_resonances.end(), n) !=
         p.injected_resonances.end();
}

double alpha_from(const LevelValues& v, const DimensionlessParams& p, long n) {
  if (n == 0 || v.resonant || v.sinc == 0.0) return 0.0;
  // |C(n)|^2 = 0 exactly: the whole Fock weight moves.
  if (v.cos_part == 0.0 && p.eta == 0.0) return 1.0;
  return std::clamp(p.xi * static_cast<double>(n) * v.sinc * v.sinc, 0.0, 1.0);
}

cplx phase(double phi, long n) {
  return std::polar(1.0, -std::fmod(phi * static_cast<double>(n), 2.0 * kPi));
}

}  // namespace

LevelValues level_values(const DimensionlessParams& params, long n) {
  LevelValues v;
  const double x2 = params.xi * static_cast<double>(n) + params.eta;
  const double x = std::sqrt(std::max(x2, 0.0));
  if (n >= 1 && is_injected(params, n)) {
    v.resonant = true;
    v.sinc = 0.0;
    v.cos_part = std::copysign(1.0, std::cos(kPi * x));
    return v;
  }
  if (params.exactness() == Exactness::ExactRational) {
    const RootClass root = classify_root(*params.xi_exact, *params.eta_exact, n);
    if (root.kind == RootClass::Integer) {
      if (root.value == 0) {
        v.cos_part = 1.0;
        v.sinc = kPi;
      } else {
        v.cos_part = (root.value % 2 == 0) ? 1.0 : -1.0;
        v.sinc = 0.0;
        v.resonant = n >= 1;
      }
      return v;
    }
    if (root.kind == RootClass::HalfOdd) {
      // sqrt = j/2 with j odd: cos = 0, sin = (-1)^((j-1)/2).
      const BigInt j = root.value;
      const double sign = ((j - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
      v.cos_part = 0.0;
      v.sinc = sign * 2.0 / static_cast<double>(j);
      return v;
    }
  }
  v.cos_part = std::cos(kPi * x);
  v.sinc = sinc_pi(x);
  return v;
}

std::pair<cplx, double> eval_CS(const DimensionlessParams& params, long n) {
  const LevelValues v = level_values(params, n);
  return {cplx(v.cos_part, std::sqrt(params.eta) * v.sinc), std::sqrt(params.xi) * v.sinc};
}

double eval_alpha(const DimensionlessParams& params, long k) {
  return alpha_from(level_values(params, k), params, k);
}

LevelTable::LevelTable(const DimensionlessParams& params, int d)
    : params_(params), d_(d), sqrt_xi_(std::sqrt(params.xi)), sqrt_eta_(std::sqrt(params.eta)) {
  if (d < 1) throw ParameterError("truncation d must be >= 1");
  params_.validate();
  values_.reserve(static_cast<std::size_t>(d) + 2);
  alpha_.reserve(static_cast<std::size_t>(d) + 2);
  for (int n = 0; n <= d + 1; ++n) {
    values_.push_back(level_values(params_, n));
    alpha_.push_back(alpha_from(values_.back(), params_, n));
  }
}

cplx LevelTable::C(int n) const {
  const LevelValues& v = values_.at(static_cast<std::size_t>(n));
  return {v.cos_part, sqrt_eta_ * v.sinc};
}

double LevelTable::S(int n) const { return sqrt_xi_ * values_.at(static_cast<std::size_t>(n)).sinc; }

std::string_view label(Outcome y) {
  switch (y) {
    case Outcome::MinusMinus: return "--";
    case Outcome::MinusPlus: return "-+";
    case Outcome::PlusMinus: return "+-";
    case Outcome::PlusPlus: return "++";
  }
  return "??";
}

Outcome parse_outcome(std::string_view text) {
  for (Outcome y : kOutcomes)
    if (label(y) == text) return y;
  throw std::invalid_argument("unknown outcome '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

FactoredOperator FactoredOperator::identity(int d) {
  FactoredOperator op;
  op.mag.assign(static_cast<std::size_t>(d) + 1, 1.0);
  op.arg.assign(static_cast<std::size_t>(d) + 1, 0.0);
  return op;
}

FactoredOperator FactoredOperator::from_complex(int shift, const std::vector<cplx>& amp) {
  FactoredOperator op;
  op.shift = shift;
  op.mag.resize(amp.size());
  op.arg.resize(amp.size());
  for (std::size_t n = 0; n < amp.size(); ++n) {
    op.mag[n] = std::abs(amp[n]);
    op.arg[n] = op.mag[n] == 0.0 ? 0.0 : std::arg(amp[n]);
  }
  return op;
}

std::optional<int> FactoredOperator::image_of(int n) const {
  const int target = n + shift;
  if (target < 0 || target > truncation() || kills(n)) return std::nullopt;
  return target;
}

Eigen::MatrixXcd FactoredOperator::dense(bool with_scale) const {
  const int d = truncation();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  const double scale = with_scale ? std::exp(log_scale) : 1.0;
  for (int n = 0; n <= d; ++n) {
    const int t = n + shift;
    if (t >= 0 && t <= d) m(t, n) = scale * amp(n);
  }
  return m;
}

FactoredOperator compose_factored(const FactoredOperator& w, const FactoredOperator& v) {
  const int d = w.truncation();
  if (v.truncation() != d) throw std::invalid_argument("compose_factored: truncation mismatch");
  FactoredOperator out;
  out.shift = w.shift + v.shift;
  out.log_scale = w.log_scale + v.log_scale;
  out.mag.assign(w.mag.size(), 0.0);
  out.arg.assign(w.arg.size(), 0.0);
  double peak = 0.0;
  for (int n = 0; n <= d; ++n) {
    const int mid = n + w.shift;
    if (mid < 0 || mid > d) continue;
    const auto i = static_cast<std::size_t>(n);
    const auto m = static_cast<std::size_t>(mid);
    const double a = v.mag[m] * w.mag[i];
    if (a == 0.0) continue;
    out.mag[i] = a;
    out.arg[i] = std::remainder(v.arg[m] + w.arg[i], 2.0 * kPi);
    peak = std::max(peak, a);
  }
  constexpr double lo = 0x1p-512;
  constexpr double hi = 0x1p+512;
  if (peak > 0.0 && (peak < lo || peak > hi)) {
    int e = 0;
    std::frexp(peak, &e);
    for (auto& a : out.mag) a = std::ldexp(a, -e);
    out.log_scale += e * std::numbers::ln2;
  }
  return out;
}

KrausSet build_kraus(const DimensionlessParams& params, int d) { return build_kraus(LevelTable(params, d)); }

KrausSet build_kraus(const LevelTable& table) {
  const int d = table.truncation();
  const DimensionlessParams& p = table.params();
  KrausSet ks;
  ks.params = p;
  ks.d = d;
  ks.atoms = atomic_probabilities(p.theta);
  const double sm = std::sqrt(ks.atoms.p_minus);
  const double sp = std::sqrt(ks.atoms.p_plus);
  const std::size_t size = static_cast<std::size_t>(d) + 1;

  std::array<std::vector<cplx>, 4> amp;
  for (auto& v : amp) v.assign(size, cplx(0.0, 0.0));
  for (int n = 0; n <= d; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double dn = static_cast<double>(n);
    amp[0][i] = sm * phase(p.phi, n) * table.C(n);
    if (n >= 1) amp[1][i] = sm * phase(p.phi, n - 1) * (table.S(n) * std::sqrt(dn));
    if (n < d) amp[2][i] = sp * phase(p.phi, n + 1) * (table.S(n + 1) * std::sqrt(dn + 1.0));
    amp[3][i] = sp * phase(p.phi, n) * std::conj(table.C(n + 1));
  }
  const std::array<int, 4> shifts = {0, -1, +1, 0};
  for (std::size_t y = 0; y < 4; ++y) ks.ops[y] = FactoredOperator::from_complex(shifts[y], amp[y]);
  // Magnitudes straight from the level functions, so that equal |C| give equal weights.
  for (int n = 0; n <= d; ++n) {
    const auto i = static_cast<std::size_t>(n);
    ks.ops[0].mag[i] = sm * std::abs(table.C(n));
    ks.ops[3].mag[i] = sp * std::abs(table.C(n + 1));
    if (n >= 1) ks.ops[1].mag[i] = sm * std::abs(table.S(n)) * std::sqrt(static_cast<double>(n));
    if (n < d) ks.ops[2].mag[i] = sp * std::abs(table.S(n + 1)) * std::sqrt(static_cast<double>(n) + 1.0);
  }
  ks.boundary_defect = ks.atoms.p_plus * table.alpha(d + 1);
  return ks;
}

// ---------------------------------------------------------------------------

DensityMatrix DensityMatrix::fock(int d, int k) {
  if (k < 0 || k > d) throw std::invalid_argument("Fock level outside truncation");
  DensityMatrix r;
  r.mat = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  r.mat(k, k) = 1.0;
  return r;
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("zero state vector");
  const Eigen::VectorXcd u = psi / norm;
  DensityMatrix r;
  r.mat = u * u.adjoint();
  return r;
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& weights) {
  const double total = weights.sum();
  if (!(total > 0.0) || (weights.array() < 0.0).any())
    throw std::invalid_argument("diagonal weights must be non-negative with positive sum");
  DensityMatrix r;
  r.mat = (weights / total).cast<cplx>().asDiagonal();
  return r;
}

void DensityMatrix::validate(double herm_tol, double eig_tol) const {
  if (mat.rows() != mat.cols() || mat.rows() < 1) throw std::invalid_argument("density matrix must be square");
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
    throw std::invalid_argument("density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eig_tol) throw std::invalid_argument("density matrix is not PSD");
  const double tr = trace();
  if (tr < 1.0 - leakage - 1e-10 || tr > 1.0 + 1e-10)
    throw std::invalid_argument("density matrix trace outside [1 - leakage, 1]");
}

int bandwidth(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  for (int b = n - 1; b >= 0; --b) {
    for (int i = 0; i + b < n; ++i) {
      if (m(i, i + b) != cplx(0.0, 0.0) || m(i + b, i) != cplx(0.0, 0.0)) return b;
    }
  }
  return -1;
}

Applied apply_to_density(const FactoredOperator& v, const DensityMatrix& rho, int band) {
  const int d = rho.truncation();
  if (v.truncation() != d) throw std::invalid_argument("apply_to_density: truncation mismatch");
  if (band < 0) band = bandwidth(rho.mat);
  Applied out;
  out.rho.leakage = rho.leakage;
  out.rho.mat = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  if (band < 0) return out;
  const double scale2 = std::exp(2.0 * v.log_scale);
  const int s = v.shift;
  std::vector<cplx> unit;
  if (band > 0) {
    unit.resize(static_cast<std::size_t>(d) + 1);
    for (int n = 0; n <= d; ++n) unit[static_cast<std::size_t>(n)] = std::polar(1.0, v.arg[static_cast<std::size_t>(n)]);
  }
  for (int j = 0; j <= d; ++j) {
    const int tj = j + s;
    const double mj = v.mag[static_cast<std::size_t>(j)];
    if (tj < 0 || tj > d || mj == 0.0) continue;
    out.rho.mat(tj, tj) = cplx((mj * mj) * rho.mat(j, j).real(), 0.0);
    const int i0 = std::max(0, j - band);
    const int i1 = std::min(d, j + band);
    for (int i = i0; i <= i1; ++i) {
      const int ti = i + s;
      if (i == j || ti < 0 || ti > d) continue;
      const double mi = v.mag[static_cast<std::size_t>(i)];
      out.rho.mat(ti, tj) = (mi * mj) * (unit[static_cast<std::size_t>(i)] * rho.mat(i, j) *
                                         std::conj(unit[static_cast<std::size_t>(j)]));
    }
  }
  if (scale2 != 1.0) out.rho.mat *= scale2;
  out.weight = out.rho.mat.trace().real();
  return out;
}

std::array<double, 4> outcome_weights(const KrausSet& kraus, const Eigen::MatrixXcd& rho) {
  std::array<double, 4> w{};
  const int d = kraus.d;
  for (Outcome y : kOutcomes) {
    const auto& op = kraus[y];
    double acc = 0.0;
    for (int n = 0; n <= d; ++n) acc += op.weight(n) * rho(n, n).real();
    w[index_of(y)] = acc * std::exp(2.0 * op.log_scale);
  }
  return w;
}

double trace_norm(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("trace_norm: matrix must be square");
  if (a.size() == 0) return 0.0;
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-8) throw std::invalid_argument("trace_norm: matrix is not Hermitian");
  bool diagonal = true;
  for (Eigen::Index j = 0; j < a.cols() && diagonal; ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j && a(i, j) != cplx(0.0, 0.0)) {
        diagonal = false;
        break;
      }
  if (diagonal) return a.diagonal().real().cwiseAbs().sum();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

StochasticityReport verify_stochasticity(const KrausSet& kraus) {
  StochasticityReport rep;
  for (int n = 0; n <= kraus.d; ++n) {
    double total = 0.0;
    for (Outcome y : kOutcomes) total += kraus[y].weight(n);
    if (n < kraus.d) {
      rep.max_interior_deviation = std::max(rep.max_interior_deviation, std::abs(total - 1.0));
    } else {
      rep.boundary_defect = 1.0 - total;
    }
  }
  return rep;
}

}  // namespace maser
