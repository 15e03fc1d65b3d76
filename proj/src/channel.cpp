#include "maser/channel.hpp"

#include <cmath>

#include "maser/birth_death.hpp"
#include "maser/errors.hpp"

namespace maser {

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& kraus) {
  const int band = bandwidth(rho.mat);
  DensityMatrix out;
  out.mat = Eigen::MatrixXcd::Zero(rho.mat.rows(), rho.mat.cols());
  for (Outcome y : kOutcomes) out.mat += apply_to_density(kraus[y], rho, band).rho.mat;
  out.leakage = rho.leakage + std::max(0.0, rho.trace() - out.trace());
  return out;
}

DensityMatrix invariant_state(double theta, int d) {
  const GibbsMeasure g = gibbs_measure(theta, d);
  Eigen::VectorXd w(d + 1);
  for (int k = 0; k <= d; ++k) w(k) = g.weights[static_cast<std::size_t>(k)];
  return DensityMatrix::diagonal(w);
}

ChannelReport iterate_channel(const DensityMatrix& rho0, const KrausSet& kraus, const DensityMatrix& target,
                              double tol, std::int64_t t_max, std::int64_t check_every) {
  if (check_every < 1) check_every = 1;
  ChannelReport rep;
  DensityMatrix rho = rho0;
  auto check = [&](std::int64_t t) {
    const double dist = trace_norm(rho.mat - target.mat);
    rep.distances.push_back(dist);
    rep.times.push_back(t);
    return dist <= tol;
  };
  rep.converged = check(0);
  for (std::int64_t t = 1; t <= t_max && !rep.converged; ++t) {
    rho = apply_channel(rho, kraus);
    rep.iterations = t;
    if (t % check_every == 0 || t == t_max) rep.converged = check(t);
  }
  rep.final_state = std::move(rho);
  return rep;
}

DensityMatrix resonant_limit(const DensityMatrix& rho0, const SectorPartition& part, double theta) {
  const int d = rho0.truncation();
  if (part.n_max != d) throw std::invalid_argument("resonant_limit: partition does not match truncation");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d + 1);
  for (const Sector& s : part.sectors) {
    double mass = 0.0;
    for (long n = s.first; n <= s.last; ++n) mass += rho0.mat(n, n).real();
    if (mass == 0.0) continue;
    if (s.open_ended && !(theta > 0.0))
      throw NoInvariantMeasure("theta <= 0 with an infinite Rabi sector: no local Gibbs state");
    // Local Gibbs weights relative to the sector bottom to avoid underflow.
    double z = 0.0;
    for (long n = s.first; n <= s.last; ++n) z += std::exp(-theta * static_cast<double>(n - s.first));
    for (long n = s.first; n <= s.last; ++n)
      out(n) = mass * std::exp(-theta * static_cast<double>(n - s.first)) / z;
  }
  DensityMatrix r;
  r.mat = out.cast<cplx>().asDiagonal();
  return r;
}

}  // namespace maser
