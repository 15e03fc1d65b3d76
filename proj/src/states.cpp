#include "maser/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace maser {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

int to_level(const std::string& s, int d) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size() || v < 0) throw std::invalid_argument("bad level '" + s + "'");
  if (v > d) throw std::invalid_argument("level " + s + " exceeds truncation");
  return v;
}

}  // namespace

DensityMatrix thermal_state(double theta, int d) {
  if (!(theta > 0.0)) throw std::invalid_argument("thermal state needs theta > 0");
  Eigen::VectorXd w(d + 1);
  for (int k = 0; k <= d; ++k) w(k) = std::exp(-theta * k);
  return DensityMatrix::diagonal(w);
}

DensityMatrix make_initial_state(const std::string& spec, int d) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("initial state spec needs 'kind:args': " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  try {
    if (kind == "fock") return DensityMatrix::fock(d, to_level(args, d));
    if (kind == "thermal") return thermal_state(to_double(args), d);
    if (kind == "mixture") {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
      for (const auto& item : split(args, ',')) {
        const auto kv = split(item, ':');
        if (kv.size() != 2) throw std::invalid_argument("mixture entries are K:W");
        const double weight = to_double(kv[1]);
        if (weight < 0.0) throw std::invalid_argument("negative mixture weight");
        w(to_level(kv[0], d)) += weight;
      }
      return DensityMatrix::diagonal(w);
    }
    if (kind == "coherentlike") {
      const auto amps = split(args, ',');
      if (static_cast<int>(amps.size()) > d + 1) throw std::invalid_argument("more amplitudes than levels");
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d + 1);
      for (std::size_t n = 0; n < amps.size(); ++n) psi(static_cast<Eigen::Index>(n)) = to_double(amps[n]);
      return DensityMatrix::pure(psi);
    }
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("number out of range in initial state spec: " + spec);
  }
  throw std::invalid_argument("unknown initial state kind '" + kind + "'");
}

int effective_support(const DensityMatrix& rho, double threshold) {
  for (int n = rho.truncation(); n >= 0; --n)
    if (rho.mat(n, n).real() > threshold) return n;
  return -1;
}

}  // namespace maser
