#include "maser/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace maser {

namespace {

std::vector<std::int64_t> to_integer_masses(const std::vector<double>& w, std::int64_t scale) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<std::int64_t> out(w.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double exact = w[i] / total * static_cast<double>(scale);
    out[i] = static_cast<std::int64_t>(std::floor(exact));
    assigned += out[i];
    remainders.emplace_back(exact - static_cast<double>(out[i]), i);
  }
  std::sort(remainders.begin(), remainders.end(), [](auto& a, auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (std::size_t r = 0; assigned < scale; ++r, ++assigned) ++out[remainders[r % remainders.size()].second];
  return out;
}

struct Arc {
  int i;
  int j;
  std::int64_t flow;
};

class NetworkSimplex {
 public:
  NetworkSimplex(std::vector<std::int64_t> a, std::vector<std::int64_t> b, const Eigen::MatrixXd& c)
      : m_(static_cast<int>(a.size())), n_(static_cast<int>(b.size())), cost_(c), supply_(std::move(a)),
        demand_(std::move(b)) {
    in_basis_.assign(static_cast<std::size_t>(m_) * n_, -1);
    cost_scale_ = std::max(1.0, c.cwiseAbs().maxCoeff());
  }

  std::int64_t run() {
    northwest_corner();
    std::int64_t pivots = 0;
    int degenerate_run = 0;
    const std::int64_t limit = 50LL * (m_ + n_) * (m_ + n_) + 1000;
    for (;;) {
      compute_potentials();
      const bool bland = degenerate_run > 2 * (m_ + n_);
      int ei = -1;
      int ej = -1;
      if (!price(bland, ei, ej)) break;
      const bool degenerate = pivot(ei, ej);
      degenerate_run = degenerate ? degenerate_run + 1 : 0;
      if (++pivots > limit) throw std::runtime_error("network simplex: pivot limit exceeded");
    }
    return pivots;
  }

  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  std::size_t cell(int i, int j) const { return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j); }

  void add_arc(int i, int j, std::int64_t f) {
    in_basis_[cell(i, j)] = static_cast<int>(arcs_.size());
    arcs_.push_back({i, j, f});
  }

  void northwest_corner() {
    std::vector<std::int64_t> a = supply_, b = demand_;
    int i = 0, j = 0;
    while (true) {
      const std::int64_t f = std::min(a[i], b[j]);
      add_arc(i, j, f);
      a[i] -= f;
      b[j] -= f;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (i == m_ - 1) {
        ++j;
      } else if (j == n_ - 1) {
        ++i;
      } else if (a[i] == 0) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Node ids: sources 0..m-1, sinks m..m+n-1. Root is source 0 with u = 0.
  void compute_potentials() {
    const int nodes = m_ + n_;
    adjacency_.assign(nodes, {});
    for (int k = 0; k < static_cast<int>(arcs_.size()); ++k) {
      adjacency_[arcs_[k].i].push_back(k);
      adjacency_[m_ + arcs_[k].j].push_back(k);
    }
    parent_.assign(nodes, -1);
    parent_arc_.assign(nodes, -1);
    depth_.assign(nodes, -1);
    pot_.assign(nodes, 0.0);
    std::vector<int> queue{0};
    depth_[0] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int u = queue[h];
      for (int k : adjacency_[u]) {
        const Arc& arc = arcs_[k];
        const int src = arc.i;
        const int snk = m_ + arc.j;
        const int other = (u == src) ? snk : src;
        if (depth_[other] >= 0) continue;
        depth_[other] = depth_[u] + 1;
        parent_[other] = u;
        parent_arc_[other] = k;
        // u_i + v_j = c_ij
        pot_[other] = cost_(arc.i, arc.j) - pot_[u];
        queue.push_back(other);
      }
    }
    if (static_cast<int>(queue.size()) != nodes) throw std::logic_error("network simplex: basis is not a spanning tree");
  }

  bool price(bool bland, int& ei, int& ej) const {
    const double eps = 1e-13 * cost_scale_;
    double best = -eps;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[cell(i, j)] >= 0) continue;
        const double r = cost_(i, j) - pot_[i] - pot_[m_ + j];
        if (r < best) {
          ei = i;
          ej = j;
          if (bland) return true;
          best = r;
        }
      }
    }
    return ei >= 0;
  }

  // Returns true for a degenerate pivot.
  bool pivot(int ei, int ej) {
    int p = m_ + ej;  // walk from the sink end
    int q = ei;
    std::vector<int> from_sink, from_source;
    while (depth_[p] > depth_[q]) {
      from_sink.push_back(parent_arc_[p]);
      p = parent_[p];
    }
    while (depth_[q] > depth_[p]) {
      from_source.push_back(parent_arc_[q]);
      q = parent_[q];
    }
    while (p != q) {
      from_sink.push_back(parent_arc_[p]);
      p = parent_[p];
      from_source.push_back(parent_arc_[q]);
      q = parent_[q];
    }
    std::vector<int> path = std::move(from_sink);
    path.insert(path.end(), from_source.rbegin(), from_source.rend());

    // Along sink -> source the arcs alternate -, +, -, ..., -.
    std::int64_t theta = std::numeric_limits<std::int64_t>::max();
    int leave = -1;
    std::size_t leave_cell = 0;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const Arc& arc = arcs_[path[k]];
      const std::size_t c = cell(arc.i, arc.j);
      if (arc.flow < theta || (arc.flow == theta && c < leave_cell)) {
        theta = arc.flow;
        leave = path[k];
        leave_cell = c;
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) arcs_[path[k]].flow += (k % 2 == 0) ? -theta : theta;

    Arc& out = arcs_[leave];
    in_basis_[cell(out.i, out.j)] = -1;
    out = {ei, ej, theta};
    in_basis_[cell(ei, ej)] = leave;
    return theta == 0;
  }

  int m_;
  int n_;
  const Eigen::MatrixXd& cost_;
  double cost_scale_ = 1.0;
  std::vector<std::int64_t> supply_;
  std::vector<std::int64_t> demand_;
  std::vector<Arc> arcs_;
  std::vector<int> in_basis_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> parent_;
  std::vector<int> parent_arc_;
  std::vector<int> depth_;
  std::vector<double> pot_;
};

}  // namespace

TransportResult solve_transport(std::span<const double> supply, std::span<const double> demand,
                                const Eigen::MatrixXd& cost, std::int64_t scale) {
  if (cost.rows() != static_cast<Eigen::Index>(supply.size()) || cost.cols() != static_cast<Eigen::Index>(demand.size()))
    throw std::invalid_argument("solve_transport: cost matrix shape mismatch");
  const double sa = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double sb = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::abs(sa - sb) > 1e-9) throw std::invalid_argument("solve_transport: supply and demand totals differ");
  if (!(sa > 0.0)) throw std::invalid_argument("solve_transport: empty measures");
  for (double v : supply)
    if (v < 0.0) throw std::invalid_argument("solve_transport: negative mass");
  for (double v : demand)
    if (v < 0.0) throw std::invalid_argument("solve_transport: negative mass");

  // Drop empty atoms; the tree basis needs positive masses on every node.
  std::vector<int> rows, cols;
  std::vector<double> a, b;
  for (std::size_t i = 0; i < supply.size(); ++i)
    if (supply[i] > 0.0) rows.push_back(static_cast<int>(i)), a.push_back(supply[i]);
  for (std::size_t j = 0; j < demand.size(); ++j)
    if (demand[j] > 0.0) cols.push_back(static_cast<int>(j)), b.push_back(demand[j]);
  Eigen::MatrixXd c(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) c(i, j) = cost(rows[i], cols[j]);

  const auto ia = to_integer_masses(a, scale);
  const auto ib = to_integer_masses(b, scale);
  std::vector<std::int64_t> ia_pos = ia, ib_pos = ib;
  NetworkSimplex ns(ia_pos, ib_pos, c);
  TransportResult res;
  res.pivots = ns.run();
  const double total = 0.5 * (sa + sb);
  long double acc = 0.0L;
  for (const Arc& arc : ns.arcs()) {
    if (arc.flow == 0) continue;
    const double mass = static_cast<double>(arc.flow) / static_cast<double>(scale) * total;
    res.flows.push_back({rows[arc.i], cols[arc.j], mass});
    acc += static_cast<long double>(arc.flow) * c(arc.i, arc.j);
  }
  res.cost = static_cast<double>(acc / static_cast<long double>(scale)) * total;
  return res;
}

}  // namespace maser
