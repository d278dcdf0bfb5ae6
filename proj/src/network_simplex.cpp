#include "network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wass_smooth/error.hpp"

namespace wass_smooth::detail {

namespace {

enum Dir : char { up, down };  // up: arc points from the node to its parent

class Simplex {
 public:
  Simplex(std::span<const double> a, std::span<const double> b, std::span<const double> cost)
      : N_(a.size()), M_(b.size()), n_(N_ + M_ + 1), root_(N_ + M_), cost_(cost) {
    real_arcs_ = N_ * M_;
    arcs_ = real_arcs_ + N_ + M_;
    max_c_ = 0.0;
    for (double c : cost_) max_c_ = std::max(max_c_, c);
    art_cost_ = (static_cast<double>(n_) + 1.0) * (max_c_ > 0.0 ? max_c_ : 1.0);
    eps_ = 1e-14 * max_c_;

    flow_.assign(arcs_, 0.0);
    art_up_.assign(N_ + M_, 0);
    adj_.assign(n_, {});
    for (std::size_t v = 0; v < N_ + M_; ++v) {
      const double s = v < N_ ? a[v] : -b[v - N_];
      art_up_[v] = s > 0.0;
      flow_[real_arcs_ + v] = std::abs(s);
      adj_[v].push_back(real_arcs_ + v);
      adj_[root_].push_back(real_arcs_ + v);
    }
    parent_.assign(n_, root_);
    pred_.assign(n_, 0);
    dir_.assign(n_, down);
    pi_.assign(n_, 0.0L);
    stamp_.assign(n_, 0);
    hang(root_, root_, arcs_);
  }

  void run() {
    const long cap = 50L * static_cast<long>(arcs_) + 1'000'000L;
    block_ = std::max<std::size_t>(10, static_cast<std::size_t>(std::sqrt(static_cast<double>(arcs_))));
    while (find_entering()) {
      pivot();
      if (++pivots_ > cap) fail(ErrorKind::resource, "network simplex exceeded its pivot budget");
    }
  }

  TransportSolution solution() const {
    TransportSolution sol;
    sol.pivots = pivots_;
    long double total = 0.0L;
    for (std::size_t v = 0; v < N_ + M_; ++v) {
      const std::size_t e = pred_[v];
      if (e < real_arcs_ && flow_[e] > 0.0) {
        sol.plan.push_back({e / M_, e % M_, flow_[e]});
        total += static_cast<long double>(flow_[e]) * cost_[e];
      }
    }
    std::sort(sol.plan.begin(), sol.plan.end(),
              [](const auto& x, const auto& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; });
    sol.cost = static_cast<double>(total);
    sol.f.resize(N_);
    for (std::size_t i = 0; i < N_; ++i) sol.f[i] = static_cast<double>(-pi_[i]);
    sol.g.assign(M_, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < N_; ++i) {
      for (std::size_t j = 0; j < M_; ++j) sol.g[j] = std::min(sol.g[j], cost_[i * M_ + j] - sol.f[i]);
    }
    return sol;
  }

 private:
  std::size_t source(std::size_t e) const {
    if (e < real_arcs_) return e / M_;
    const std::size_t v = e - real_arcs_;
    return art_up_[v] ? v : root_;
  }
  std::size_t target(std::size_t e) const {
    if (e < real_arcs_) return N_ + e % M_;
    const std::size_t v = e - real_arcs_;
    return art_up_[v] ? root_ : v;
  }
  double arc_cost(std::size_t e) const { return e < real_arcs_ ? cost_[e] : art_cost_; }
  long double reduced(std::size_t e) const {
    return arc_cost(e) + pi_[source(e)] - pi_[target(e)];
  }

  // Sets parent, pred, dir and pi for the tree component of u, entered from
  // `from` through arc e (e == arcs_ for the root).
  void hang(std::size_t u, std::size_t from, std::size_t e) {
    queue_.clear();
    parent_[u] = from;
    pred_[u] = e;
    if (e == arcs_) {
      pi_[u] = 0.0L;
    } else {
      dir_[u] = source(e) == u ? up : down;
      pi_[u] = dir_[u] == up ? pi_[from] - arc_cost(e) : pi_[from] + arc_cost(e);
    }
    queue_.push_back(u);
    for (std::size_t h = 0; h < queue_.size(); ++h) {
      const std::size_t v = queue_[h];
      for (std::size_t f : adj_[v]) {
        if (f == pred_[v]) continue;
        const std::size_t w = source(f) == v ? target(f) : source(f);
        parent_[w] = v;
        pred_[w] = f;
        dir_[w] = source(f) == w ? up : down;
        pi_[w] = dir_[w] == up ? pi_[v] - arc_cost(f) : pi_[v] + arc_cost(f);
        queue_.push_back(w);
      }
    }
  }

  void unlink(std::size_t v, std::size_t e) {
    auto& list = adj_[v];
    *std::find(list.begin(), list.end(), e) = list.back();
    list.pop_back();
  }

  bool find_entering() {
    long double best = 0.0L;
    std::size_t best_arc = arcs_;
    std::size_t count = block_;
    std::size_t e = next_;
    std::size_t i = e < real_arcs_ ? e / M_ : 0;
    std::size_t j = e < real_arcs_ ? e % M_ : 0;
    for (std::size_t k = 0; k < arcs_; ++k) {
      const long double rc = e < real_arcs_ ? cost_[e] + pi_[i] - pi_[N_ + j] : reduced(e);
      if (rc < best) {
        best = rc;
        best_arc = e;
      }
      if (--count == 0) {
        if (best < -eps_) {
          next_ = e + 1 < arcs_ ? e + 1 : 0;
          in_ = best_arc;
          return true;
        }
        count = block_;
      }
      if (++e == arcs_) {
        e = i = j = 0;
      } else if (e < real_arcs_ && ++j == M_) {
        j = 0;
        ++i;
      }
    }
    if (best < -eps_) {
      in_ = best_arc;
      next_ = best_arc + 1 < arcs_ ? best_arc + 1 : 0;
      return true;
    }
    return false;
  }

  void pivot() {
    const std::size_t first = source(in_);
    const std::size_t second = target(in_);
    ++stamp_now_;
    for (std::size_t x = first;; x = parent_[x]) {
      stamp_[x] = stamp_now_;
      if (x == root_) break;
    }
    std::size_t join = second;
    while (stamp_[join] != stamp_now_) join = parent_[join];

    constexpr double inf = std::numeric_limits<double>::infinity();
    double delta = inf;
    std::size_t out_node = n_;
    bool out_on_first = true;
    for (std::size_t u = first; u != join; u = parent_[u]) {
      const double d = dir_[u] == up ? flow_[pred_[u]] : inf;
      if (d < delta) {
        delta = d;
        out_node = u;
      }
    }
    for (std::size_t u = second; u != join; u = parent_[u]) {
      const double d = dir_[u] == down ? flow_[pred_[u]] : inf;
      if (d <= delta) {
        delta = d;
        out_node = u;
        out_on_first = false;
      }
    }
    if (out_node == n_) fail(ErrorKind::resource, "unbounded transport cycle");

    if (delta > 0.0) {
      for (std::size_t u = first; u != join; u = parent_[u]) {
        flow_[pred_[u]] += dir_[u] == up ? -delta : delta;
      }
      for (std::size_t u = second; u != join; u = parent_[u]) {
        flow_[pred_[u]] += dir_[u] == up ? delta : -delta;
      }
    }
    const std::size_t out_arc = pred_[out_node];
    flow_[out_arc] = 0.0;
    flow_[in_] = delta;
    unlink(source(out_arc), out_arc);
    unlink(target(out_arc), out_arc);
    adj_[first].push_back(in_);
    adj_[second].push_back(in_);
    // The cut-off subtree of out_node hangs from the entering arc.
    if (out_on_first) {
      hang(first, second, in_);
    } else {
      hang(second, first, in_);
    }
  }

  std::size_t N_, M_, n_, root_;
  std::span<const double> cost_;
  std::size_t real_arcs_ = 0, arcs_ = 0;
  double max_c_ = 0.0, art_cost_ = 0.0, eps_ = 0.0;
  std::vector<double> flow_;
  std::vector<char> art_up_;
  std::vector<std::vector<std::size_t>> adj_;  // tree arcs at each node
  std::vector<std::size_t> parent_, pred_;
  std::vector<char> dir_;
  std::vector<long double> pi_;
  std::vector<std::size_t> queue_;
  std::vector<unsigned long> stamp_;
  unsigned long stamp_now_ = 0;
  std::size_t block_ = 10, next_ = 0, in_ = 0;
  long pivots_ = 0;
};

}  // namespace

TransportSolution solve_transport(std::span<const double> a, std::span<const double> b,
                                  std::span<const double> cost) {
  if (a.empty() || b.empty() || cost.size() != a.size() * b.size()) {
    fail(ErrorKind::dimension, "transport problem has inconsistent sizes");
  }
  Simplex s(a, b, cost);
  s.run();
  return s.solution();
}

}  // namespace wass_smooth::detail
