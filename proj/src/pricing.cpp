#include "mcp/pricing.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace mcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool lex_less(const Point& a, const Point& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

__int128 cross_from(const Point& c, const Point& u, const Point& w) {
  return static_cast<__int128>(u.x - c.x) * (w.y - c.y) -
         static_cast<__int128>(u.y - c.y) * (w.x - c.x);
}

}  // namespace

DualRangeSummer::DualRangeSummer(const WedgeIndex& wi, const std::vector<double>& alpha) {
  prefix_.resize(static_cast<size_t>(wi.num_points()));
  for (int i = 0; i < wi.num_points(); ++i) {
    const int wc = wi.wedge_count(i);
    auto& pre = prefix_[static_cast<size_t>(i)];
    pre.assign(static_cast<size_t>(wc) + 1, 0.0);
    for (int s = 0; s < wc; ++s) {
      pre[static_cast<size_t>(s) + 1] =
          pre[static_cast<size_t>(s)] + alpha[static_cast<size_t>(wi.global_id(i, s))];
    }
  }
}

double DualRangeSummer::range_sum(const WedgeRange& r) const {
  const auto& pre = prefix_[static_cast<size_t>(r.owner)];
  const int wc = static_cast<int>(pre.size()) - 1;
  if (r.first + r.len <= wc) {
    return pre[static_cast<size_t>(r.first + r.len)] - pre[static_cast<size_t>(r.first)];
  }
  // circular wrap (interior points only)
  int tail = r.first + r.len - wc;
  return (pre[static_cast<size_t>(wc)] - pre[static_cast<size_t>(r.first)]) +
         pre[static_cast<size_t>(tail)];
}

Pricer::Pricer(const PointSet& ps, const WedgeIndex& wi, const EmptyTriangleTable& table)
    : ps_(ps), wi_(wi), table_(table), n_(ps.size()) {
  ring_.resize(static_cast<size_t>(n_));
  pos_.assign(static_cast<size_t>(n_), std::vector<int>(static_cast<size_t>(n_), -1));
  for (int k = 0; k < n_; ++k) {
    std::vector<int>& ring = ring_[static_cast<size_t>(k)];
    for (int j = 0; j < n_; ++j) {
      if (j != k && lex_less(ps[k], ps[j])) ring.push_back(j);
    }
    std::sort(ring.begin(), ring.end(), [&](int a, int b) {
      return cross_from(ps[k], ps[a], ps[b]) > 0;
    });
    for (size_t p = 0; p < ring.size(); ++p) {
      pos_[static_cast<size_t>(k)][static_cast<size_t>(ring[p])] = static_cast<int>(p);
    }
  }
  penalty_.assign(static_cast<size_t>(edge_count(n_)), 0.0);
  size_t scratch = static_cast<size_t>(std::max(0, n_ - 1)) * static_cast<size_t>(std::max(0, n_ - 1));
  b_.resize(scratch);
  bp_.resize(scratch);
}

void Pricer::set_forbidden_edges(const std::vector<EdgeId>& edges, const DualVector& duals) {
  clear_forbidden_edges();
  double mass = 1.0;
  for (double a : duals.alpha) mass += std::abs(a);
  for (double b : duals.beta) mass += std::abs(b);
  const double big = 10.0 * mass;
  for (const EdgeId& e : edges) {
    int idx = edge_index(e, n_);
    penalty_[static_cast<size_t>(idx)] = big;
    penalized_.push_back(idx);
  }
}

void Pricer::clear_forbidden_edges() {
  for (int idx : penalized_) penalty_[static_cast<size_t>(idx)] = 0.0;
  penalized_.clear();
}

double Pricer::forbidden_penalty(const EdgeId& e) const {
  return penalty_[static_cast<size_t>(edge_index(e, n_))];
}

double Pricer::triangle_delta(int k, int l, int m, const DualVector& duals) const {
  DualRangeSummer summer(wi_, duals.alpha);
  assert(table_.is_empty(k, l, m));
  int a = k, b = l, c = m;
  if (!ccw(ps_[a], ps_[b], ps_[c])) std::swap(b, c);
  double cover = 0.0;
  for (const WedgeRange& r : wi_.wedge_ranges_of_triangle(a, b, c, ps_)) {
    cover += summer.range_sum(r);
  }
  auto beta_hat = [&](int u, int v) {
    int idx = edge_index(EdgeId(u, v), n_);
    return duals.beta[static_cast<size_t>(idx)] - penalty_[static_cast<size_t>(idx)];
  };
  return -cover - beta_hat(k, l) - beta_hat(l, m) - beta_hat(k, m);
}

double Pricer::reduced_cost(const ConvexPolygon& p, const DualVector& duals) const {
  double rc = 1.0;
  for (int w : wi_.wedges_of_polygon(p.vertices)) {
    rc -= duals.alpha[static_cast<size_t>(w)];
  }
  for (const EdgeId& e : p.edges()) {
    rc -= duals.beta[static_cast<size_t>(edge_index(e, n_))];
  }
  return rc;
}

template <typename DeltaFn, typename RefundFn>
PricingResult Pricer::run(const DeltaFn& delta, const RefundFn& closing_refund,
                          const std::function<bool(const std::vector<int>&)>& is_known,
                          int column_cap, double threshold) {
  PricingResult out;
  out.min_reduced_cost = kInf;

  std::vector<PricedColumn> candidates;
  std::vector<int> pplus, pminus;

  for (int k = 0; k < n_; ++k) {
    const std::vector<int>& ring = ring_[static_cast<size_t>(k)];
    const std::vector<int>& pos = pos_[static_cast<size_t>(k)];
    const int s = static_cast<int>(ring.size());
    if (s < 2) continue;
    auto B = [&](int a, int b) -> double& {
      return b_[static_cast<size_t>(a) * static_cast<size_t>(s) + static_cast<size_t>(b)];
    };
    auto BP = [&](int a, int b) -> int& {
      return bp_[static_cast<size_t>(a) * static_cast<size_t>(s) + static_cast<size_t>(b)];
    };
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) B(a, b) = kInf;

    // per (k,l) best finished state
    std::vector<std::pair<double, int>> best_m(static_cast<size_t>(s), {kInf, -1});

    const std::vector<int>& lring = ring;  // alias for clarity below
    (void)lring;

    for (int lp = 0; lp < s; ++lp) {
      const int l = ring[static_cast<size_t>(lp)];

      // CCW sweep around l starting at the ray l->k: candidates on the left
      // of l->k can precede l in a fan, those on the right can succeed it.
      pplus.clear();
      pminus.clear();
      const std::vector<int>& around_l = wi_.ccw_neighbors(l);
      const int nl = static_cast<int>(around_l.size());
      const int start = wi_.position(l, k);
      for (int step = 1; step < nl; ++step) {
        int j = around_l[static_cast<size_t>((start + step) % nl)];
        int jp = pos[static_cast<size_t>(j)];
        if (jp < 0) continue;
        __int128 side = cross_from(ps_[l], ps_[k], ps_[j]);
        assert(side != 0);
        if (side > 0) {
          assert(jp < lp);
          pplus.push_back(jp);
        } else if (jp > lp) {
          pminus.push_back(jp);
        }
      }

      const double refund = closing_refund(k, l);
      double best_o = kInf;
      int best_o_arg = -1;
      size_t oi = 0;
      for (int mp : pminus) {
        const int m = ring[static_cast<size_t>(mp)];
        while (oi < pplus.size() &&
               ccw(ps_[ring[static_cast<size_t>(pplus[oi])]], ps_[l], ps_[m])) {
          double v = B(pplus[oi], lp);
          if (v < best_o) {
            best_o = v;
            best_o_arg = pplus[oi];
          }
          ++oi;
        }
        if (!table_.is_empty(k, l, m)) continue;
        double d = delta(k, l, m);
        double joined = best_o + refund;
        double value;
        int back;
        if (joined < 0.0) {
          value = d + joined;
          back = best_o_arg;
        } else {
          value = d;
          back = -1;
        }
        B(lp, mp) = value;
        BP(lp, mp) = back;
        if (value < best_m[static_cast<size_t>(lp)].first) {
          best_m[static_cast<size_t>(lp)] = {value, mp};
        }
      }
    }

    for (int lp = 0; lp < s; ++lp) {
      auto [value, mp] = best_m[static_cast<size_t>(lp)];
      if (mp < 0) continue;
      double rc = 1.0 + value;
      out.min_reduced_cost = std::min(out.min_reduced_cost, rc);
      if (rc >= threshold) continue;
      // reconstruct the fan chain via backpointers
      std::vector<int> rev;
      int a = lp, b = mp;
      rev.push_back(ring[static_cast<size_t>(b)]);
      rev.push_back(ring[static_cast<size_t>(a)]);
      while (BP(a, b) >= 0) {
        int o = BP(a, b);
        rev.push_back(ring[static_cast<size_t>(o)]);
        b = a;
        a = o;
      }
      rev.push_back(k);
      std::reverse(rev.begin(), rev.end());
      ConvexPolygon poly = canonical_key(std::move(rev), ps_);
      if (is_known && is_known(poly.vertices)) continue;
      candidates.push_back(PricedColumn{std::move(poly), rc});
    }
  }

  if (out.min_reduced_cost == kInf) out.min_reduced_cost = 1.0;

  std::sort(candidates.begin(), candidates.end(), [](const PricedColumn& a, const PricedColumn& b) {
    if (a.reduced_cost != b.reduced_cost) return a.reduced_cost < b.reduced_cost;
    return a.polygon.vertices < b.polygon.vertices;
  });
  if (static_cast<int>(candidates.size()) > column_cap) {
    candidates.resize(static_cast<size_t>(column_cap));
  }
  out.columns = std::move(candidates);
  return out;
}

PricingResult Pricer::price(const DualVector& duals,
                            const std::function<bool(const std::vector<int>&)>& is_known,
                            int column_cap, double threshold) {
  DualRangeSummer summer(wi_, duals.alpha);
  auto beta_hat = [this, &duals](int u, int v) {
    int idx = edge_index(EdgeId(u, v), n_);
    return duals.beta[static_cast<size_t>(idx)] - penalty_[static_cast<size_t>(idx)];
  };
  auto delta = [&, this](int k, int l, int m) {
    double cover = 0.0;
    for (const WedgeRange& r : wi_.wedge_ranges_of_triangle(k, l, m, ps_)) {
      cover += summer.range_sum(r);
    }
    return -cover - beta_hat(k, l) - beta_hat(l, m) - beta_hat(k, m);
  };
  // joining across the shared edge (k,l) cancels that edge's contribution
  // in both adjoining triangles
  auto refund = [&](int k, int l) { return 2.0 * beta_hat(k, l); };
  return run(delta, refund, is_known, column_cap, threshold);
}

PricingResult Pricer::price_with_surrogate(const std::function<double(int, int, int)>& delta,
                                           int column_cap, double threshold) {
  auto refund = [](int, int) { return 0.0; };
  return run(delta, refund, {}, column_cap, threshold);
}

}  // namespace mcp
