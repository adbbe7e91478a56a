#include "scatter/emd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "scatter/error.hpp"

namespace scatter {

namespace {

constexpr double kMassEpsilon = 1e-15;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  std::size_t cell;
  double mass;
};

std::vector<Node> positive_cells(std::span<const double> masses, double total) {
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] > 0.0) nodes.push_back({i, masses[i] / total});
  }
  return nodes;
}

}  // namespace

double min_cost_transport(std::span<const double> supply, std::span<const double> demand,
                          const std::function<double(std::size_t, std::size_t)>& cost) {
  for (const auto span : {supply, demand}) {
    for (const double v : span) {
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "transport masses must be finite and non-negative");
      }
    }
  }
  const double supply_total = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double demand_total = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (supply_total <= 0.0 || demand_total <= 0.0) {
    throw Error(ErrorCode::UndefinedDistribution, "transport needs positive mass on both sides");
  }

  auto sources = positive_cells(supply, supply_total);
  auto sinks = positive_cells(demand, demand_total);
  const std::size_t n = sources.size();
  const std::size_t m = sinks.size();

  std::vector<double> c(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) c[i * m + j] = cost(sources[i].cell, sinks[j].cell);
  }
  std::vector<double> flow(n * m, 0.0);

  // Node layout: 0..n-1 sources, n..n+m-1 sinks, n+m super source, n+m+1 super sink.
  const std::size_t super_source = n + m;
  const std::size_t super_sink = n + m + 1;
  const std::size_t node_count = n + m + 2;
  std::vector<double> potential(node_count, 0.0);
  std::vector<double> dist(node_count);
  std::vector<std::size_t> parent(node_count);
  std::vector<char> done(node_count);

  auto any_left = [](const std::vector<Node>& nodes) {
    return std::any_of(nodes.begin(), nodes.end(), [](const Node& v) { return v.mass > kMassEpsilon; });
  };

  double total_cost = 0.0;
  const std::size_t max_rounds = 64 * node_count * node_count;
  for (std::size_t round = 0; any_left(sources) && any_left(sinks); ++round) {
    if (round > max_rounds) throw Error(ErrorCode::Internal, "transport solver failed to converge");

    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    dist[super_source] = 0.0;

    auto relax = [&](std::size_t from, std::size_t to, double reduced) {
      const double d = dist[from] + std::max(reduced, 0.0);
      if (d < dist[to]) {
        dist[to] = d;
        parent[to] = from;
      }
    };

    // Dense Dijkstra on reduced costs.
    for (;;) {
      std::size_t u = node_count;
      double best = kInf;
      for (std::size_t v = 0; v < node_count; ++v) {
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = v;
        }
      }
      if (u == node_count || u == super_sink) break;
      done[u] = 1;
      if (u == super_source) {
        for (std::size_t i = 0; i < n; ++i) {
          if (sources[i].mass > kMassEpsilon) relax(u, i, potential[u] - potential[i]);
        }
      } else if (u < n) {
        for (std::size_t j = 0; j < m; ++j) relax(u, n + j, c[u * m + j] + potential[u] - potential[n + j]);
      } else {
        const std::size_t j = u - n;
        for (std::size_t i = 0; i < n; ++i) {
          if (flow[i * m + j] > kMassEpsilon) relax(u, i, -c[i * m + j] + potential[u] - potential[i]);
        }
        if (sinks[j].mass > kMassEpsilon) relax(u, super_sink, potential[u] - potential[super_sink]);
      }
    }
    if (!(dist[super_sink] < kInf)) break;

    const double reach = dist[super_sink];
    for (std::size_t v = 0; v < node_count; ++v) potential[v] += std::min(dist[v], reach);

    // Bottleneck along the path super_sink <- sink <- ... <- source <- super_source.
    double push = kInf;
    for (std::size_t v = super_sink; v != super_source; v = parent[v]) {
      const std::size_t u = parent[v];
      if (u == super_source) {
        push = std::min(push, sources[v].mass);
      } else if (v == super_sink) {
        push = std::min(push, sinks[u - n].mass);
      } else if (u >= n && v < n) {
        push = std::min(push, flow[v * m + (u - n)]);
      }
    }
    for (std::size_t v = super_sink; v != super_source; v = parent[v]) {
      const std::size_t u = parent[v];
      if (u == super_source) {
        sources[v].mass -= push;
      } else if (v == super_sink) {
        sinks[u - n].mass -= push;
      } else if (u < n) {
        flow[u * m + (v - n)] += push;
        total_cost += push * c[u * m + (v - n)];
      } else {
        flow[v * m + (u - n)] -= push;
        total_cost -= push * c[v * m + (u - n)];
      }
    }
  }
  return total_cost;
}

double emd_exact(const HeatmapLevel& a, const HeatmapLevel& b) {
  if (a.kind != HeatmapKind::Density || b.kind != HeatmapKind::Density) {
    throw Error(ErrorCode::InvalidArgument, "emd_exact expects density levels");
  }
  if (a.resolution != b.resolution || a.cells.size() != b.cells.size()) {
    throw Error(ErrorCode::IncompatibleLevel, "levels differ in resolution");
  }
  if (a.resolution > kEmdMaxResolution) {
    throw Error(ErrorCode::OracleScale, "exact EMD is limited to resolution " +
                                            std::to_string(kEmdMaxResolution));
  }
  const std::size_t r = a.resolution;
  const double scale = static_cast<double>(r);
  return min_cost_transport(a.cells, b.cells, [r, scale](std::size_t from, std::size_t to) {
    const double di = static_cast<double>(from / r) - static_cast<double>(to / r);
    const double dj = static_cast<double>(from % r) - static_cast<double>(to % r);
    return std::sqrt(di * di + dj * dj) / scale;
  });
}

}  // namespace scatter
