#include "flda/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "flda/ftree.hpp"
#include "flda/rng.hpp"
#include "flda/samplers.hpp"

namespace flda {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

template <typename F>
double time_ns_per_op(int ops, F&& body) {
  const auto start = Clock::now();
  body();
  const auto ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
          .count();
  return static_cast<double>(ns) / ops;
}

std::vector<double> power_law_weights(int dim, RngStream& rng) {
  std::vector<double> w(dim);
  for (double& x : w) {
    // Pareto(1, 1.5) tail mimics the skew of real topic counts.
    const double u = rng.uniform01();
    x = std::pow(1.0 - u, -1.0 / 1.5);
  }
  return w;
}

// The optimizer must believe sampled indices matter.
volatile std::int64_t g_sink = 0;

}  // namespace

std::vector<BenchRecord> bench_samplers(const BenchConfig& config) {
  std::vector<BenchRecord> out;
  RngStream weight_rng(config.seed, 0);

  for (int dim : config.dimensions) {
    const std::vector<double> weights = power_law_weights(dim, weight_rng);
    double total = 0.0;
    for (double x : weights) total += x;

    BenchRecord ls{"lsearch", dim, 0, 0, 0};
    BenchRecord bs{"bsearch", dim, 0, 0, 0};
    BenchRecord al{"alias", dim, 0, 0, 0};
    BenchRecord ft{"ftree", dim, 0, 0, 0};

    std::vector<double> ls_b, ls_s, ls_u, bs_b, bs_s, bs_u, al_b, al_s, al_u,
        ft_b, ft_s, ft_u;

    for (int trial = -1; trial < config.trials; ++trial) {  // -1 = warm-up
      RngStream rng(config.seed, 100 + trial);
      const int S = config.samples_per_trial;
      const int U = config.updates_per_trial;

      std::vector<double> us(S), deltas(U);
      std::vector<int> targets(U);
      for (double& u : us) u = rng.uniform(total);
      for (int i = 0; i < U; ++i) {
        targets[i] = static_cast<int>(rng.uniform_below(dim));
        deltas[i] = rng.uniform01() * 1e-9;  // keep totals effectively fixed
      }

      // LSearch: structure is just the running total.
      const double t_ls_b = time_ns_per_op(1, [&] {
        double c = 0.0;
        for (double x : weights) c += x;
        g_sink = g_sink + static_cast<std::int64_t>(c);
      });
      const double t_ls_s = time_ns_per_op(S, [&] {
        for (int i = 0; i < S; ++i)
          g_sink = g_sink + lsearch_sample(weights, us[i]);
      });
      const double t_ls_u = time_ns_per_op(U, [&] {
        double c = total;
        for (int i = 0; i < U; ++i) c += deltas[i];
        g_sink = g_sink + static_cast<std::int64_t>(c);
      });

      // BSearch: cumulative array; an update is a full rebuild.
      Cdf cdf = cumsum_build(std::span<const double>(weights));
      const double t_bs_b = time_ns_per_op(1, [&] {
        cdf = cumsum_build(std::span<const double>(weights));
        g_sink = g_sink + static_cast<std::int64_t>(cdf.total());
      });
      const double t_bs_s = time_ns_per_op(S, [&] {
        for (int i = 0; i < S; ++i) g_sink = g_sink + bsearch_sample(cdf, us[i]);
      });
      const double t_bs_u = time_ns_per_op(U, [&] {
        for (int i = 0; i < U; ++i) {
          cdf = cumsum_build(std::span<const double>(weights));
          g_sink = g_sink + static_cast<std::int64_t>(cdf.cum[targets[i]]);
        }
      });

      // Alias: O(1) generation, rebuild on update.
      AliasTable table = alias_build(weights);
      const double t_al_b = time_ns_per_op(1, [&] {
        table = alias_build(weights);
        g_sink = g_sink + table.alias[0];
      });
      const double t_al_s = time_ns_per_op(S, [&] {
        const double scale = dim / total;
        for (int i = 0; i < S; ++i)
          g_sink = g_sink + alias_sample(table, us[i] * scale);
      });
      const int alias_rebuilds = std::max(1, U / 50);  // full rebuilds are slow
      const double t_al_u = time_ns_per_op(alias_rebuilds, [&] {
        for (int i = 0; i < alias_rebuilds; ++i) {
          table = alias_build(weights);
          g_sink = g_sink + table.alias[targets[i % U]];
        }
      });

      // F+tree.
      FTree tree{std::span<const double>(weights)};
      const double t_ft_b = time_ns_per_op(1, [&] {
        tree.assign(weights);
        g_sink = g_sink + static_cast<std::int64_t>(tree.total());
      });
      const double t_ft_s = time_ns_per_op(S, [&] {
        for (int i = 0; i < S; ++i) g_sink = g_sink + tree.sample(us[i]);
      });
      const double t_ft_u = time_ns_per_op(U, [&] {
        for (int i = 0; i < U; ++i) tree.update(targets[i], deltas[i]);
        g_sink = g_sink + static_cast<std::int64_t>(tree.total());
      });

      if (trial < 0) continue;
      ls_b.push_back(t_ls_b);
      ls_s.push_back(t_ls_s);
      ls_u.push_back(t_ls_u);
      bs_b.push_back(t_bs_b);
      bs_s.push_back(t_bs_s);
      bs_u.push_back(t_bs_u);
      al_b.push_back(t_al_b);
      al_s.push_back(t_al_s);
      al_u.push_back(t_al_u);
      ft_b.push_back(t_ft_b);
      ft_s.push_back(t_ft_s);
      ft_u.push_back(t_ft_u);
    }

    ls.ns_build = median(ls_b);
    ls.ns_sample = median(ls_s);
    ls.ns_update = median(ls_u);
    bs.ns_build = median(bs_b);
    bs.ns_sample = median(bs_s);
    bs.ns_update = median(bs_u);
    al.ns_build = median(al_b);
    al.ns_sample = median(al_s);
    al.ns_update = median(al_u);
    ft.ns_build = median(ft_b);
    ft.ns_sample = median(ft_s);
    ft.ns_update = median(ft_u);
    out.push_back(ls);
    out.push_back(bs);
    out.push_back(al);
    out.push_back(ft);
  }
  return out;
}

}  // namespace flda
