#pragma once

// Brute-force reference implementations.  Everything here works on an
// explicit adjacency-list graph of a ball and on plain BFS distances; nothing
// reuses the library's prefix arithmetic, kernel or transform code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Word = std::vector<int>;

/// B(o, radius) of the (q+1)-regular tree built vertex by vertex.
struct Graph {
  int q = 2;
  int radius = 0;
  std::vector<Word> words;  // level by level, children in label order
  std::map<Word, int> index;
  std::vector<std::vector<int>> adj;

  Graph(int branching, int r) : q(branching), radius(r) {
    add(Word{}, -1);
    for (std::size_t i = 0; i < words.size(); ++i) {
      const Word w = words[i];
      if (static_cast<int>(w.size()) == radius) continue;
      const int labels = w.empty() ? q + 1 : q;
      for (int a = 0; a < labels; ++a) {
        Word c = w;
        c.push_back(a);
        add(c, static_cast<int>(i));
      }
    }
  }

  int id(const Word& w) const { return index.at(w); }
  int size() const { return static_cast<int>(words.size()); }

  std::vector<int> level(int n) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (static_cast<int>(words[static_cast<std::size_t>(i)].size()) == n) out.push_back(i);
    return out;
  }

  std::vector<int> bfs(int source) const {
    std::vector<int> dist(words.size(), -1);
    std::deque<int> todo{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!todo.empty()) {
      const int v = todo.front();
      todo.pop_front();
      for (int w : adj[static_cast<std::size_t>(v)])
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          todo.push_back(w);
        }
    }
    return dist;
  }

 private:
  void add(const Word& w, int parent) {
    const int id = static_cast<int>(words.size());
    words.push_back(w);
    index[w] = id;
    adj.emplace_back();
    if (parent >= 0) {
      adj[static_cast<std::size_t>(parent)].push_back(id);
      adj[static_cast<std::size_t>(id)].push_back(parent);
    }
  }
};

inline bool has_prefix(const Word& w, const Word& p) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

/// q^{(1/2 + iz) h} straight from exp/log.
inline Complex kernel(int q, Complex z, int h) {
  return std::exp((0.5 + Complex(0, 1) * z) * static_cast<double>(h) * std::log(static_cast<double>(q)));
}

/// Busemann heights h_w(x) = m - d(x, w_m) for every level-m vertex w_m of g
/// (m = g.radius must be >= |x|), in g.level(m) order.
inline std::vector<int> heights(const Graph& g, const Word& x) {
  const auto dist = g.bfs(g.id(x));
  std::vector<int> out;
  for (int c : g.level(g.radius)) out.push_back(g.radius - dist[static_cast<std::size_t>(c)]);
  return out;
}

/// Values of a depth-D cylinder function pulled back to level m >= D by
/// matching prefixes.
inline std::vector<Complex> pull_back(const Graph& g, int depth,
                                      const std::vector<Complex>& values) {
  const auto coarse = g.level(depth);
  std::vector<Complex> out;
  for (int c : g.level(g.radius)) {
    const Word& w = g.words[static_cast<std::size_t>(c)];
    for (std::size_t k = 0; k < coarse.size(); ++k)
      if (has_prefix(w, g.words[static_cast<std::size_t>(coarse[k])])) {
        out.push_back(values[k]);
        break;
      }
  }
  return out;
}

/// P_z F(x) = sum over level-m cylinders of nu * q^{(1/2+iz)h} * F for every x
/// in B(o, n), where F has depth `depth` and m = max(n, depth).
inline std::vector<Complex> poisson_transform(int q, Complex z, int depth,
                                              const std::vector<Complex>& values, int n) {
  const Graph g(q, std::max(n, depth));
  const auto fine = pull_back(g, depth, values);
  const double nu = 1.0 / static_cast<double>(fine.size());
  std::vector<Complex> out;
  for (int v = 0; v < g.size(); ++v) {
    const Word& x = g.words[static_cast<std::size_t>(v)];
    if (static_cast<int>(x.size()) > n) break;
    const auto h = heights(g, x);
    Complex sum = 0;
    for (std::size_t c = 0; c < fine.size(); ++c) sum += nu * kernel(q, z, h[c]) * fine[c];
    out.push_back(sum);
  }
  return out;
}

/// f~(z, c) = sum_x f(x) q^{(1/2+iz) h_c(x)} for f on B(o, R) in ball order,
/// as a depth-max(R, depth) function.
inline std::vector<Complex> hf_transform(int q, Complex z, int radius,
                                         const std::vector<Complex>& f, int depth) {
  const Graph g(q, std::max(radius, depth));
  std::vector<Complex> out(g.level(g.radius).size(), 0.0);
  for (std::size_t v = 0; v < f.size(); ++v) {
    const auto h = heights(g, g.words[v]);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += f[v] * kernel(q, z, h[c]);
  }
  return out;
}

/// (1/(q+1)) sum over graph neighbours, on B(o, radius-1).
inline std::vector<Complex> laplacian(const Graph& g, const std::vector<Complex>& u) {
  std::vector<Complex> out;
  for (int v = 0; v < g.size(); ++v) {
    if (static_cast<int>(g.words[static_cast<std::size_t>(v)].size()) == g.radius) break;
    Complex sum = 0;
    for (int w : g.adj[static_cast<std::size_t>(v)]) sum += u[static_cast<std::size_t>(w)];
    out.push_back(sum / static_cast<double>(g.q + 1));
  }
  return out;
}

/// phi_z from the radial eigen-recurrence phi(0) = 1, phi(1) = gamma,
/// q phi(n+1) = (q+1) gamma phi(n) - phi(n-1).
inline std::vector<Complex> spherical(int q, Complex z, int nmax) {
  const Complex qs = std::exp((0.5 + Complex(0, 1) * z) * std::log(static_cast<double>(q)));
  const Complex qc = std::exp((0.5 - Complex(0, 1) * z) * std::log(static_cast<double>(q)));
  const Complex gamma = (qs + qc) / static_cast<double>(q + 1);
  std::vector<Complex> phi{1.0, gamma};
  for (int n = 1; n < nmax; ++n)
    phi.push_back((static_cast<double>(q + 1) * gamma * phi[static_cast<std::size_t>(n)] -
                   phi[static_cast<std::size_t>(n - 1)]) /
                  static_cast<double>(q));
  phi.resize(static_cast<std::size_t>(nmax + 1));
  return phi;
}

/// Average of u over {y : |y| = |x|, y shares x's length-n prefix}.
inline Complex sector_average(const Graph& g, const std::vector<Complex>& u, int n,
                              const Word& x) {
  if (static_cast<int>(x.size()) <= n) return u[static_cast<std::size_t>(g.id(x))];
  const Word head(x.begin(), x.begin() + n);
  Complex sum = 0;
  int count = 0;
  for (int y : g.level(static_cast<int>(x.size())))
    if (has_prefix(g.words[static_cast<std::size_t>(y)], head)) {
      sum += u[static_cast<std::size_t>(y)];
      ++count;
    }
  return sum / static_cast<double>(count);
}

/// Depth-m conditional expectation by explicit prefix grouping (m <= depth).
inline std::vector<Complex> cond_expect(int q, int depth, const std::vector<Complex>& values,
                                        int m) {
  const Graph g(q, depth);
  std::vector<Complex> out;
  const auto fine = g.level(depth);
  for (int c : g.level(m)) {
    Complex sum = 0;
    int count = 0;
    for (std::size_t k = 0; k < fine.size(); ++k)
      if (has_prefix(g.words[static_cast<std::size_t>(fine[k])], g.words[static_cast<std::size_t>(c)])) {
        sum += values[k];
        ++count;
      }
    out.push_back(sum / static_cast<double>(count));
  }
  return out;
}

/// Lorentz functional by explicit sorting, counting measure.
inline double lorentz(std::vector<double> a, double p, double r) {
  for (double& x : a) x = std::abs(x);
  std::sort(a.begin(), a.end(), std::greater<>());
  if (std::isinf(r)) {
    double best = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      best = std::max(best, std::pow(static_cast<double>(k + 1), 1 / p) * a[k]);
    return best;
  }
  double sum = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    sum += std::pow(a[k], r) * (std::pow(static_cast<double>(k + 1), r / p) -
                                std::pow(static_cast<double>(k), r / p));
  return std::pow(sum, 1 / r);
}

inline std::vector<Complex> gaussian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<Complex> out(n);
  for (auto& v : out) {
    const double re = normal(rng);
    v = {re, normal(rng)};
  }
  return out;
}

}  // namespace oracle
