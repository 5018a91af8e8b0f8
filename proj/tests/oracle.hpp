#pragma once

// Brute-force reference used only by the tests. It shares no code with the
// library's engine: partitions come from recursive block insertion, and the
// decoherence functional is evaluated with hand-rolled dense complex
// matrices built straight from the model's defining formulas.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Block = std::vector<std::size_t>;
using SetPartition = std::vector<Block>;

/// Every partition of `items`: each item joins an existing block or opens a new one.
inline void partitions_rec(const std::vector<std::size_t>& items, std::size_t pos, SetPartition& cur,
                           std::vector<SetPartition>& out) {
  if (pos == items.size()) {
    out.push_back(cur);
    return;
  }
  for (std::size_t b = 0; b < cur.size(); ++b) {
    cur[b].push_back(items[pos]);
    partitions_rec(items, pos + 1, cur, out);
    cur[b].pop_back();
  }
  cur.push_back({items[pos]});
  partitions_rec(items, pos + 1, cur, out);
  cur.pop_back();
}

inline std::vector<SetPartition> all_partitions(const std::vector<std::size_t>& items) {
  std::vector<SetPartition> out;
  SetPartition cur;
  partitions_rec(items, 0, cur, out);
  return out;
}

struct Dense {
  std::size_t n;
  std::vector<cplx> a;
  Dense(std::size_t n_) : n(n_), a(n_ * n_) {}
  cplx& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline std::vector<cplx> apply(const Dense& m, const std::vector<cplx>& v) {
  std::vector<cplx> out(m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// <u, v> conjugate-linear in u.
inline cplx inner(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

/// Explicit slit experiment: psi uniform over open paths, d = conj(A)/|A|.
struct Experiment {
  std::size_t n = 0;
  std::vector<bool> open;
  std::vector<cplx> psi;
  Dense detected{0};
  Dense undetected{0};

  Experiment(const std::vector<cplx>& amps, const std::vector<bool>& open_) : n(amps.size()), open(open_) {
    double norm2 = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      norm2 += std::norm(amps[i]);
      k += open[i] ? 1 : 0;
    }
    psi.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (open[i]) psi[i] = 1.0 / std::sqrt(double(k));
    std::vector<cplx> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = std::conj(amps[i]) / std::sqrt(norm2);
    detected = Dense(n);
    undetected = Dense(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        detected(i, j) = d[i] * std::conj(d[j]);
        undetected(i, j) = (i == j ? 1.0 : 0.0) - detected(i, j);
      }
  }

  Dense group_projector(const Block& g) const {
    Dense p(n);
    for (auto i : g) p(i, i) = 1.0;
    return p;
  }

  /// Branch vectors, ordered (g0,D), (g0,notD), (g1,D), ...
  std::vector<std::vector<cplx>> branches(const SetPartition& part) const {
    std::vector<std::vector<cplx>> out;
    for (const auto& g : part) {
      auto v = oracle::apply(group_projector(g), psi);
      out.push_back(oracle::apply(detected, v));
      out.push_back(oracle::apply(undetected, v));
    }
    return out;
  }

  /// D(h, h2) for every pair of histories of `part`.
  std::vector<std::vector<cplx>> decoherence(const SetPartition& part) const {
    auto b = branches(part);
    std::vector<std::vector<cplx>> d(b.size(), std::vector<cplx>(b.size()));
    for (std::size_t h = 0; h < b.size(); ++h)
      for (std::size_t h2 = 0; h2 < b.size(); ++h2) d[h][h2] = inner(b[h2], b[h]);
    return d;
  }

  /// Same acceptance rule as the library contract: relative tolerance on the
  /// largest diagonal value with an absolute floor of 1e-14.
  bool consistent(const SetPartition& part, bool medium, double rel_tol) const {
    auto d = decoherence(part);
    double max_diag = 0.0;
    for (std::size_t h = 0; h < d.size(); ++h) max_diag = std::max(max_diag, d[h][h].real());
    const double tol = std::max(rel_tol * max_diag, 1e-14);
    for (std::size_t h = 0; h < d.size(); ++h)
      for (std::size_t h2 = 0; h2 < d.size(); ++h2) {
        if (h == h2) continue;
        const double v = medium ? std::abs(d[h][h2]) : std::abs(d[h][h2].real());
        if (v > tol) return false;
      }
    return true;
  }

  std::vector<std::size_t> open_items() const {
    std::vector<std::size_t> items;
    for (std::size_t i = 0; i < n; ++i)
      if (open[i]) items.push_back(i);
    return items;
  }

  /// Canonical form: blocks sorted internally and by first member.
  static SetPartition canonical(SetPartition p) {
    for (auto& b : p) std::sort(b.begin(), b.end());
    std::sort(p.begin(), p.end());
    return p;
  }

  std::vector<SetPartition> consistent_partitions(bool medium, double rel_tol) const {
    std::vector<SetPartition> out;
    for (auto& p : all_partitions(open_items()))
      if (consistent(p, medium, rel_tol)) out.push_back(canonical(p));
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace oracle
