#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "histories/error.hpp"

namespace histories {

template <typename Real>
using Vector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// A pure state. Initial states are normalized.
template <typename Real>
using StateVector = Vector<Real>;

inline constexpr double kIdempotenceTolerance = 1e-10;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kResolutionTolerance = 1e-10;

/// Orthogonal projector on C^n, stored densely. Construction checks P*P = P
/// and P = P^dagger entrywise. Copies share the immutable matrix.
template <typename Real>
class Projector {
 public:
  Projector() : m_(std::make_shared<const Matrix<Real>>()) {}

  explicit Projector(Matrix<Real> m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "projector matrix is not square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > Real(kHermiticityTolerance)) {
      throw Error(ErrorCode::InvalidProjector, "matrix is not hermitian");
    }
    if ((m * m - m).cwiseAbs().maxCoeff() > Real(kIdempotenceTolerance)) {
      throw Error(ErrorCode::InvalidProjector, "matrix is not idempotent");
    }
    m_ = std::make_shared<const Matrix<Real>>(std::move(m));
  }

  /// |v><v| for a unit vector v.
  static Projector outer(const Vector<Real>& v) { return Projector(Matrix<Real>(v * v.adjoint())); }

  static Projector identity(Eigen::Index n) { return Projector(Matrix<Real>::Identity(n, n), Exact{}); }

  /// Diagonal projector onto the span of the basis vectors selected by `mask`.
  static Projector coordinate(Eigen::Index n, std::uint64_t mask) {
    Matrix<Real> m = Matrix<Real>::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) m(i, i) = Real(1);
    }
    return Projector(std::move(m), Exact{});
  }

  /// 1 - P
  Projector complement() const {
    return Projector(Matrix<Real>(Matrix<Real>::Identity(dim(), dim()) - *m_));
  }

  const Matrix<Real>& matrix() const { return *m_; }
  Eigen::Index dim() const { return m_->rows(); }

 private:
  // 0/1 diagonal matrices are projectors exactly; skip the O(n^3) check.
  struct Exact {};
  Projector(Matrix<Real> m, Exact) : m_(std::make_shared<const Matrix<Real>>(std::move(m))) {}

  std::shared_ptr<const Matrix<Real>> m_;
};

/// A chain of projectors, earliest time first.
template <typename Real>
class History {
 public:
  History() = default;

  explicit History(std::vector<Projector<Real>> chain) : chain_(std::move(chain)) {
    for (const auto& p : chain_) {
      if (p.dim() != chain_.front().dim()) {
        throw Error(ErrorCode::DimensionMismatch, "history mixes projectors of different dimension");
      }
    }
  }

  std::size_t length() const { return chain_.size(); }
  /// 0 for the empty chain.
  Eigen::Index dim() const { return chain_.empty() ? 0 : chain_.front().dim(); }
  const std::vector<Projector<Real>>& chain() const { return chain_; }

 private:
  std::vector<Projector<Real>> chain_;
};

/// C_h v = P_m ... P_1 v. The empty chain is the identity.
template <typename Real>
Vector<Real> class_operator_apply(const History<Real>& h, const Vector<Real>& v) {
  if (h.length() != 0 && h.dim() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "history acts on dimension " + std::to_string(h.dim()) +
                                                  " but state has dimension " + std::to_string(v.size()));
  }
  Vector<Real> out = v;
  for (const auto& p : h.chain()) out = p.matrix() * out;
  return out;
}

/// D(h, h2) = <C_h2 psi, C_h psi>.
template <typename Real>
std::complex<Real> decoherence_functional(const Vector<Real>& psi, const History<Real>& h,
                                          const History<Real>& h2) {
  if (h.length() != h2.length()) {
    throw Error(ErrorCode::DimensionMismatch, "histories have different chain lengths");
  }
  // Eigen's dot() conjugates its left operand.
  return class_operator_apply(h2, psi).dot(class_operator_apply(h, psi));
}

/// The histories generated by one exhaustive, mutually orthogonal projector
/// family per time step. Histories are the Cartesian product of the
/// families, ordered with the earliest time varying slowest.
template <typename Real>
class HistorySet {
 public:
  explicit HistorySet(std::vector<std::vector<Projector<Real>>> families)
      : families_(std::move(families)) {
    if (families_.empty()) throw Error(ErrorCode::InvalidHistorySet, "a history set needs at least one time step");
    const Eigen::Index n = families_.front().empty() ? 0 : families_.front().front().dim();
    for (std::size_t t = 0; t < families_.size(); ++t) validate(t, n);

    std::vector<std::size_t> idx(families_.size(), 0);
    for (;;) {
      std::vector<Projector<Real>> chain;
      chain.reserve(idx.size());
      for (std::size_t t = 0; t < idx.size(); ++t) chain.push_back(families_[t][idx[t]]);
      histories_.emplace_back(std::move(chain));
      labels_.push_back(idx);

      std::size_t t = idx.size();
      while (t > 0) {
        --t;
        if (++idx[t] < families_[t].size()) break;
        idx[t] = 0;
        if (t == 0) return;
      }
    }
  }

  const std::vector<History<Real>>& histories() const { return histories_; }
  /// Per history, the index of the chosen projector in each time step's family.
  const std::vector<std::vector<std::size_t>>& labels() const { return labels_; }
  const std::vector<std::vector<Projector<Real>>>& families() const { return families_; }
  std::size_t size() const { return histories_.size(); }

 private:
  void validate(std::size_t t, Eigen::Index n) const {
    const auto& family = families_[t];
    if (family.empty()) throw Error(ErrorCode::InvalidHistorySet, "empty projector family at time " + std::to_string(t));
    Matrix<Real> sum = Matrix<Real>::Zero(n, n);
    for (std::size_t a = 0; a < family.size(); ++a) {
      if (family[a].dim() != n) throw Error(ErrorCode::DimensionMismatch, "projector family mixes dimensions");
      sum += family[a].matrix();
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        // tr(Pa Pb) = |Pb Pa|_F^2, so an exact zero trace settles orthogonality
        // without forming the product.
        const auto overlap = family[a].matrix().cwiseProduct(family[b].matrix().transpose()).sum();
        if (overlap == std::complex<Real>(0)) continue;
        if ((family[a].matrix() * family[b].matrix()).cwiseAbs().maxCoeff() > Real(kResolutionTolerance)) {
          throw Error(ErrorCode::InvalidHistorySet,
                      "projectors " + std::to_string(a) + " and " + std::to_string(b) + " at time " +
                          std::to_string(t) + " are not orthogonal");
        }
      }
    }
    if ((sum - Matrix<Real>::Identity(n, n)).cwiseAbs().maxCoeff() > Real(kResolutionTolerance)) {
      throw Error(ErrorCode::InvalidHistorySet, "projectors at time " + std::to_string(t) + " do not sum to the identity");
    }
  }

  std::vector<std::vector<Projector<Real>>> families_;
  std::vector<History<Real>> histories_;
  std::vector<std::vector<std::size_t>> labels_;
};

}  // namespace histories
