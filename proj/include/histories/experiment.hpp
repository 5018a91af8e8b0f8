#pragma once

#include <cmath>
#include <vector>

#include "histories/history.hpp"
#include "histories/partition.hpp"
#include "histories/scenario.hpp"

namespace histories {

enum class Branch { Detected, Undetected };

constexpr std::string_view to_string(Branch b) { return b == Branch::Detected ? "D" : "notD"; }

/// Hilbert-space realization of a slit scenario.
///
/// One basis vector e_i per flattened path. The initial state is the equal
/// superposition over the k open paths; closed paths are kept as dimensions
/// with zero support. Evolution is the identity, so the physics sits in the
/// detector direction d_i = conj(A_i)/|A|, which makes <d, e_i> = A_i/|A|.
/// Only ratios are meaningful: the absolute detection probability depends on
/// the equal-weight choice of initial state.
template <typename Real>
class BasicExperimentModel {
 public:
  using Complex = std::complex<Real>;

  explicit BasicExperimentModel(const SlitScenario& scenario)
      : open_(scenario.open_paths()), n_(static_cast<Eigen::Index>(scenario.path_count())) {
    if (open_.empty()) throw Error(ErrorCode::NoOpenPaths, "scenario '" + scenario.name() + "' has no open path");

    amplitudes_.resize(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      const auto a = scenario.paths()[static_cast<std::size_t>(i)].amplitude;
      amplitudes_(i) = Complex(Real(a.real()), Real(a.imag()));
    }
    amplitude_norm_ = amplitudes_.norm();
    if (!(amplitude_norm_ > Real(0))) {
      throw Error(ErrorCode::DegenerateDetector, "all amplitudes vanish; detector direction undefined");
    }

    const Real weight = Real(1) / std::sqrt(Real(open_.size()));
    psi_ = Vector<Real>::Zero(n_);
    for (auto i : open_.members()) psi_(static_cast<Eigen::Index>(i)) = weight;
    detector_ = amplitudes_.conjugate() / amplitude_norm_;

    slit_projectors_.reserve(static_cast<std::size_t>(n_));
    for (Eigen::Index i = 0; i < n_; ++i) slit_projectors_.push_back(Projector<Real>::coordinate(n_, std::uint64_t{1} << i));
    detected_ = Projector<Real>::outer(detector_);
    undetected_ = detected_.complement();
  }

  Eigen::Index dim() const { return n_; }
  PathSet open_paths() const { return open_; }
  std::size_t open_count() const { return open_.size(); }

  const StateVector<Real>& psi() const { return psi_; }
  const StateVector<Real>& detector() const { return detector_; }
  const Vector<Real>& amplitudes() const { return amplitudes_; }
  Real amplitude_norm() const { return amplitude_norm_; }

  const Projector<Real>& slit_projector(std::size_t i) const { return slit_projectors_.at(i); }
  const Projector<Real>& detected() const { return detected_; }
  const Projector<Real>& undetected() const { return undetected_; }
  const Projector<Real>& detection(Branch b) const { return b == Branch::Detected ? detected_ : undetected_; }

  /// Sum of the slit projectors of `group`.
  Projector<Real> group_projector(PathSet group) const {
    if (!group.subset_of(PathSet::first(static_cast<std::size_t>(n_)))) {
      throw Error(ErrorCode::DimensionMismatch, "group " + format_set(group) + " exceeds model dimension");
    }
    return Projector<Real>::coordinate(n_, group.bits());
  }

  /// The two-time history "through `group`, then `branch`".
  History<Real> slit_history(PathSet group, Branch branch) const {
    return History<Real>({group_projector(group), detection(branch)});
  }

 private:
  PathSet open_;
  Eigen::Index n_ = 0;
  Vector<Real> amplitudes_;
  Real amplitude_norm_{};
  StateVector<Real> psi_;
  StateVector<Real> detector_;
  std::vector<Projector<Real>> slit_projectors_;
  Projector<Real> detected_;
  Projector<Real> undetected_;
};

using ExperimentModel = BasicExperimentModel<double>;

template <typename Real = double>
BasicExperimentModel<Real> build_experiment(const SlitScenario& scenario) {
  return BasicExperimentModel<Real>(scenario);
}

template <typename Real>
Vector<Real> class_operator_apply(const BasicExperimentModel<Real>& model, const History<Real>& h,
                                  const Vector<Real>& v) {
  if (v.size() != model.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match the model");
  }
  return class_operator_apply(h, v);
}

template <typename Real>
std::complex<Real> decoherence_functional(const BasicExperimentModel<Real>& model, const History<Real>& h,
                                          const History<Real>& h2) {
  if ((h.length() != 0 && h.dim() != model.dim()) || (h2.length() != 0 && h2.dim() != model.dim())) {
    throw Error(ErrorCode::DimensionMismatch, "history dimension does not match the model");
  }
  return decoherence_functional(model.psi(), h, h2);
}

/// Analytic D for two-time slit histories (G, branch) and (G2, branch),
/// bypassing the Hilbert-space model. With c_G = A_G / (sqrt(k) |A|):
///   detected:   conj(c_G2) c_G
///   undetected: |G n G2| / k - conj(c_G2) c_G
Amplitude group_decoherence_closed_form(const SlitScenario& scenario, PathSet group, PathSet group2,
                                        Branch branch);

}  // namespace histories
