#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixar/model.hpp"
#include "mixar/objective.hpp"
#include "mixar/optimize.hpp"

namespace mixar {

/// Family implied by an order split: (p,0) causal, (0,p) noncausal, else mixed.
Family family_for(std::size_t r, std::size_t s);

/// Start for one candidate from the preliminary causal fit theta_bar
/// (length r + s). Causal: theta_bar itself. Noncausal and mixed: theta_bar
/// read as the causal representation and split by its roots. Throws
/// Error(Partition) or Error(Boundary) when that split does not exist.
std::vector<double> initial_values(Family family, std::size_t r, std::size_t s,
                                   std::span<const double> theta_bar);

/// Fallback when the direct split does not exist: the s roots of theta_bar
/// nearest the unit circle are moved radially inside it (modulus at most
/// 0.95), the others outside (modulus at least 1.05), and the result is
/// factored as in initial_values. A conjugate pair that would be split is
/// first replaced by two real roots of the same modulus.
std::vector<double> radial_start(Family family, std::size_t r, std::size_t s,
                                 std::span<const double> theta_bar);

/// Starts that reflect root units of theta_bar with total degree s across the
/// unit circle (z -> 1 / conj(z), which keeps the shape of the second-order
/// spectrum), then clamp moduli to at most 0.95 inside and at least 1.05
/// outside. One entry per admissible choice of units; non-stationary results
/// are dropped, so the list may be empty.
std::vector<std::vector<double>> reflected_starts(Family family, std::size_t r, std::size_t s,
                                                  std::span<const double> theta_bar);

struct Start {
  std::vector<double> params;
  bool fallback = false;  // not the direct split of theta_bar
};

/// initial_values when it yields a stationary spec, radial_start otherwise.
Start start_values(Family family, std::size_t r, std::size_t s, std::span<const double> theta_bar);

/// initial_values when it yields a stationary spec; otherwise the reflected
/// start with the smallest R_T on ctx (first one on ties), and radial_start
/// when there is none.
Start start_values(Family family, std::size_t r, std::size_t s, const ObjectiveContext& ctx);

struct Candidate {
  Family family = Family::Causal;
  std::size_t r = 0;
  std::size_t s = 0;
  Start start;
  EstimationResult result;
  std::string label() const { return result.spec.label(); }
};

struct IdentificationReport {
  std::size_t p = 0;
  std::size_t T = 0;
  PreliminaryFit preliminary;
  std::vector<Candidate> candidates;  // r = p, p-1, ..., 0
  std::optional<std::size_t> selected;
  std::vector<double> margins;  // rt minus the selected rt; NaN when unavailable
};

struct StrategyOptions {
  ObjectiveOptions objective;
  BfgsOptions bfgs;
  unsigned threads = 1;
};

/// Index of the converged candidate with the smallest R_T. Values within
/// 1e-9 of the minimum count as ties and go to the larger r.
std::optional<std::size_t> select_candidate(std::span<const Candidate> candidates);

/// Estimates every (r, s) with r + s = p on one shared context.
IdentificationReport estimate_candidates(const ObjectiveContext& ctx, std::size_t p,
                                         const BfgsOptions& bfgs = {}, unsigned threads = 1);

/// Centers y, fits the preliminary AR(p,0), builds the context and estimates
/// every candidate.
IdentificationReport estimate_candidates(std::span<const double> y, std::size_t p,
                                         const StrategyOptions& options = {});

/// Selected spec. Throws Error(Estimation) when no candidate converged.
ModelSpec identify(const IdentificationReport& report);

}  // namespace mixar
