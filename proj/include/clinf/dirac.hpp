#pragma once

// Dirac subbundles of a Courant instance, given by a global frame of sections.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clinf/courant.hpp"

namespace clinf {

class DiracCandidate {
 public:
  /// Throws std::invalid_argument if the frame has sections of the wrong
  /// bundle or its constant parts are linearly dependent.
  DiracCandidate(std::shared_ptr<const CourantAlgebroid> ambient, std::vector<Section> frame, std::string description);

  /// Frame ∂_i + ι_{∂_i} ω in a standard instance.
  static DiracCandidate graph_2form(std::shared_ptr<const CourantAlgebroid> ambient, const DiffForm& omega);
  /// Frame sharp(π, dx_i) + dx_i in a standard instance.
  static DiracCandidate graph_bivector(std::shared_ptr<const CourantAlgebroid> ambient, const Multivector& pi);
  /// The A-part (first half of the frame) of a split instance.
  static DiracCandidate vector_part(std::shared_ptr<const CourantAlgebroid> ambient);
  /// The A*-part (second half of the frame) of a split instance.
  static DiracCandidate covector_part(std::shared_ptr<const CourantAlgebroid> ambient);

  const CourantAlgebroid& ambient() const { return *ambient_; }
  const std::shared_ptr<const CourantAlgebroid>& ambient_ptr() const { return ambient_; }
  const std::vector<Section>& frame() const { return frame_; }
  std::size_t rank() const { return frame_.size(); }
  const std::string& describe() const { return description_; }

  /// Σ c_i s_i.
  Section combine(const Section& coords) const;

 private:
  std::shared_ptr<const CourantAlgebroid> ambient_;
  std::vector<Section> frame_;
  std::string description_;
};

/// Outcome of a frame check. On failure `indices` (1-based frame positions)
/// and `value` identify the first nonzero pairing or obstruction.
struct DiracCheck {
  bool ok = true;
  std::vector<std::size_t> indices;
  std::optional<Poly> value;
  std::string message;
};

/// ⟨s_i, s_j⟩ = 0 for all i <= j and rank equal to half the bundle rank.
DiracCheck is_isotropic(const DiracCandidate& l);

/// ⟨[s_i, s_j], s_k⟩ = 0 for all i < j and all k. Throws std::invalid_argument
/// if the candidate is not maximal isotropic.
DiracCheck is_integrable(const DiracCandidate& l);

/// The bialgebroid carried by two transversal Dirac structures. A is L1 with
/// its frame; A* is L2 with the frame dual to L1's under 2⟨·,·⟩.
struct ExtractedBialgebroid {
  LieBialgebroidPair pair;
  std::vector<Section> frame_a;
  std::vector<Section> frame_astar;

  /// The ambient section of a section of the double A ⊕ A*.
  Section to_ambient(const Section& double_section) const;
};

/// Throws std::invalid_argument if either candidate is not a Dirac structure,
/// they live in different instances, or 2⟨s_i, t_j⟩ is not a constant
/// invertible matrix (transversality failure).
ExtractedBialgebroid extract_bialgebroid(const DiracCandidate& l1, const DiracCandidate& l2);

}  // namespace clinf
