#pragma once

#include <string>
#include <vector>

#include "iia/catalog.hpp"
#include "iia/cohomology.hpp"

namespace iia {

// Cross-check of computed spaces against the hand-recorded spanning sets,
// preimage identities, dimensions, and alternative quotient bases of the two
// bundled examples. Every failure is recorded with enough context to act on.
struct ReferenceCheckResult {
  std::vector<std::string> failures;
  int checks_run = 0;

  bool ok() const { return failures.empty(); }
};

ReferenceCheckResult verify_reference(const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss,
                                      const ReferenceData& ref);

}  // namespace iia
