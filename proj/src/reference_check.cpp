#include "iia/reference_check.hpp"

#include "iia/symplectic.hpp"

namespace iia {

namespace {

void check_spanning_set(ReferenceCheckResult& res, const std::string& label, const std::vector<KForm<Rat>>& listed,
                        const Subspace& space) {
  Mat<Rat> rows;
  for (const auto& f : listed) {
    ++res.checks_run;
    if (!space.contains(f)) res.failures.push_back(label + ": listed form " + form_str(f) + " not in computed space");
    rows.push_back(form_to_vec(f));
  }
  ++res.checks_run;
  int listed_rank = static_cast<int>(row_space(rows).size());
  if (listed_rank != space.dim())
    res.failures.push_back(label + ": listed forms span rank " + std::to_string(listed_rank) +
                           " but computed space has dimension " + std::to_string(space.dim()));
}

void check_identity(ReferenceCheckResult& res, const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss,
                    const RefIdentity& id) {
  ++res.checks_run;
  KForm<Rat> image(3);
  switch (id.op) {
    case RefIdentity::Op::D:
      image = spec.d(id.arg);
      break;
    case RefIdentity::Op::Dplus:
      image = dpm_split(spec, ss, id.arg).plus;
      break;
    case RefIdentity::Op::DplusDminus:
      image = dpd_minus(spec, ss, id.arg);
      break;
  }
  if (id.lhs != id.factor * image)
    res.failures.push_back(std::string("preimage identity failed: ") + id.label + " (operator gave " +
                           form_str(image) + ")");
}

void check_quotient_basis(ReferenceCheckResult& res, const std::string& label, const CohomologyReport& rep,
                          int expected_dim, const std::vector<KForm<Rat>>& listed_basis) {
  ++res.checks_run;
  if (rep.dimension != expected_dim) {
    res.failures.push_back(label + ": computed dimension " + std::to_string(rep.dimension) + ", expected " +
                           std::to_string(expected_dim));
    return;
  }
  ++res.checks_run;
  if (static_cast<int>(listed_basis.size()) != expected_dim) {
    res.failures.push_back(label + ": recorded basis has wrong size");
    return;
  }
  Mat<Rat> classes;
  for (const auto& f : listed_basis) {
    ++res.checks_run;
    if (!rep.closed_space.contains(f)) {
      res.failures.push_back(label + ": basis form " + form_str(f) + " is not a cycle");
      return;
    }
    classes.push_back(class_coordinates(rep, f));
  }
  ++res.checks_run;
  int rank = static_cast<int>(row_space(classes).size());
  if (rank != expected_dim)
    res.failures.push_back(label + ": basis classes have rank " + std::to_string(rank) + ", expected " +
                           std::to_string(expected_dim));
}

}  // namespace

ReferenceCheckResult verify_reference(const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss,
                                      const ReferenceData& ref) {
  ReferenceCheckResult res;

  CohomologyReport h = cohomology(spec, ss, CohKind::H3);
  CohomologyReport ph = cohomology(spec, ss, CohKind::PH3);
  CohomologyReport shp = cohomology(spec, ss, CohKind::SHplus3);
  CohomologyReport shm = cohomology(spec, ss, CohKind::SHminus3);

  check_spanning_set(res, "d-closed 3-forms", ref.closed3, h.closed_space);
  check_spanning_set(res, "d-closed primitive 3-forms", ref.closed_primitive3, ph.closed_space);
  check_spanning_set(res, "d-exact 3-forms", ref.exact3, h.exact_space);
  check_spanning_set(res, "d-exact primitive 3-forms", ref.exact_primitive3, ph.exact_space);
  check_spanning_set(res, "d+d--closed primitive 3-forms", ref.ppclosed_primitive3, shp.closed_space);
  check_spanning_set(res, "d+d--exact primitive 3-forms", ref.ppexact_primitive3, shm.exact_space);
  check_spanning_set(res, "d+-exact primitive 3-forms", ref.dplus_exact3, shp.exact_space);

  for (const auto& id : ref.identities) check_identity(res, spec, ss, id);

  check_quotient_basis(res, "H3", h, ref.dim_h3, ref.basis_h3);
  check_quotient_basis(res, "PH3", ph, ref.dim_ph3, ref.basis_ph3);
  check_quotient_basis(res, "SH+3", shp, ref.dim_shp3, ref.basis_shp3);
  check_quotient_basis(res, "SH-3", shm, ref.dim_shm3, ref.basis_shm3);

  return res;
}

}  // namespace iia
