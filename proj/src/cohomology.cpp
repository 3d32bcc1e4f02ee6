#include "iia/cohomology.hpp"

namespace iia {

namespace {

// Rows of op applied to each lex basis blade of the domain, i.e. the matrix
// with columns op(blade); stored row-major over target coordinates.
Mat<Rat> operator_matrix(int domain_degree, int target_degree, const std::function<KForm<Rat>(const KForm<Rat>&)>& op) {
  const auto& dom = blades_of_degree(domain_degree);
  size_t rows = blades_of_degree(target_degree).size();
  Mat<Rat> m(rows, std::vector<Rat>(dom.size(), Rat(0)));
  for (size_t j = 0; j < dom.size(); ++j) {
    KForm<Rat> img = op(KForm<Rat>::monomial(dom[j], Rat(1)));
    if (img.degree() != target_degree) throw std::invalid_argument("operator changed to an unexpected degree");
    for (const auto& [b, c] : img.coeffs()) m[blade_lex_index(b)][j] = c;
  }
  return m;
}

Mat<Rat> image_rows(const Mat<Rat>& op, const Mat<Rat>& domain_rows) {
  return row_space(apply_to_rows(op, domain_rows));
}

Mat<Rat> full_space_rows(int degree) {
  size_t n = blades_of_degree(degree).size();
  Mat<Rat> rows(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) rows[i][i] = Rat(1);
  return rows;
}

struct Operators {
  Mat<Rat> d2;           // d : 2-forms -> 3-forms
  Mat<Rat> d3;           // d : 3-forms -> 4-forms
  Mat<Rat> dminus;       // Lambda d : primitive 3-forms -> 2-forms
  Mat<Rat> dplus2;       // primitive projection of d : primitive 2-forms -> 3-forms
  Mat<Rat> second_order; // d Lambda d : 3-forms -> 3-forms (= d+d- on P3)
  Mat<Rat> p3;           // RREF rows of the primitive 3-forms
  Mat<Rat> p2;
};

Operators build_operators(const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss) {
  Operators ops;
  ops.d2 = operator_matrix(2, 3, [&](const KForm<Rat>& f) { return spec.d(f); });
  ops.d3 = operator_matrix(3, 4, [&](const KForm<Rat>& f) { return spec.d(f); });
  ops.dminus = operator_matrix(3, 2, [&](const KForm<Rat>& f) { return lambda(ss, spec.d(f)); });
  ops.dplus2 = operator_matrix(2, 3, [&](const KForm<Rat>& f) {
    KForm<Rat> df = spec.d(f);
    auto [prim, alpha] = lefschetz_parts_3form(ss, df);
    (void)alpha;
    return prim;
  });
  ops.second_order = operator_matrix(3, 3, [&](const KForm<Rat>& f) { return d_lambda_d(spec, ss, f); });
  ops.p3 = primitive_subspace(ss, 3);
  ops.p2 = primitive_subspace(ss, 2);
  return ops;
}

}  // namespace

const char* coh_kind_name(CohKind kind) {
  switch (kind) {
    case CohKind::H3: return "H3";
    case CohKind::PH3: return "PH3";
    case CohKind::SHplus3: return "SHplus3";
    case CohKind::SHminus3: return "SHminus3";
  }
  return "?";
}

KernelImage kernel_and_image(int domain_degree, int target_degree,
                             const std::function<KForm<Rat>(const KForm<Rat>&)>& op) {
  Mat<Rat> m = operator_matrix(domain_degree, target_degree, op);
  KernelImage out;
  out.kernel.ambient_degree = domain_degree;
  out.kernel.basis = nullspace(m);
  out.image.ambient_degree = target_degree;
  out.image.basis = image_rows(m, full_space_rows(domain_degree));
  return out;
}

Mat<Rat> d_matrix(const LieAlgebraSpec<Rat>& spec, int degree) {
  return operator_matrix(degree, degree + 1, [&](const KForm<Rat>& f) { return spec.d(f); });
}

Mat<Rat> lambda_matrix(const SymplecticStructure<Rat>& ss, int degree) {
  if (degree < 2) throw std::invalid_argument("lambda_matrix needs degree >= 2");
  return operator_matrix(degree, degree - 2, [&](const KForm<Rat>& f) { return lambda(ss, f); });
}

Mat<Rat> primitive_subspace(const SymplecticStructure<Rat>& ss, int degree) {
  return nullspace(lambda_matrix(ss, degree));
}

CohomologyReport cohomology(const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss, CohKind kind) {
  if (!spec.d(ss.omega).empty())
    throw std::invalid_argument("symplectic form is not closed for this algebra");

  Operators ops = build_operators(spec, ss);
  CohomologyReport rep;
  rep.kind = kind;
  rep.closed_space.ambient_degree = 3;
  rep.exact_space.ambient_degree = 3;

  switch (kind) {
    case CohKind::H3:
      rep.closed_space.basis = nullspace(ops.d3);
      rep.exact_space.basis = image_rows(ops.d2, full_space_rows(2));
      break;
    case CohKind::PH3:
      rep.closed_space.basis = kernel_in_subspace(ops.d3, ops.p3);
      rep.exact_space.basis = row_space_intersection(ops.p3, image_rows(ops.d2, full_space_rows(2)));
      break;
    case CohKind::SHplus3:
      rep.closed_space.basis = kernel_in_subspace(ops.second_order, ops.p3);
      rep.exact_space.basis = image_rows(ops.dplus2, ops.p2);
      break;
    case CohKind::SHminus3:
      rep.closed_space.basis = kernel_in_subspace(ops.dminus, ops.p3);
      rep.exact_space.basis = image_rows(ops.second_order, ops.p3);
      break;
  }

  rep.basis = quotient_reps(rep.closed_space.basis, rep.exact_space.basis);
  rep.dimension = static_cast<int>(rep.basis.size());
  return rep;
}

std::vector<Rat> class_coordinates(const CohomologyReport& report, const KForm<Rat>& phi) {
  if (phi.degree() != 3) throw std::domain_error("class_coordinates expects a 3-form");
  std::vector<Rat> v = form_to_vec(phi);
  if (!in_row_span(report.closed_space.basis, v)) {
    std::string name = coh_kind_name(report.kind);
    switch (report.kind) {
      case CohKind::H3:
        throw std::domain_error("form is not d-closed (" + name + ")");
      case CohKind::PH3:
        throw std::domain_error("form is not a closed primitive 3-form (" + name + ")");
      case CohKind::SHplus3:
        throw std::domain_error("form is not a d+d--closed primitive 3-form (" + name + ")");
      case CohKind::SHminus3:
        throw std::domain_error("form is not a d--closed primitive 3-form (" + name + ")");
    }
  }
  std::vector<Rat> reduced = reduce_against(report.exact_space.basis, v);
  auto coords = coords_in_rref_basis(report.basis, reduced);
  if (!coords) throw std::logic_error("cycle did not reduce into the quotient basis");
  return *coords;
}

namespace {

// Rank of the induced map: push each source representative through
// class_coordinates of the target and row-reduce.
int induced_rank(const Mat<Rat>& source_reps, const CohomologyReport& target) {
  Mat<Rat> images;
  for (const auto& r : source_reps) images.push_back(class_coordinates(target, vec_to_form(3, r)));
  return static_cast<int>(row_space(images).size());
}

}  // namespace

NaturalMapsReport natural_maps(const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss) {
  CohomologyReport h = cohomology(spec, ss, CohKind::H3);
  CohomologyReport ph = cohomology(spec, ss, CohKind::PH3);
  CohomologyReport shp = cohomology(spec, ss, CohKind::SHplus3);
  CohomologyReport shm = cohomology(spec, ss, CohKind::SHminus3);

  NaturalMapsReport rep;

  // d--closed = d-closed on primitive 3-forms, and the d+d--exact forms are
  // d-exact, so representatives pass through unchanged.
  rep.rank_shminus_to_ph = induced_rank(shm.basis, ph);
  rep.shminus_to_ph_surjective = rep.rank_shminus_to_ph == ph.dimension;

  rep.rank_ph_to_h = induced_rank(ph.basis, h);
  rep.ph_to_h_injective = rep.rank_ph_to_h == ph.dimension;

  // For SHplus3 -> PH3 every d+d--closed form would need to be d-closed.
  rep.shplus_to_ph_well_defined = true;
  for (const auto& row : shp.closed_space.basis) {
    if (!in_row_span(ph.closed_space.basis, row)) {
      rep.shplus_to_ph_well_defined = false;
      rep.shplus_to_ph_witness = form_str(vec_to_form(3, row));
      break;
    }
  }

  rep.rank_ph_to_shplus = induced_rank(ph.basis, shp);
  return rep;
}

}  // namespace iia
