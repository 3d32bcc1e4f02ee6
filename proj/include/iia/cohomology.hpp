#pragma once

#include <functional>
#include <string>
#include <vector>

#include "iia/kform.hpp"
#include "iia/lie_algebra.hpp"
#include "iia/linalg.hpp"
#include "iia/symplectic.hpp"

namespace iia {

// Coefficient vector of a form in lex blade order (length C(6, degree)).
template <class S>
std::vector<S> form_to_vec(const KForm<S>& f) {
  const auto& blades = blades_of_degree(f.degree());
  std::vector<S> v(blades.size(), S(0));
  for (const auto& [b, c] : f.coeffs()) v[blade_lex_index(b)] = c;
  return v;
}

template <class S>
KForm<S> vec_to_form(int degree, const std::vector<S>& v) {
  const auto& blades = blades_of_degree(degree);
  if (v.size() != blades.size()) throw std::invalid_argument("coefficient vector length mismatch");
  KForm<S> f(degree);
  for (size_t i = 0; i < blades.size(); ++i) f.add(blades[i], v[i]);
  return f;
}

// The four degree-3 quotients: de Rham, its primitive part, and the two
// second-order symplectic quotients
//   SHplus3  = ker(d+d- on P3) / im(d+ from P2),
//   SHminus3 = ker(d- on P3) / im(d+d- on P3).
enum class CohKind { H3, PH3, SHplus3, SHminus3 };

const char* coh_kind_name(CohKind kind);

struct Subspace {
  int ambient_degree = 3;
  Mat<Rat> basis;  // RREF rows in lex blade coordinates

  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const KForm<Rat>& f) const {
    return f.degree() == ambient_degree && in_row_span(basis, form_to_vec(f));
  }
};

struct CohomologyReport {
  CohKind kind = CohKind::H3;
  int dimension = 0;
  Subspace closed_space;  // cycles of the theory
  Subspace exact_space;   // boundaries of the theory
  Mat<Rat> basis;         // canonical quotient representatives (rows, cycles)
};

struct KernelImage {
  Subspace kernel;
  Subspace image;
};

// Exact kernel and image of a linear map between form degrees, built from its
// action on the lex blade basis.
KernelImage kernel_and_image(int domain_degree, int target_degree,
                             const std::function<KForm<Rat>(const KForm<Rat>&)>& op);

// Matrix of d from degree k to k+1 (rows = target coordinates).
Mat<Rat> d_matrix(const LieAlgebraSpec<Rat>& spec, int degree);

// Matrix of the dual Lefschetz operator from degree k to k-2.
Mat<Rat> lambda_matrix(const SymplecticStructure<Rat>& ss, int degree);

// RREF basis of the primitive k-forms (k = 2 or 3).
Mat<Rat> primitive_subspace(const SymplecticStructure<Rat>& ss, int degree);

CohomologyReport cohomology(const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss, CohKind kind);

// Coordinates of the class of phi in report.basis; throws std::domain_error
// naming the failed membership when phi is not a cycle of the theory.
std::vector<Rat> class_coordinates(const CohomologyReport& report, const KForm<Rat>& phi);

// The induced maps between the quotients. Classes are compared through the
// identity on representatives, which is well-defined only when cycles and
// boundaries are nested accordingly; the report records where that fails.
struct NaturalMapsReport {
  int rank_shminus_to_ph = 0;
  bool shminus_to_ph_surjective = false;
  int rank_ph_to_h = 0;
  bool ph_to_h_injective = false;
  // ker(d+d-) need not sit inside ker(d), so this direction can fail to exist:
  bool shplus_to_ph_well_defined = false;
  std::string shplus_to_ph_witness;  // a d+d--closed form that is not d-closed
  // the opposite direction always exists (closed primitive forms are
  // d+d--closed, and d-exact primitive forms are d+-exact)
  int rank_ph_to_shplus = 0;
};

NaturalMapsReport natural_maps(const LieAlgebraSpec<Rat>& spec, const SymplecticStructure<Rat>& ss);

}  // namespace iia
