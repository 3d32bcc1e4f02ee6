// iiaflow: command-line front end.
//
// Subcommands:
//   validate    check a bracket/symplectic presentation (Jacobi, unimodularity,
//               d omega = 0, omega^3 != 0)
//   cohomology  degree-3 de Rham, primitive, and the two symplectic
//               cohomologies, with bases (exact arithmetic)
//   eval        operator data K, F, Q and identity residuals at one 3-form
//   fharmonic   harmonicity residual, per-family obstruction system, class
//               verdict, optional numeric representative search
//   flow        adaptive integration of d/dt phi = d Lambda d F(phi), with the
//               closed-form and reduced analyses when the algebra matches one
//               of the bundled examples
//
// Every run writes its JSON artifacts plus manifest.json into --out-dir
// (default: $IIAFLOW_OUT_DIR, else the working directory). Exit codes:
// 0 success, 1 failed validation verdict, 2 unreadable/invalid input or
// config, 3 internal error. Reruns with identical inputs, seed, and
// SOURCE_DATE_EPOCH produce byte-identical artifacts.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iia/algebra_io.hpp"
#include "iia/catalog.hpp"
#include "iia/coeff20.hpp"
#include "iia/cohomology.hpp"
#include "iia/fharmonic.hpp"
#include "iia/flow.hpp"
#include "iia/hitchin.hpp"
#include "iia/hitchin_poly.hpp"
#include "iia/kform.hpp"
#include "iia/lie_algebra.hpp"
#include "iia/manifest.hpp"
#include "iia/rational.hpp"
#include "iia/symplectic.hpp"

namespace {

using iia::Coeff20;
using iia::JsonWriter;
using iia::KForm;
using iia::Rat;
using json = nlohmann::json;

// config/schema problems; mapped to exit code 2 like parse errors
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string resolve_out_dir(std::string dir) {
  if (dir.empty()) {
    const char* env = std::getenv("IIAFLOW_OUT_DIR");
    dir = env && *env ? env : ".";
  }
  std::filesystem::create_directories(dir);
  return dir;
}

int finish(const std::string& out_dir, iia::RunManifest& man, int code, const std::string& outcome) {
  man.exit_code = code;
  man.outcome = outcome;
  iia::write_text_file(out_dir + "/manifest.json", man.to_json());
  return code;
}

// shared error funnel: fill the manifest and pick the exit code by error class
int fail(const std::string& out_dir, iia::RunManifest& man, const std::exception& e) {
  int code = 3;
  if (dynamic_cast<const std::runtime_error*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) code = 2;
  std::cerr << "error: " << e.what() << "\n";
  try {
    finish(out_dir, man, code, std::string("error: ") + e.what());
  } catch (const std::exception& io) {
    std::cerr << "error: " << io.what() << "\n";
  }
  return code;
}

json parse_config(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

const json& require_key(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string(ctx) + ": missing required key \"" + key + "\"");
  return *it;
}

std::string require_string(const json& j, const char* key, const char* ctx) {
  const json& v = require_key(j, key, ctx);
  if (!v.is_string()) throw SchemaError(std::string(ctx) + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

Rat rat_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
  if (v.is_number_float()) return Rat(v.get<double>());
  if (v.is_string()) {
    Rat q;
    if (iia::expr_detail::try_parse_rational_literal(v.get<std::string>(), q)) return q;
    throw SchemaError(where + ": \"" + v.get<std::string>() + "\" is not a rational literal");
  }
  throw SchemaError(where + " must be a number or a rational string");
}

template <class S>
Coeff20<S> coeffs_from_config(const json& cfg, const char* ctx) {
  const json& arr = require_key(cfg, "phi0", ctx);
  if (!arr.is_array() || arr.size() != 20)
    throw SchemaError(std::string(ctx) + ": \"phi0\" must be an array of 20 coefficients");
  Coeff20<S> c;
  for (int i = 0; i < 20; ++i) {
    const json& v = arr[static_cast<std::size_t>(i)];
    std::string where = std::string(ctx) + ": phi0[" + std::to_string(i) + "]";
    if constexpr (std::is_same_v<S, Rat>) {
      c[i] = rat_from_json(v, where);
    } else {
      if (!v.is_number()) throw SchemaError(where + " must be a number");
      c[i] = v.get<double>();
    }
  }
  return c;
}

double positive_number(const json& cfg, const char* key, double dflt, const char* ctx) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return dflt;
  if (!it->is_number() || !(it->get<double>() > 0))
    throw SchemaError(std::string(ctx) + ": \"" + key + "\" must be a positive number");
  return it->get<double>();
}

void emit_rat_array(JsonWriter& w, const std::vector<Rat>& xs) {
  w.begin_array();
  for (const Rat& x : xs) w.value(iia::scalar_str(x));
  w.end_array();
}

void emit_coeffs(JsonWriter& w, const Coeff20<Rat>& c) {
  std::vector<Rat> xs(20);
  for (int i = 0; i < 20; ++i) xs[static_cast<std::size_t>(i)] = c[i];
  emit_rat_array(w, xs);
}

void emit_coeffs(JsonWriter& w, const Coeff20<double>& c) {
  w.begin_array();
  for (int i = 0; i < 20; ++i) w.value(c[i]);
  w.end_array();
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& algebra_path, const std::string& out_dir_flag) {
  std::string out_dir = resolve_out_dir(out_dir_flag);
  iia::RunManifest man;
  man.command = "validate";
  try {
    std::string text = iia::read_text_file(algebra_path);
    man.inputs.push_back({algebra_path, iia::trim_trailing_ws(text), true});

    // exact arithmetic when the presentation allows it
    std::string arithmetic = "rational";
    std::string name;
    iia::ValidationReport rep;
    try {
      auto la = iia::parse_algebra_json<Rat>(text, algebra_path);
      name = la.spec.name();
      rep = iia::validate(la.spec, la.omega);
    } catch (const std::runtime_error& e) {
      if (std::string(e.what()).find("not a rational literal") == std::string::npos) throw;
      arithmetic = "floating";
      auto la = iia::parse_algebra_json<double>(text, algebra_path);
      name = la.spec.name();
      rep = iia::validate(la.spec, la.omega);
    }

    JsonWriter w;
    w.begin_object();
    w.key("algebra");
    w.value(name);
    w.key("source");
    w.value(algebra_path);
    w.key("arithmetic");
    w.value(arithmetic);
    w.key("jacobi_ok");
    w.value(rep.jacobi_ok);
    w.key("unimodular_ok");
    w.value(rep.unimodular_ok);
    w.key("omega_closed");
    w.value(rep.omega_closed);
    w.key("omega_nondegenerate");
    w.value(rep.omega_nondegenerate);
    w.key("ok");
    w.value(rep.ok());
    w.key("detail");
    w.value(rep.detail);
    w.end_object();
    iia::write_text_file(out_dir + "/validate.json", w.str());
    man.artifacts.push_back("validate.json");

    std::string line = rep.ok() ? "validate: ok" : "validate: FAILED (" + rep.detail + ")";
    std::cout << line << "\n";
    return finish(out_dir, man, rep.ok() ? 0 : 1, line);
  } catch (const std::exception& e) {
    return fail(out_dir, man, e);
  }
}

// ---------------------------------------------------------------------------
// cohomology

int cmd_cohomology(const std::string& algebra_path, const std::string& out_dir_flag) {
  std::string out_dir = resolve_out_dir(out_dir_flag);
  iia::RunManifest man;
  man.command = "cohomology";
  try {
    std::string text = iia::read_text_file(algebra_path);
    man.inputs.push_back({algebra_path, iia::trim_trailing_ws(text), true});
    auto la = iia::load_algebra<Rat>(algebra_path);
    auto ss = iia::make_symplectic(la.omega);

    JsonWriter w;
    w.begin_object();
    w.key("algebra");
    w.value(la.spec.name());
    w.key("source");
    w.value(algebra_path);
    w.key("spaces");
    w.begin_object();
    std::ostringstream dims;
    for (iia::CohKind kind : {iia::CohKind::H3, iia::CohKind::PH3, iia::CohKind::SHplus3, iia::CohKind::SHminus3}) {
      auto rep = iia::cohomology(la.spec, ss, kind);
      w.key(iia::coh_kind_name(kind));
      w.begin_object();
      w.key("dimension");
      w.value(rep.dimension);
      w.key("closed_dimension");
      w.value(rep.closed_space.dim());
      w.key("exact_dimension");
      w.value(rep.exact_space.dim());
      w.key("basis");
      w.begin_array();
      for (const auto& row : rep.basis) w.value(iia::form_str(iia::vec_to_form(3, row)));
      w.end_array();
      w.end_object();
      dims << (dims.tellp() > 0 ? "/" : "") << rep.dimension;
    }
    w.end_object();

    auto maps = iia::natural_maps(la.spec, ss);
    w.key("natural_maps");
    w.begin_object();
    w.key("rank_shminus_to_ph");
    w.value(maps.rank_shminus_to_ph);
    w.key("shminus_to_ph_surjective");
    w.value(maps.shminus_to_ph_surjective);
    w.key("rank_ph_to_h");
    w.value(maps.rank_ph_to_h);
    w.key("ph_to_h_injective");
    w.value(maps.ph_to_h_injective);
    w.key("shplus_to_ph_well_defined");
    w.value(maps.shplus_to_ph_well_defined);
    if (!maps.shplus_to_ph_well_defined) {
      w.key("shplus_to_ph_witness");
      w.value(maps.shplus_to_ph_witness);
    }
    w.key("rank_ph_to_shplus");
    w.value(maps.rank_ph_to_shplus);
    w.end_object();
    w.end_object();

    iia::write_text_file(out_dir + "/cohomology.json", w.str());
    man.artifacts.push_back("cohomology.json");
    std::string line = "cohomology: dims " + dims.str();
    std::cout << line << "\n";
    return finish(out_dir, man, 0, line);
  } catch (const std::exception& e) {
    return fail(out_dir, man, e);
  }
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& config_path, const std::string& out_dir_flag) {
  std::string out_dir = resolve_out_dir(out_dir_flag);
  iia::RunManifest man;
  man.command = "eval";
  try {
    std::string text = iia::read_text_file(config_path);
    man.inputs.push_back({config_path, iia::trim_trailing_ws(text), true});
    json cfg = parse_config(text, config_path);
    Coeff20<Rat> c = coeffs_from_config<Rat>(cfg, "eval config");

    auto ss = iia::make_symplectic(iia::standard_omega<Rat>());
    KForm<Rat> phi = iia::to_form(c);
    Rat q = Rat(4) * iia::Q_quarter_poly(c);
    Coeff20<Rat> fc = iia::F_poly(c);
    auto K = iia::K_def(ss, phi);
    auto resid = iia::kfq_identity_residuals(ss, phi);
    bool identities_ok = iia::is_zero(resid[0]) && iia::is_zero(resid[1]) && iia::is_zero(resid[2]);
    std::string stability = q < 0 ? "negative" : (q > 0 ? "positive" : "degenerate");

    JsonWriter w;
    w.begin_object();
    w.key("phi0");
    emit_coeffs(w, c);
    w.key("Q");
    w.value(iia::scalar_str(q));
    w.key("Q_over_4");
    w.value(iia::scalar_str(Rat(q / 4)));
    w.key("stability");
    w.value(stability);
    w.key("F");
    emit_coeffs(w, fc);
    w.key("K");
    w.begin_array();
    for (int i = 0; i < 6; ++i) {
      std::vector<Rat> row(6);
      for (int j = 0; j < 6; ++j) row[static_cast<std::size_t>(j)] = K[i][j];
      emit_rat_array(w, row);
    }
    w.end_array();
    w.key("identity_residuals");
    emit_rat_array(w, {resid[0], resid[1], resid[2]});
    w.key("identities_ok");
    w.value(identities_ok);
    if (q < 0) {
      auto cd = iia::complex_data(iia::make_symplectic(iia::standard_omega<double>()),
                                  iia::approximate(phi));
      w.key("complex");
      w.begin_object();
      w.key("norm");
      w.value(cd.norm_sq);
      w.key("J");
      w.begin_array();
      for (int i = 0; i < 6; ++i) {
        w.begin_array();
        for (int j = 0; j < 6; ++j) w.value(cd.J[i][j]);
        w.end_array();
      }
      w.end_array();
      w.key("phi_hat");
      emit_coeffs(w, iia::coeff20_from_form(cd.phi_hat));
      w.end_object();
    }
    w.end_object();

    iia::write_text_file(out_dir + "/eval.json", w.str());
    man.artifacts.push_back("eval.json");
    std::string line = "eval: Q = " + iia::scalar_str(q) + " (" + stability + ")";
    std::cout << line << "\n";
    return finish(out_dir, man, 0, line);
  } catch (const std::exception& e) {
    return fail(out_dir, man, e);
  }
}

// ---------------------------------------------------------------------------
// fharmonic

enum class Family { nilpotent, solvable, generic };

Family detect_family(const iia::LieAlgebraSpec<Rat>& spec) {
  const auto& im = spec.d_images();
  auto mono = [](int i, int j, const Rat& c) { return KForm<Rat>::monomial(iia::blade_of({i, j}), c); };
  if (im[0].empty() && im[1].empty() && im[2].empty() && im[3] == mono(1, 5, Rat(1)) && im[4].empty() &&
      im[5] == mono(1, 3, Rat(1)))
    return Family::nilpotent;
  Rat l = -im[0].coeff(iia::blade_of({1, 5}));
  if (l > 0 && im[0] == mono(1, 5, -l) && im[1] == mono(2, 5, l) && im[2] == mono(3, 6, -l) &&
      im[3] == mono(4, 6, l) && im[4].empty() && im[5].empty())
    return Family::solvable;
  return Family::generic;
}

const char* stratum_name(iia::LocusStratum s) {
  switch (s) {
    case iia::LocusStratum::none: return "none";
    case iia::LocusStratum::unique_exact: return "unique_exact";
    case iia::LocusStratum::degenerate: return "degenerate";
    case iia::LocusStratum::rank_drop: return "rank_drop";
  }
  return "?";
}

int cmd_fharmonic(const std::string& config_path, const std::string& out_dir_flag, std::uint64_t seed) {
  std::string out_dir = resolve_out_dir(out_dir_flag);
  iia::RunManifest man;
  man.command = "fharmonic";
  man.has_seed = true;
  man.seed = seed;
  try {
    std::string text = iia::read_text_file(config_path);
    man.inputs.push_back({config_path, iia::trim_trailing_ws(text), true});
    json cfg = parse_config(text, config_path);
    std::string algebra_path = require_string(cfg, "algebra", "fharmonic config");
    std::string atext = iia::read_text_file(algebra_path);
    man.inputs.push_back({algebra_path, iia::trim_trailing_ws(atext), true});
    Coeff20<Rat> c = coeffs_from_config<Rat>(cfg, "fharmonic config");

    auto la = iia::parse_algebra_json<Rat>(atext, algebra_path);
    auto ss = iia::make_symplectic(la.omega);
    iia::require_standard_omega(ss);
    KForm<Rat> phi = iia::to_form(c);
    auto resid = iia::fharmonic_residual(la.spec, ss, phi);
    Family family = detect_family(la.spec);

    // Class-level statements need the exact directions of the de Rham theory.
    auto h3 = iia::cohomology(la.spec, ss, iia::CohKind::H3);

    JsonWriter w;
    w.begin_object();
    w.key("algebra");
    w.value(la.spec.name());
    w.key("source");
    w.value(algebra_path);
    w.key("family");
    w.value(family == Family::nilpotent ? "nilpotent" : (family == Family::solvable ? "solvable" : "generic"));
    w.key("phi0");
    emit_coeffs(w, c);
    w.key("is_closed");
    w.value(resid.is_closed);
    w.key("d_phi_norm");
    w.value(iia::scalar_str(resid.d_phi_norm));
    w.key("is_fharmonic");
    w.value(resid.is_fharmonic);
    w.key("dF_phi_norm");
    w.value(iia::scalar_str(resid.dF_phi_norm));

    bool verdict = resid.is_fharmonic;
    std::string scope = "representative";
    if (resid.is_closed && family == Family::nilpotent) {
      auto sys = iia::nilpotent_fharmonic_system(c);
      auto locus = iia::nilpotent_class_locus(c);
      w.key("system");
      emit_rat_array(w, {sys[0], sys[1], sys[2], sys[3]});
      w.key("locus");
      w.begin_object();
      w.key("stratum");
      w.value(stratum_name(locus.stratum));
      w.key("has_harmonic_representative");
      w.value(locus.has_harmonic_representative);
      w.key("all_representatives_harmonic");
      w.value(locus.all_representatives_harmonic);
      w.end_object();
      if (iia::coeff20_is_primitive(c)) {
        auto table = iia::nilpotent_primitive_class_table(c);
        w.key("primitive_class_table");
        w.begin_object();
        w.key("ph_has_representative");
        w.value(table.ph_has_rep);
        w.key("ph_all_representatives");
        w.value(table.ph_all_reps);
        w.key("shplus_has_representative");
        w.value(table.shplus_has_rep);
        w.key("shplus_all_representatives");
        w.value(table.shplus_all_reps);
        w.key("shminus_has_representative");
        w.value(table.shminus_has_rep);
        w.key("shminus_all_representatives");
        w.value(table.shminus_all_reps);
        w.end_object();
      }
      verdict = locus.has_harmonic_representative;
      scope = "class";
    } else if (resid.is_closed && family == Family::solvable) {
      auto sys = iia::solvable_fharmonic_system(c);
      bool sys_zero = iia::is_zero(sys[0]) && iia::is_zero(sys[1]) && iia::is_zero(sys[2]) && iia::is_zero(sys[3]);
      w.key("system");
      emit_rat_array(w, {sys[0], sys[1], sys[2], sys[3]});
      w.key("Q_over_4_closed");
      w.value(iia::scalar_str(iia::solvable_Q_quarter_closed(c)));
      // Exact shifts move A, C, E, G freely, so the shifted representative
      // with those letters zeroed kills the whole system. Certify rather than
      // assume: the shift must lie in the computed exact space and the
      // shifted form must have exactly vanishing residual.
      Coeff20<Rat> cz = c;
      for (int idx : {iia::cA, iia::cB, iia::cC, iia::cD, iia::cE, iia::cF, iia::cG, iia::cH})
        cz[idx] = Rat(0);
      Coeff20<Rat> shift;
      for (int i = 0; i < 20; ++i) shift[i] = Rat(c[i] - cz[i]);
      bool shift_exact = h3.exact_space.contains(iia::to_form(shift));
      auto shifted = iia::fharmonic_residual(la.spec, ss, iia::to_form(cz));
      if (shift_exact && shifted.is_fharmonic) {
        verdict = true;
        scope = "class";
        w.key("harmonic_representative");
        emit_coeffs(w, cz);
      } else {
        verdict = sys_zero;
        scope = sys_zero ? "class" : "representative";
      }
    }

    w.key("verdict");
    w.value(verdict);
    w.key("verdict_scope");
    w.value(scope);

    bool do_search = false;
    if (auto it = cfg.find("search"); it != cfg.end()) {
      if (!it->is_boolean()) throw SchemaError("fharmonic config: \"search\" must be a boolean");
      do_search = it->get<bool>();
    }
    if (do_search) {
      std::vector<KForm<double>> basis;
      for (const auto& row : h3.exact_space.basis) basis.push_back(iia::approximate(iia::vec_to_form(3, row)));
      auto spec_d = iia::approximate(la.spec);
      auto ss_d = iia::make_symplectic(iia::standard_omega<double>());
      auto search = iia::find_representative(spec_d, ss_d, iia::approximate(phi), basis, seed);
      w.key("search");
      w.begin_object();
      w.key("converged");
      w.value(search.converged);
      w.key("objective");
      w.value(search.objective);
      w.key("evaluations");
      w.value(search.evaluations);
      w.key("restarts_used");
      w.value(search.restarts_used);
      w.key("phi");
      emit_coeffs(w, iia::coeff20_from_form(search.phi));
      w.end_object();
    }
    w.end_object();

    iia::write_text_file(out_dir + "/fharmonic.json", w.str());
    man.artifacts.push_back("fharmonic.json");
    std::ostringstream line;
    line << "fharmonic: verdict " << (verdict ? "true" : "false") << " (" << scope << ")";
    std::cout << line.str() << "\n";
    return finish(out_dir, man, 0, line.str());
  } catch (const std::exception& e) {
    return fail(out_dir, man, e);
  }
}

// ---------------------------------------------------------------------------
// flow

Coeff20<double> frozen_rhs(const iia::LieAlgebraSpec<double>& spec, const iia::SymplecticStructure<double>& ss,
                           const Coeff20<double>& c) {
  Coeff20<double> out = iia::coeff20_from_form(iia::flow_rhs(spec, ss, iia::to_form(c)));
  for (int i = iia::cO; i <= iia::cT; ++i) out[i] = 0.0;
  return out;
}

std::string trajectory_csv(const iia::LieAlgebraSpec<double>& spec, const iia::SymplecticStructure<double>& ss,
                           const iia::FlowTrajectory& traj) {
  std::ostringstream os;
  os << "t";
  for (int i = 0; i < 20; ++i) os << ',' << iia::coeff20_letter(i);
  os << ",hitchin_Q,rhs_linf\n";
  for (const auto& sample : traj.samples) {
    os << iia::json_double(sample.t);
    for (int i = 0; i < 20; ++i) os << ',' << iia::json_double(sample.coeffs[i]);
    double q = 4.0 * iia::Q_quarter_poly(sample.coeffs);
    Coeff20<double> r = frozen_rhs(spec, ss, sample.coeffs);
    double rn = 0;
    for (int i = 0; i < 20; ++i) rn = std::max(rn, std::abs(r[i]));
    os << ',' << iia::json_double(q) << ',' << iia::json_double(rn) << '\n';
  }
  return os.str();
}

// snapped pretty form of a float 3-form, when its entries are near small
// rationals; absent otherwise
std::optional<std::string> pretty_form(const KForm<double>& f) {
  try {
    return iia::form_str(iia::snap_form(f, 1e-6));
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

int cmd_flow(const std::string& config_path, const std::string& out_dir_flag) {
  std::string out_dir = resolve_out_dir(out_dir_flag);
  iia::RunManifest man;
  man.command = "flow";
  try {
    std::string text = iia::read_text_file(config_path);
    man.inputs.push_back({config_path, iia::trim_trailing_ws(text), true});
    json cfg_json = parse_config(text, config_path);
    std::string algebra_path = require_string(cfg_json, "algebra", "flow config");
    std::string atext = iia::read_text_file(algebra_path);
    man.inputs.push_back({algebra_path, iia::trim_trailing_ws(atext), true});
    Coeff20<double> c0 = coeffs_from_config<double>(cfg_json, "flow config");

    iia::FlowConfig cfg;
    cfg.dt0 = positive_number(cfg_json, "dt0", cfg.dt0, "flow config");
    cfg.rtol = positive_number(cfg_json, "rtol", cfg.rtol, "flow config");
    cfg.atol = positive_number(cfg_json, "atol", cfg.atol, "flow config");
    cfg.t_max = positive_number(cfg_json, "t_max", cfg.t_max, "flow config");
    cfg.blowup_threshold = positive_number(cfg_json, "blowup_threshold", cfg.blowup_threshold, "flow config");
    if (auto it = cfg_json.find("sample_stride"); it != cfg_json.end()) {
      if (!it->is_number_integer() || it->get<int>() <= 0)
        throw SchemaError("flow config: \"sample_stride\" must be a positive integer");
      cfg.sample_stride = it->get<int>();
    }

    auto la = iia::parse_algebra_json<double>(atext, algebra_path);
    auto ss = iia::make_symplectic(la.omega);
    iia::require_standard_omega(ss);

    iia::FlowTrajectory traj = iia::integrate(la.spec, ss, c0, cfg);
    const auto& out = traj.outcome;

    JsonWriter w;
    w.begin_object();
    w.key("algebra");
    w.value(la.spec.name());
    w.key("source");
    w.value(algebra_path);
    w.key("config");
    w.begin_object();
    w.key("dt0");
    w.value(cfg.dt0);
    w.key("rtol");
    w.value(cfg.rtol);
    w.key("atol");
    w.value(cfg.atol);
    w.key("t_max");
    w.value(cfg.t_max);
    w.key("blowup_threshold");
    w.value(cfg.blowup_threshold);
    w.key("sample_stride");
    w.value(cfg.sample_stride);
    w.end_object();
    w.key("outcome");
    w.value(iia::outcome_name(out.kind));
    w.key("t_final");
    w.value(traj.samples.back().t);
    w.key("samples");
    w.value(static_cast<long long>(traj.samples.size()));
    w.key("final");
    emit_coeffs(w, traj.samples.back().coeffs);
    switch (out.kind) {
      case iia::FlowOutcomeKind::converged_to:
        w.key("phi_star");
        emit_coeffs(w, iia::coeff20_from_form(out.phi_star));
        break;
      case iia::FlowOutcomeKind::linear_divergent: {
        w.key("direction");
        emit_coeffs(w, iia::coeff20_from_form(out.direction));
        if (auto s = pretty_form(out.direction)) {
          w.key("direction_form");
          w.value(*s);
        }
        break;
      }
      case iia::FlowOutcomeKind::blow_up: {
        w.key("T_est");
        w.value(out.T_est);
        w.key("normalized_limit");
        emit_coeffs(w, iia::coeff20_from_form(out.normalized_limit));
        if (auto s = pretty_form(out.normalized_limit)) {
          w.key("normalized_limit_form");
          w.value(*s);
        }
        break;
      }
      case iia::FlowOutcomeKind::horizon_reached:
        break;
    }
    w.key("stiffness_suspected");
    w.value(out.stiffness_suspected);

    // extra closed-form/reduced analyses for the bundled examples
    if (iia::flow_detail::is_nilpotent_example(la.spec)) {
      auto sol = iia::nilpotent_exact(la.spec, c0);
      w.key("nilpotent_closed_form");
      w.begin_object();
      w.key("H");
      w.value(sol.H);
      w.key("drift_constant");
      w.value(sol.R);
      w.key("a0");
      w.value(sol.a0);
      w.key("asymptote");
      w.value(iia::outcome_name(sol.asymptote));
      if (sol.asymptote == iia::FlowOutcomeKind::converged_to) {
        w.key("a_limit");
        w.value(sol.a_limit);
      }
      w.end_object();
    }
    bool solvable = true;
    try {
      iia::solvable_scale(la.spec);
    } catch (const std::invalid_argument&) {
      solvable = false;
    }
    if (solvable) {
      auto red = iia::solvable_reduce(la.spec, ss, c0);
      w.key("solvable_reduction");
      w.begin_object();
      w.key("lambda_squared");
      w.value(red.lambda2);
      w.key("alpha");
      w.value(red.alpha);
      w.key("beta");
      w.value(red.beta);
      w.key("gamma");
      w.value(red.gamma);
      w.key("delta");
      w.value(red.delta);
      w.key("M");
      w.value(red.M);
      w.key("N");
      w.value(red.N);
      w.key("closed_primitive");
      w.value(red.closed_primitive);
      if (red.closed_primitive) {
        auto pos = iia::positivity_report(red);
        w.key("positivity");
        w.begin_object();
        w.key("matrix_positive");
        w.value(pos.matrix_positive);
        w.key("inequalities_positive");
        w.value(pos.inequalities_positive);
        w.key("q_sixteenth");
        w.value(pos.q_sixteenth);
        w.end_object();
        try {
          w.key("measured_uv_factor");
          w.value(iia::measure_uv_factor(la.spec, ss, c0));
        } catch (const std::invalid_argument&) {
          w.null();
        }
        if (pos.matrix_positive && pos.inequalities_positive) {
          auto rep = iia::blowup_analysis(red, cfg);
          w.key("blowup");
          w.begin_object();
          w.key("blew_up");
          w.value(rep.blew_up);
          w.key("T_numeric");
          w.value(rep.T_numeric);
          w.key("T_bound");
          w.value(rep.T_bound);
          w.key("T_bound_alt");
          w.value(rep.T_bound_alt);
          w.key("uv_ratio_final");
          w.value(rep.uv_ratio_final);
          w.key("acs_residual");
          w.value(rep.acs_residual);
          w.key("thin_ratio_final");
          w.value(rep.thin_ratio_final);
          w.end_object();
        }
      }
      w.end_object();
    }
    w.end_object();

    iia::write_text_file(out_dir + "/flow.json", w.str());
    iia::write_text_file(out_dir + "/trajectory.csv", trajectory_csv(la.spec, ss, traj));
    man.artifacts.push_back("flow.json");
    man.artifacts.push_back("trajectory.csv");

    std::ostringstream line;
    line << "flow: " << iia::outcome_name(out.kind) << " at t=" << iia::json_double(traj.samples.back().t);
    std::cout << line.str() << "\n";
    return finish(out_dir, man, 0, line.str());
  } catch (const std::exception& e) {
    return fail(out_dir, man, e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-form evolution toolkit on 6-dimensional symplectic Lie algebras"};
  app.set_version_flag("--version", iia::kToolVersion);
  app.require_subcommand(1);

  std::string algebra, config, out_dir;
  std::uint64_t seed = 0;

  auto add_out_dir = [&](CLI::App* cmd) {
    cmd->add_option("--out-dir", out_dir, "artifact directory (default: $IIAFLOW_OUT_DIR or .)");
  };

  CLI::App* v = app.add_subcommand("validate", "check a bracket/symplectic presentation");
  v->add_option("--algebra", algebra, "algebra description file")->required();
  add_out_dir(v);

  CLI::App* coh = app.add_subcommand("cohomology", "degree-3 cohomologies with bases (exact)");
  coh->add_option("--algebra", algebra, "algebra description file")->required();
  add_out_dir(coh);

  CLI::App* ev = app.add_subcommand("eval", "operator data K, F, Q at one 3-form");
  ev->add_option("--config", config, "JSON config with phi0")->required();
  add_out_dir(ev);

  CLI::App* fh = app.add_subcommand("fharmonic", "harmonicity residual and class verdict");
  fh->add_option("--config", config, "JSON config with algebra and phi0")->required();
  fh->add_option("--seed", seed, "RNG seed for the representative search");
  add_out_dir(fh);

  CLI::App* fl = app.add_subcommand("flow", "integrate the evolution equation");
  fl->add_option("--config", config, "JSON config with algebra, phi0, and tolerances")->required();
  add_out_dir(fl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(v)) return cmd_validate(algebra, out_dir);
  if (app.got_subcommand(coh)) return cmd_cohomology(algebra, out_dir);
  if (app.got_subcommand(ev)) return cmd_eval(config, out_dir);
  if (app.got_subcommand(fh)) return cmd_fharmonic(config, out_dir, seed);
  if (app.got_subcommand(fl)) return cmd_flow(config, out_dir);
  return 3;
}
