// qedlab: command-line front end for the cutoff-QED lab library.
//
//   qedlab spectrum --config run.cfg [--out r.json] [--dense|--iterative]
//   qedlab mu       --config run.cfg [--out r.json]
//   qedlab verify   --config run.cfg [--out r.json]
//   qedlab scan <ir|polarization-ir|triviality|z3> --config run.cfg
//               [--out r.json] [--csv r.csv]
//
// Exit codes: 0 success (verify: every check passed or was skipped; mu: the
// lower-bound verdict holds), 1 a check or verdict failed or an internal
// error occurred, 2 configuration error (malformed file, missing key,
// unsupported grid).
//
// Output is deterministic: reruns with identical inputs produce byte-identical
// files. Files are written atomically (temporary file + rename). Every JSON
// document embeds the resolved configuration and the seed that was used.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qed/bogoliubov.hpp"
#include "qed/config.hpp"
#include "qed/dirac.hpp"
#include "qed/dressing.hpp"
#include "qed/eigensolve.hpp"
#include "qed/fock.hpp"
#include "qed/grassmann.hpp"
#include "qed/lattice.hpp"
#include "qed/operators.hpp"
#include "qed/scans.hpp"

using json = nlohmann::ordered_json;
using namespace qed;

namespace {

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void emit_json(const std::string& out_path, const json& doc) {
  std::string text = doc.dump(2);
  text.push_back('\n');
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

json config_json(const Config& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.entries()) j[k] = v;
  return j;
}

// ---------------------------------------------------------------------------
// Model construction from configuration
// ---------------------------------------------------------------------------

struct Model {
  Lattice lattice;
  ModelParams params;
  int photons_max = 0;
};

// The point set is chosen by lattice.shape:
//   ball      all nu with |2 pi nu / L| <= lattice.radius   (default)
//   box       all nu with max_i |nu_i| <= lattice.extent
//   collinear {0, +-n e3 : 1 <= n <= lattice.extent}
Lattice build_lattice(const Config& cfg) {
  const double volume = cfg.get_real("volume");
  if (volume <= 0.0) throw ConfigError("volume must be positive");
  const double length = std::cbrt(volume);
  const std::string shape = cfg.get("lattice.shape", "ball");
  if (shape == "ball") {
    const double radius = cfg.get_real("lattice.radius");
    if (radius < 0.0) throw ConfigError("lattice.radius must be nonnegative");
    return Lattice::ball(length, radius);
  }
  if (shape == "box") {
    const int extent = static_cast<int>(cfg.get_int("lattice.extent"));
    if (extent < 0) throw ConfigError("lattice.extent must be nonnegative");
    return Lattice::box(length, extent);
  }
  if (shape == "collinear") {
    const int extent = static_cast<int>(cfg.get_int("lattice.extent"));
    if (extent < 0) throw ConfigError("lattice.extent must be nonnegative");
    std::vector<Vec3i> pts{{0, 0, 0}};
    for (int n = 1; n <= extent; ++n) {
      pts.push_back({0, 0, n});
      pts.push_back({0, 0, -n});
    }
    return Lattice::from_points(length, std::move(pts));
  }
  throw ConfigError("lattice.shape must be ball, box, or collinear");
}

Model build_model(const Config& cfg) {
  Model m{build_lattice(cfg),
          ModelParams{cfg.get_real("mass"), cfg.get_real("coupling")},
          static_cast<int>(cfg.get_int("photons.max", 0))};
  if (m.params.mass <= 0.0) throw ConfigError("mass must be positive");
  if (m.photons_max < 0) throw ConfigError("photons.max must be nonnegative");
  return m;
}

std::optional<SectorFilter> sector_filter(const Config& cfg) {
  SectorFilter f;
  bool any = false;
  if (cfg.has("sector.charge")) {
    f.charge = static_cast<int>(cfg.get_int("sector.charge"));
    any = true;
  }
  if (cfg.has("sector.momentum")) {
    const auto v = cfg.get_ints("sector.momentum");
    if (v.size() != 3)
      throw ConfigError("sector.momentum needs three comma-separated integers");
    f.momentum = Vec3i{static_cast<int>(v[0]), static_cast<int>(v[1]),
                       static_cast<int>(v[2])};
    any = true;
  }
  if (cfg.has("sector.max_particles")) {
    f.max_particles = static_cast<int>(cfg.get_int("sector.max_particles"));
    any = true;
  }
  if (!any) return std::nullopt;
  return f;
}

FermionBasis fermion_basis(const Model& m, const Config& cfg) {
  if (auto f = sector_filter(cfg)) return FermionBasis::filtered(m.lattice, *f);
  return FermionBasis::full(m.lattice);
}

double tolerance_of(const Config& cfg, double fallback) {
  return cfg.get_real("tolerance", fallback);
}

std::uint64_t seed_of(const Config& cfg) {
  return static_cast<std::uint64_t>(cfg.get_int("seed", 12345));
}

// Largest |coefficient| of a ladder polynomial; coefficient-level operator
// norm used for exact identities (basis independent, no truncation).
double coeff_norm(const FermionOperator& op) {
  double m = 0.0;
  for (const auto& [mono, c] : op.terms()) m = std::max(m, std::abs(c));
  return m;
}

FermionOperator sum4(const std::array<FermionOperator, 4>& terms) {
  FermionOperator s;
  for (const auto& t : terms) s += t;
  return s;
}

// ---------------------------------------------------------------------------
// spectrum: lowest eigenvalue(s) of the full Hamiltonian on the product space
// ---------------------------------------------------------------------------

// Expectation of the Hamiltonian in the empty state (no fermions, no
// photons), when that state belongs to the basis.
std::optional<double> vacuum_expectation(const ProductOperator& h,
                                         const FermionBasis& fb,
                                         const BosonBasis& bb) {
  const std::ptrdiff_t fi = fb.index_of(0);
  if (fi < 0) return std::nullopt;
  const std::int64_t idx = static_cast<std::int64_t>(fi) * bb.dim();
  std::vector<cd> x(h.dim(), cd{0.0, 0.0}), y(h.dim());
  x[idx] = 1.0;
  h.apply(x.data(), y.data());
  return y[idx].real();
}

json sector_json(const Config& cfg) {
  json s;
  const auto f = sector_filter(cfg);
  if (!f) {
    s["restriction"] = "full";
    return s;
  }
  s["restriction"] = "filtered";
  if (f->charge) s["charge"] = *f->charge;
  if (f->momentum)
    s["momentum"] = json::array({(*f->momentum)[0], (*f->momentum)[1], (*f->momentum)[2]});
  if (f->max_particles) s["max_particles"] = *f->max_particles;
  return s;
}

struct SpectrumResult {
  std::string method;
  std::vector<double> eigenvalues;  // ascending; iterative yields one
  double min_eigenvalue = 0.0;
  double residual = 0.0;
  int matvecs = 0;
  bool converged = true;
};

SpectrumResult lowest_eigenvalues(const std::vector<ProductTerm>& terms,
                                  const FermionBasis& fb, const BosonBasis& bb,
                                  int count, bool force_dense,
                                  bool force_iterative, const Config& cfg) {
  const std::int64_t dim =
      static_cast<std::int64_t>(fb.dim()) * static_cast<std::int64_t>(bb.dim());
  bool use_dense = dim <= 2048;
  if (force_dense) use_dense = true;
  if (force_iterative) use_dense = false;
  if (use_dense && dim > 8192)
    throw ConfigError("dense eigensolver requested at dimension " +
                      std::to_string(dim) + " (limit 8192); use --iterative");
  SpectrumResult r;
  if (use_dense) {
    const SparseOp h = product_matrix(terms, fb, bb);
    const Eigen::VectorXd ev = dense_spectrum(densify(h));
    const int n = std::min<int>(count, static_cast<int>(ev.size()));
    r.method = "dense";
    for (int i = 0; i < n; ++i) r.eigenvalues.push_back(ev[i]);
    r.min_eigenvalue = ev.size() ? ev[0] : 0.0;
  } else {
    const ProductOperator h(terms, fb, bb);
    LanczosOptions opt;
    opt.seed = seed_of(cfg);
    opt.tol = tolerance_of(cfg, opt.tol);
    const IterativeResult it = lanczos_min_eigenvalue(as_map(h), opt);
    r.method = "iterative";
    r.eigenvalues.push_back(it.value);
    r.min_eigenvalue = it.value;
    r.residual = it.residual;
    r.matvecs = it.matvecs;
    r.converged = it.converged;
  }
  return r;
}

int run_spectrum(const Config& cfg, const std::string& out_path, bool dense,
                 bool iterative) {
  const Model m = build_model(cfg);
  const FermionBasis fb = fermion_basis(m, cfg);
  const BosonBasis bb(m.lattice.n_photon_modes(), m.photons_max);
  const auto terms = total_hamiltonian_terms(m.lattice, m.params);
  const int count =
      std::max<int>(1, static_cast<int>(cfg.get_int("spectrum.count", 1)));
  const SpectrumResult r =
      lowest_eigenvalues(terms, fb, bb, count, dense, iterative, cfg);

  json doc;
  doc["command"] = "spectrum";
  doc["config"] = config_json(cfg);
  doc["seed"] = seed_of(cfg);
  doc["lattice_points"] = m.lattice.n_points();
  doc["photon_modes"] = m.lattice.n_photon_modes();
  doc["sector"] = sector_json(cfg);
  doc["fermion_dim"] = fb.dim();
  doc["boson_dim"] = bb.dim();
  doc["product_dim"] = static_cast<std::int64_t>(fb.dim()) *
                       static_cast<std::int64_t>(bb.dim());
  doc["method"] = r.method;
  doc["eigenvalues"] = r.eigenvalues;
  doc["min_eigenvalue"] = r.min_eigenvalue;
  if (r.method == "iterative") {
    doc["residual"] = r.residual;
    doc["matvecs"] = r.matvecs;
    doc["converged"] = r.converged;
  }
  {
    const ProductOperator h(terms, fb, bb);
    if (auto v = vacuum_expectation(h, fb, bb)) doc["vacuum_expectation"] = *v;
  }
  emit_json(out_path, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// mu: vacuum-energy shift of the quadratic model and the lower-bound verdict
// ---------------------------------------------------------------------------

int run_mu(const Config& cfg, const std::string& out_path, bool dense,
           bool iterative, bool corrupt_mu) {
  const Model m = build_model(cfg);
  const int n_modes = 4 * m.lattice.n_points();
  const FermionOperator hmod = modified_fermion_hamiltonian(m.lattice, m.params);
  const QuadraticFermion q = extract_quadratic(hmod, n_modes);
  const BogoliubovResult r = diagonalize_quadratic(q);
  double mu = std::max(0.0, -r.ground_energy);
  // Self-test hook: shift mu the wrong way to prove the verdict can fail.
  if (corrupt_mu) mu -= 1.0;

  const FermionBasis fb = fermion_basis(m, cfg);
  const BosonBasis bb(m.lattice.n_photon_modes(), m.photons_max);
  const auto terms = total_hamiltonian_terms(m.lattice, m.params);
  const SpectrumResult s =
      lowest_eigenvalues(terms, fb, bb, 1, dense, iterative, cfg);

  const double tol = tolerance_of(cfg, 1e-8);
  const double gap = s.min_eigenvalue + mu;
  const bool verdict = gap >= -tol * std::max(1.0, std::abs(s.min_eigenvalue));

  json doc;
  doc["command"] = "mu";
  doc["config"] = config_json(cfg);
  doc["seed"] = seed_of(cfg);
  doc["n_modes"] = n_modes;
  json lam = json::array();
  for (Eigen::Index i = 0; i < r.lambda.size(); ++i) lam.push_back(r.lambda[i]);
  doc["quasiparticle_energies"] = lam;
  doc["ground_energy"] = r.ground_energy;
  doc["mu"] = mu;
  doc["mu_corrupted_for_selftest"] = corrupt_mu;
  doc["canonical_defect"] = r.canonical_defect;
  doc["min_eigenvalue"] = s.min_eigenvalue;
  doc["method"] = s.method;
  if (s.method == "iterative") {
    doc["residual"] = s.residual;
    doc["converged"] = s.converged;
  }
  doc["bound_gap"] = gap;
  doc["tolerance"] = tol;
  doc["bound_holds"] = verdict;
  emit_json(out_path, doc);
  return verdict ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify: structural identities of the assembled model
// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  std::string status;  // "pass" | "fail" | "skipped"
  double measured = 0.0;
  double tolerance = 0.0;
  std::string reason;  // for skipped checks
};

Check make_check(std::string name, double measured, double tol) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tol;
  c.status = measured <= tol ? "pass" : "fail";
  return c;
}

Check make_skipped(std::string name, std::string reason) {
  Check c;
  c.name = std::move(name);
  c.status = "skipped";
  c.reason = std::move(reason);
  return c;
}

double polarization_frame_defect(const Lattice& lat) {
  double worst = 0.0;
  for (int i : lat.nonzero_points()) {
    const Vec3 k = lat.k_of(i);
    const auto e = polarization_pair(k);
    const Vec3 khat = scaled(1.0 / norm(k), k);
    worst = std::max(worst, std::abs(dot(e[0], e[0]) - 1.0));
    worst = std::max(worst, std::abs(dot(e[1], e[1]) - 1.0));
    worst = std::max(worst, std::abs(dot(e[0], e[1])));
    worst = std::max(worst, std::abs(dot(e[0], khat)));
    worst = std::max(worst, std::abs(dot(e[1], khat)));
    const Vec3 c = cross(e[0], e[1]);
    worst = std::max(worst, norm({c[0] - khat[0], c[1] - khat[1], c[2] - khat[2]}));
  }
  return worst;
}

// Frame swap under momentum reflection, on the domain where the frame choice
// makes it an exact identity: nu >= 0 componentwise with nu_1^2 + nu_2^2 > 0.
std::optional<double> parity_swap_defect(const Lattice& lat) {
  bool any = false;
  double worst = 0.0;
  for (int i : lat.nonzero_points()) {
    const Vec3i nu = lat.point(i);
    if (nu[0] < 0 || nu[1] < 0 || nu[2] < 0) continue;
    if (nu[0] == 0 && nu[1] == 0) continue;
    any = true;
    const Vec3 k = lat.k_of(nu);
    const auto ek = polarization_pair(k);
    const auto em = polarization_pair(minus(k));
    for (int a = 0; a < 3; ++a) {
      worst = std::max(worst, std::abs(em[0][a] - ek[1][a]));
      worst = std::max(worst, std::abs(em[1][a] - ek[0][a]));
    }
  }
  if (!any) return std::nullopt;
  return worst;
}

double kernel_spectrum_defect(const Lattice& lat) {
  std::vector<double> target(16, 0.0);
  for (int i = 4; i < 12; ++i) target[i] = 1.0;
  for (int i = 12; i < 16; ++i) target[i] = 2.0;
  double worst = 0.0;
  for (int i : lat.nonzero_points()) {
    const Mat16 m = pair_interaction_kernel(lat.k_of(i));
    Eigen::SelfAdjointEigenSolver<Mat16> es(m, Eigen::EigenvaluesOnly);
    for (int a = 0; a < 16; ++a)
      worst = std::max(worst, std::abs(es.eigenvalues()[a] - target[a]));
  }
  return worst;
}

double adjoint_pairing_defect(const Lattice& lat, double mass) {
  double worst = 0.0;
  for (int i : lat.nonzero_points()) {
    const Vec3i nu = lat.point(i);
    const FermionOperator rho = current_bilinear(lat, mass, nu, Mat4::Identity());
    const FermionOperator rho_m =
        current_bilinear(lat, mass, neg(nu), Mat4::Identity());
    worst = std::max(worst, coeff_norm(rho.adjoint() - rho_m));
    for (int j = 0; j < 2; ++j) {
      const Mat4 v = alpha_dot(polarization(lat.k_of(nu), j));
      const FermionOperator cur = current_bilinear(lat, mass, nu, v);
      const FermionOperator cur_m = current_bilinear(lat, mass, neg(nu), v);
      worst = std::max(worst, coeff_norm(cur.adjoint() - cur_m));
    }
  }
  return worst;
}

double car_defect(const Lattice& lat) {
  const int n_modes = 4 * lat.n_points();
  std::vector<SparseOp> ann(n_modes), cre(n_modes);
  for (int m = 0; m < n_modes; ++m) {
    ann[m] = fermion_matrix(FermionOperator::annihilation(m), n_modes);
    cre[m] = fermion_matrix(FermionOperator::creation(m), n_modes);
  }
  const std::int64_t dim = std::int64_t{1} << n_modes;
  double worst = 0.0;
  auto max_abs = [](const SparseOp& m) {
    double w = 0.0;
    for (int r = 0; r < m.outerSize(); ++r)
      for (SparseOp::InnerIterator it(m, r); it; ++it)
        w = std::max(w, std::abs(it.value()));
    return w;
  };
  SparseOp id(dim, dim);
  id.setIdentity();
  for (int m = 0; m < n_modes; ++m) {
    for (int n = m; n < n_modes; ++n) {
      SparseOp ac = ann[m] * cre[n];
      SparseOp ca = cre[n] * ann[m];
      SparseOp anti = ac + ca;
      if (m == n) anti = SparseOp(anti - id);
      worst = std::max(worst, max_abs(anti));
      SparseOp aa = ann[m] * ann[n];
      SparseOp aa2 = ann[n] * ann[m];
      worst = std::max(worst, max_abs(SparseOp(aa + aa2)));
    }
  }
  return worst;
}

// Defect of the completed-square identity on the product space: the dressed
// quadratic photon form must reproduce free photon energy + photon-fermion
// coupling + the current-current energy, on every column whose photon
// occupation stays at least one below the cap.
double completed_square_defect(const Model& m, const FermionBasis& fb,
                               const BosonBasis& bb) {
  const Lattice& lat = m.lattice;
  std::vector<ProductTerm> rhs_terms = free_photon_hamiltonian(lat);
  for (auto& t : interaction_terms(lat, m.params)) rhs_terms.push_back(t);
  rhs_terms.push_back({current_current_energy(lat, m.params), PhotonFactor{}});
  const SparseOp rhs = product_matrix(rhs_terms, fb, bb);

  const std::int64_t dim = rhs.rows();
  SparseOp lhs(dim, dim);
  for (int i : lat.nonzero_points()) {
    const double knorm = lat.k_norm(i);
    for (int j = 0; j < 2; ++j) {
      const SparseOp d =
          product_matrix(dressed_annihilator_terms(lat, m.params, lat.point(i), j),
                         fb, bb);
      const SparseOp dag = d.adjoint();
      const SparseOp dd = dag * d;
      lhs = (lhs + SparseOp(knorm * dd)).pruned();
    }
  }

  const SparseOp diff = SparseOp(lhs - rhs).pruned();
  const int cap = bb.max_total() - 1;
  const std::size_t db = bb.dim();
  double worst = 0.0;
  for (int r = 0; r < diff.outerSize(); ++r) {
    for (SparseOp::InnerIterator it(diff, r); it; ++it) {
      const std::size_t boson_col = static_cast<std::size_t>(it.col()) % db;
      if (bb.total_occupation(boson_col) <= cap)
        worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

// [a_m, a+_n] = delta_mn, checked on columns whose total occupation stays
// strictly below the cap so that creation never truncates.
double photon_commutation_defect(const BosonBasis& bb) {
  const int nm = bb.n_modes();
  const Eigen::Index dim = static_cast<Eigen::Index>(bb.dim());
  std::vector<DenseOp> a(nm), c(nm);
  for (int i = 0; i < nm; ++i) {
    a[i] = photon_factor_matrix({PhotonFactor::Kind::annihilate, i}, bb);
    c[i] = photon_factor_matrix({PhotonFactor::Kind::create, i}, bb);
  }
  double worst = 0.0;
  for (int i = 0; i < nm; ++i) {
    for (int j = 0; j < nm; ++j) {
      DenseOp comm = a[i] * c[j] - c[j] * a[i];
      if (i == j) comm -= DenseOp::Identity(dim, dim);
      for (Eigen::Index col = 0; col < dim; ++col) {
        if (bb.total_occupation(col) > bb.max_total() - 1) continue;
        worst = std::max(worst, comm.col(col).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

// Smallest eigenvalue and norm of the static interaction, on the full
// occupation basis when it fits, else compressed onto the vacuum sector.
std::pair<double, double> static_min_and_norm(const Model& m,
                                              std::uint64_t seed) {
  const FermionOperator hcc = static_interaction(m.lattice, m.params);
  const FermionBasis basis =
      4 * m.lattice.n_points() <= 12
          ? FermionBasis::full(m.lattice)
          : FermionBasis::filtered(
                m.lattice, SectorFilter{0, Vec3i{0, 0, 0}, 4});
  const CsrMatrix mat = CsrMatrix::from(fermion_matrix(hcc, basis));
  LanczosOptions lopt;
  lopt.seed = seed;
  const double lam_min = lanczos_min_eigenvalue(mat, lopt).value;
  PowerOptions popt;
  popt.seed = seed;
  const double norm = std::abs(power_max_eigenvalue(mat, popt).value);
  return {lam_min, norm};
}

// Round trip between occupation vectors and anticommuting polynomials:
// pinned Berezin value, inner-product preservation, ladder-action transport.
double grassmann_correspondence_defect(std::uint64_t seed) {
  const int n = 3;
  GrassmannAlgebra g(n);
  double worst = 0.0;

  // Integrating the symbol list (c2, c1) against c1 c2 yields -1.
  {
    const std::uint32_t mask =
        (1u << g.plain_symbol(0)) | (1u << g.plain_symbol(1));
    GrassmannAlgebra::Element e = g.monomial(mask);
    e = g.integrate(e, g.plain_symbol(0));
    e = g.integrate(e, g.plain_symbol(1));
    worst = std::max(worst, std::abs(e[0] - cd{-1.0, 0.0}));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_vec = [&] {
    Eigen::VectorXcd v(1 << n);
    for (int i = 0; i < v.size(); ++i) v[i] = cd{gauss(rng), gauss(rng)};
    return v;
  };
  const Eigen::VectorXcd psi = random_vec(), phi = random_vec();
  const cd direct = psi.adjoint() * phi;
  worst = std::max(worst,
                   std::abs(g.pairing(g.from_fock(psi), g.from_fock(phi)) - direct));

  FermionOperator op;
  op += FermionOperator::from_sequence({{true, 0}, {false, 1}}, cd{gauss(rng), gauss(rng)});
  op += op.adjoint();
  op += FermionOperator::number(2) * cd{gauss(rng), 0.0};
  const SparseOp mat = fermion_matrix(op, n);
  const Eigen::VectorXcd via_matrix = mat * psi;
  const Eigen::VectorXcd via_symbols = g.to_fock(g.apply(op, g.from_fock(psi)));
  worst = std::max(worst, (via_matrix - via_symbols).cwiseAbs().maxCoeff());
  return worst;
}

int run_verify(const Config& cfg, const std::string& out_path) {
  const Model m = build_model(cfg);
  const double tol = tolerance_of(cfg, 1e-10);
  const double kin_tol = std::min(tol, 1e-12);
  std::vector<Check> checks;

  checks.push_back(
      make_check("polarization-frames", polarization_frame_defect(m.lattice), kin_tol));

  if (auto swap = parity_swap_defect(m.lattice)) {
    checks.push_back(make_check("polarization-parity-swap", *swap, kin_tol));
  } else {
    checks.push_back(make_skipped("polarization-parity-swap",
                                  "no lattice momenta in the swap-rule domain"));
  }

  checks.push_back(
      make_check("pair-kernel-spectrum", kernel_spectrum_defect(m.lattice), kin_tol));

  checks.push_back(make_check("bilinear-adjoint",
                              adjoint_pairing_defect(m.lattice, m.params.mass), tol));

  {
    const FermionOperator plain = coulomb_energy(m.lattice, m.params.mass,
                                                 m.params.coupling);
    const FermionOperator ordered = coulomb_energy_ordered(m.lattice, m.params);
    const FermionOperator channels = sum4(coulomb_truncation_terms(m.lattice, m.params));
    checks.push_back(make_check("ordering-channels-coulomb",
                                coeff_norm(plain - ordered - channels), tol));
  }
  {
    const FermionOperator plain = current_current_energy(m.lattice, m.params);
    const FermionOperator ordered = current_current_energy_ordered(m.lattice, m.params);
    const FermionOperator channels = sum4(current_truncation_terms(m.lattice, m.params));
    checks.push_back(make_check("ordering-channels-current",
                                coeff_norm(plain - ordered - channels), tol));
  }

  checks.push_back(make_check(
      "static-assembly-routes",
      coeff_norm(static_interaction(m.lattice, m.params) -
                 static_interaction_kernel_route(m.lattice, m.params)),
      tol));

  {
    const int n_modes = 4 * m.lattice.n_points();
    if (n_modes <= 12) {
      checks.push_back(make_check("anticommutation-relations", car_defect(m.lattice),
                                  kin_tol));
    } else {
      checks.push_back(make_skipped("anticommutation-relations",
                                    "full occupation basis exceeds the in-memory limit"));
    }
  }

  {
    const int n_modes = 4 * m.lattice.n_points();
    const FermionOperator hmod = modified_fermion_hamiltonian(m.lattice, m.params);
    const BogoliubovResult r = diagonalize_quadratic(extract_quadratic(hmod, n_modes));
    checks.push_back(make_check("bogoliubov-canonicality", r.canonical_defect, tol));
  }

  checks.push_back(make_check("grassmann-correspondence",
                              grassmann_correspondence_defect(seed_of(cfg)), tol));

  if (m.photons_max == 0) {
    checks.push_back(make_skipped("photon-commutation",
                                  "needs at least one photon occupation level"));
  } else if (m.lattice.n_photon_modes() > 16) {
    checks.push_back(make_skipped("photon-commutation",
                                  "more photon modes than the occupation basis supports"));
  } else {
    checks.push_back(make_check(
        "photon-commutation",
        photon_commutation_defect(BosonBasis(m.lattice.n_photon_modes(), m.photons_max)),
        kin_tol));
  }

  // Claimed positivity of the static interaction. This is a property claim,
  // not an assembly identity: the measured spectrum decides it, and on the
  // smallest lattices it genuinely fails (see the acceptance harness).
  if (m.lattice.n_points() <= 7) {
    const auto [lam_min, norm] = static_min_and_norm(m, seed_of(cfg));
    Check c;
    c.name = "static-interaction-positivity";
    c.measured = std::max(0.0, -lam_min);
    c.tolerance = tol * std::max(1.0, norm);
    c.status = c.measured <= c.tolerance ? "pass" : "fail";
    checks.push_back(c);
  } else {
    checks.push_back(make_skipped("static-interaction-positivity",
                                  "sector enumeration too large for this lattice"));
  }

  if (m.photons_max == 0) {
    checks.push_back(make_skipped("completed-square",
                                  "needs at least one photon occupation level"));
  } else if (m.lattice.n_points() > 3 || m.lattice.n_photon_modes() > 16) {
    checks.push_back(
        make_skipped("completed-square", "product dimension exceeds the identity-check limit"));
  } else {
    const FermionBasis fb = FermionBasis::full(m.lattice);
    const BosonBasis bb(m.lattice.n_photon_modes(), m.photons_max);
    checks.push_back(
        make_check("completed-square", completed_square_defect(m, fb, bb), tol));
  }

  bool any_fail = false;
  json records = json::array();
  for (const auto& c : checks) {
    json r;
    r["name"] = c.name;
    r["status"] = c.status;
    if (c.status == "skipped") {
      r["reason"] = c.reason;
    } else {
      r["residual"] = c.measured;
      r["tolerance"] = c.tolerance;
    }
    if (c.status == "fail") any_fail = true;
    records.push_back(r);
  }

  json doc;
  doc["command"] = "verify";
  doc["config"] = config_json(cfg);
  doc["seed"] = seed_of(cfg);
  doc["checks"] = records;
  doc["all_passed"] = !any_fail;
  emit_json(out_path, doc);
  return any_fail ? 1 : 0;
}

// ---------------------------------------------------------------------------
// scan: infrared sums, cutoff scan of the static norm, charge flow
// ---------------------------------------------------------------------------

void emit_csv(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  write_file_atomic(path, text);
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

int run_scan_ir(const Config& cfg, const std::string& kind,
                const std::string& out_path, const std::string& csv_path) {
  const std::vector<double> lengths = cfg.get_reals("ir.lengths");
  const double radius = cfg.get_real("ir.radius");
  if (lengths.empty()) throw ConfigError("ir.lengths must list at least one box side");
  for (double l : lengths)
    if (l <= 0.0) throw ConfigError("ir.lengths entries must be positive");
  if (radius <= 0.0) throw ConfigError("ir.radius must be positive");

  const auto rows = scans::ir_scan(lengths, radius);
  const double analytic = scans::ir_sum_analytic(radius);

  json jrows = json::array();
  std::ostringstream csv;
  csv << "length,unweighted,weighted,unweighted_over_analytic\n";
  bool weighted_bounded = true;
  for (const auto& r : rows) {
    json jr;
    jr["length"] = r.length;
    jr["unweighted"] = r.unweighted;
    jr["weighted"] = r.weighted;
    jr["unweighted_over_analytic"] = r.unweighted / analytic;
    jrows.push_back(jr);
    csv << format_real(r.length) << ',' << format_real(r.unweighted) << ','
        << format_real(r.weighted) << ','
        << format_real(r.unweighted / analytic) << '\n';
    if (r.weighted > r.unweighted * (1.0 + 1e-12)) weighted_bounded = false;
  }

  json doc;
  doc["command"] = "scan";
  doc["kind"] = kind;
  doc["config"] = config_json(cfg);
  doc["seed"] = seed_of(cfg);
  doc["analytic"] = analytic;
  doc["rows"] = jrows;
  if (kind == "polarization-ir") doc["weighted_bounded_by_unweighted"] = weighted_bounded;
  emit_json(out_path, doc);
  emit_csv(csv_path, csv.str());
  return 0;
}

int run_scan_triviality(const Config& cfg, const std::string& out_path,
                        const std::string& csv_path) {
  const std::vector<long> sizes_l = cfg.get_ints("triviality.sizes");
  if (sizes_l.empty())
    throw ConfigError("triviality.sizes must list at least one lattice size");
  std::vector<int> sizes;
  for (long s : sizes_l) {
    if (s != 1 && s != 3 && s != 7 && s != 19 && s != 27)
      throw ConfigError("triviality.sizes entries must come from {1, 3, 7, 19, 27}");
    sizes.push_back(static_cast<int>(s));
  }
  const double e_ren = cfg.get_real("triviality.e_ren");
  const double epsilon = cfg.get_real("triviality.epsilon");
  const double mass = cfg.get_real("mass");
  const int max_particles =
      static_cast<int>(cfg.get_int("triviality.max_particles", 6));

  const scans::TrivialityScan scan =
      scans::triviality_scan(sizes, e_ren, epsilon, mass, max_particles);

  auto rows_json = [](const std::vector<scans::TrivialityPoint>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
      json jr;
      jr["lattice_size"] = r.lattice_size;
      jr["coupling_squared"] = r.coupling_squared;
      jr["static_norm"] = r.static_norm;
      jr["remainder_norm"] = r.remainder_norm;
      a.push_back(jr);
    }
    return a;
  };

  std::ostringstream csv;
  csv << "run,lattice_size,coupling_squared,static_norm,remainder_norm\n";
  for (const auto& r : scan.scaled)
    csv << "scaled," << r.lattice_size << ',' << format_real(r.coupling_squared)
        << ',' << format_real(r.static_norm) << ','
        << format_real(r.remainder_norm) << '\n';
  for (const auto& r : scan.unscaled)
    csv << "unscaled," << r.lattice_size << ','
        << format_real(r.coupling_squared) << ',' << format_real(r.static_norm)
        << ',' << format_real(r.remainder_norm) << '\n';

  json doc;
  doc["command"] = "scan";
  doc["kind"] = "triviality";
  doc["config"] = config_json(cfg);
  doc["seed"] = seed_of(cfg);
  doc["scaled"] = rows_json(scan.scaled);
  doc["unscaled"] = rows_json(scan.unscaled);
  doc["trend"] = scan.trend;
  emit_json(out_path, doc);
  emit_csv(csv_path, csv.str());
  return 0;
}

int run_scan_z3(const Config& cfg, const std::string& out_path,
                const std::string& csv_path) {
  const double coupling = cfg.get_real("z3.coupling");
  const double cutoff_scale = cfg.get_real("z3.cutoff_scale");
  const double mass = cfg.get_real("mass");
  if (cutoff_scale <= 0.0) throw ConfigError("z3.cutoff_scale must be positive");

  json doc;
  doc["command"] = "scan";
  doc["kind"] = "z3";
  doc["config"] = config_json(cfg);
  doc["seed"] = seed_of(cfg);
  const double pole = scans::charge_flow_pole(coupling, mass);
  if (std::isfinite(pole)) doc["pole_cutoff_scale"] = pole;
  // The pole scale overflows double precision already for moderate
  // couplings; its decimal logarithm is always representable.
  doc["log10_pole_cutoff_scale"] =
      2.0 * std::log10(mass) +
      12.0 * M_PI * M_PI / (coupling * coupling * std::log(10.0));

  std::ostringstream csv;
  csv << "coupling,cutoff_scale,status,z3,bare_coupling_squared\n";
  try {
    const scans::ChargeFlow flow = scans::charge_flow(coupling, cutoff_scale, mass);
    doc["status"] = "ok";
    doc["z3"] = flow.z3;
    doc["bare_coupling_squared"] = flow.bare_coupling_squared;
    csv << format_real(coupling) << ',' << format_real(cutoff_scale) << ",ok,"
        << format_real(flow.z3) << ',' << format_real(flow.bare_coupling_squared)
        << '\n';
  } catch (const std::domain_error& e) {
    // At or past the pole the flow has no finite bare coupling; that is a
    // reportable result of the scan, not a usage error.
    doc["status"] = "pole";
    doc["message"] = e.what();
    csv << format_real(coupling) << ',' << format_real(cutoff_scale)
        << ",pole,,\n";
  }
  emit_json(out_path, doc);
  emit_csv(csv_path, csv.str());
  return 0;
}

int run_scan(const Config& cfg, const std::string& kind,
             const std::string& out_path, const std::string& csv_path) {
  if (kind == "ir" || kind == "polarization-ir")
    return run_scan_ir(cfg, kind, out_path, csv_path);
  if (kind == "triviality") return run_scan_triviality(cfg, out_path, csv_path);
  if (kind == "z3") return run_scan_z3(cfg, out_path, csv_path);
  throw ConfigError("unknown scan kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cutoff-QED lab: spectra, quasiparticle pipelines, identity checks, scans"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, scan_kind;
  std::optional<std::uint64_t> seed_override;
  std::optional<double> tol_override;
  bool dense = false, iterative = false, corrupt_mu = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_path, "write the JSON report here (default: stdout)");
    sub->add_option("--seed", seed_override, "override the configured seed");
    sub->add_option("--tol", tol_override, "override the configured tolerance");
  };
  auto add_method = [&](CLI::App* sub) {
    sub->add_flag("--dense", dense, "force the dense eigensolver");
    sub->add_flag("--iterative", iterative, "force the iterative eigensolver");
  };

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "lowest eigenvalues of the full Hamiltonian");
  add_common(spectrum);
  add_method(spectrum);

  CLI::App* mu = app.add_subcommand(
      "mu", "vacuum-energy shift of the quadratic model and the lower-bound verdict");
  add_common(mu);
  add_method(mu);
  mu->add_flag("--selftest-corrupt-mu", corrupt_mu,
               "self test: corrupt the shift to exercise the failing verdict");

  CLI::App* verify = app.add_subcommand(
      "verify", "structural identity checks, one record per identity");
  add_common(verify);

  CLI::App* scan = app.add_subcommand("scan", "parameter scans (JSON + optional CSV)");
  scan->add_option("kind", scan_kind, "ir | polarization-ir | triviality | z3")
      ->required()
      ->check(CLI::IsMember({"ir", "polarization-ir", "triviality", "z3"}));
  add_common(scan);
  scan->add_option("--csv", csv_path, "also write the rows as CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Config cfg = Config::parse_file(config_path);
    if (seed_override) cfg.set("seed", std::to_string(*seed_override));
    if (tol_override) cfg.set("tolerance", format_real(*tol_override));
    if (dense && iterative)
      throw ConfigError("--dense and --iterative are mutually exclusive");

    if (spectrum->parsed()) return run_spectrum(cfg, out_path, dense, iterative);
    if (mu->parsed()) return run_mu(cfg, out_path, dense, iterative, corrupt_mu);
    if (verify->parsed()) return run_verify(cfg, out_path);
    if (scan->parsed()) return run_scan(cfg, scan_kind, out_path, csv_path);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
