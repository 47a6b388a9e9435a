#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <set>

#include <Eigen/Eigenvalues>

#include "cgs/capacitance.hpp"
#include "cgs/classical.hpp"
#include "cgs/effective_quantum.hpp"
#include "cgs/eigensolver.hpp"
#include "cgs/fugacity.hpp"
#include "cgs/hadamard.hpp"
#include "cgs/loops.hpp"
#include "cgs/monte_carlo.hpp"
#include "cgs/rng.hpp"
#include "cgs/squid.hpp"
#include "cgs/wkb.hpp"
#include "cgs/wxy.hpp"
#include "output.hpp"

#ifndef CGSLAB_VERSION_STRING
#define CGSLAB_VERSION_STRING "0.0.0"
#endif

namespace cgslab {

namespace {

using namespace cgs;

double num(const json& p, const char* key) { return p.at(key).get<double>(); }
std::uint64_t u64(const json& p, const char* key) { return p.at(key).get<std::uint64_t>(); }

json dense_json(const IntMatrix4& m) {
  json rows = json::array();
  for (const auto& r : m) rows.push_back(json(r));
  return rows;
}

json levels_json(const std::vector<SpectrumLevel>& levels) {
  json out = json::array();
  for (const auto& l : levels) out.push_back({{"energy", l.energy}, {"degeneracy", l.degeneracy}});
  return out;
}

SignMatrix coupling_matrix(const json& p) {
  if (p.at("W").is_null()) return SignMatrix::standard();
  IntMatrix4 m{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = p.at("W")[r][c].get<int>();
  return SignMatrix(m);
}

// ---------------------------------------------------------------- symmetry

std::vector<Task> symmetry_tasks(const RunConfig& c) {
  return {{"automorphisms", [&c] {
             const SignMatrix w = coupling_matrix(c.params);
             const RightFamily family =
                 c.params.at("family") == "monomial" ? RightFamily::Monomial : RightFamily::Diagonal;
             const auto pairs = enumerate_automorphism_pairs(w, family);
             const std::set<AutomorphismPair> set(pairs.begin(), pairs.end());
             bool closed = true;
             for (const auto& a : pairs)
               for (const auto& b : pairs) closed = closed && set.count(compose(a, b));
             TaskOutput out;
             json list = json::array();
             for (const auto& pr : pairs)
               list.push_back({{"L", dense_json(pr.left.dense())},
                               {"R", dense_json(pr.right.dense())},
                               {"right_diagonal", pr.right_is_diagonal()},
                               {"verified", verify_automorphism(w, pr)}});
             const auto example = AutomorphismPair::standard_example();
             json band = json::array();
             for (const auto& [value, mult] : flat_band_spectrum(w))
               band.push_back({{"value", value}, {"multiplicity", mult}});
             out.summary = {{"W", dense_json(w.entries())},
                            {"is_hadamard", is_hadamard(w)},
                            {"family", c.params.at("family")},
                            {"count", pairs.size()},
                            {"closed_under_composition", closed},
                            {"contains_example_pair", set.count(example) > 0},
                            {"example_pair", {{"L", dense_json(example.left.dense())},
                                              {"R", dense_json(example.right.dense())}}},
                            {"flat_band", band},
                            {"automorphisms", list}};
             return out;
           }}};
}

// --------------------------------------------------------------- classical

PhaseConfig crystal_ground_state(const LatticeGeometry& g, std::uint64_t seed) {
  const PairingConfig pc = PairingConfig::crystal(g);
  const LoopCovering cov = loops_from_pairing(pc, g);
  CounterRng rng(seed, 1);
  std::vector<double> phases;
  for (std::size_t k = 0; k < cov.loops.size(); ++k) phases.push_back(kPi * rng.uniform());
  return phases_from_pairing(g, pc, phases, SignMatrix::standard());
}

std::vector<Task> classical_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (FlipPath path : {FlipPath::Direct, FlipPath::Merge}) {
    const std::string name = path == FlipPath::Direct ? "flip_direct" : "flip_merge";
    tasks.push_back({name, [&c, path, name] {
                       const auto g = build_lattice(c.lx, c.ly);
                       const CouplingParams p{num(c.params, "J"), SignMatrix::standard()};
                       const auto& pq = c.params.at("plaquette");
                       const PlaquetteIndex plaq = g.plaquette(pq[0].get<int>(), pq[1].get<int>());
                       const PhaseConfig gs = crystal_ground_state(g, c.seed);
                       const FlipPathResult r =
                           flip_path_energy(gs, p, g, plaq, path, static_cast<int>(u64(c.params, "steps")));
                       TaskOutput out;
                       Table t{name, {"step", "delta_theta", "energy"}, {}};
                       for (const auto& s : r.samples) t.rows.push_back({s.step, s.delta_theta, s.energy});
                       out.tables.push_back(std::move(t));
                       out.summary = {{"max_excursion", r.max_excursion},
                                      {"ground_energy", josephson_energy(gs, p, g)},
                                      {"final_energy", josephson_energy(r.final_config, p, g)},
                                      {"samples", r.samples.size()}};
                       return out;
                     }});
  }
  tasks.push_back({"manifold", [&c] {
                     const CouplingParams p{num(c.params, "J"), SignMatrix::standard()};
                     const std::uint64_t n = u64(c.params, "manifold_samples");
                     CounterRng rng(c.seed, 2);
                     double lowest = 0.0, worst_on = 0.0;
                     std::uint64_t below = 0, on_manifold = 0;
                     for (std::uint64_t k = 0; k < n; ++k) {
                       SitePhases th{};
                       if (k % 2 == 0) {
                         for (auto& t : th) t = kTwoPi * rng.uniform();
                       } else {
                         const Pairing pr = kAllPairings[rng.next_u32() % 3];
                         const double ab[2] = {kTwoPi * rng.uniform(), kTwoPi * rng.uniform()};
                         const int partner = partner_leg(pr, 0);
                         // Offsets of pi on an even number of legs.
                         const std::uint32_t mask = rng.next_u32() % 8;
                         int flips = 0;
                         for (int leg = 0; leg < 4; ++leg) {
                           const bool first_pair = leg == 0 || leg == partner;
                           const bool flip = leg < 3 ? ((mask >> leg) & 1u) : (flips % 2 == 1);
                           flips += flip;
                           th[leg] = ab[first_pair ? 0 : 1] + (flip ? kPi : 0.0);
                         }
                       }
                       const double e = site_min_energy(th, p);
                       lowest = std::min(lowest, e);
                       below += e < -8.0 * p.J - 1e-12 * p.J;
                       if (is_min_manifold(th, 1e-9).on_manifold) {
                         ++on_manifold;
                         worst_on = std::max(worst_on, std::abs(e + 8.0 * p.J));
                       }
                     }
                     TaskOutput out;
                     out.summary = {{"samples", n},
                                    {"lowest_energy", lowest},
                                    {"below_bound", below},
                                    {"on_manifold", on_manifold},
                                    {"max_gap_on_manifold", worst_on}};
                     return out;
                   }});
  tasks.push_back({"link_shift", [&c] {
                     const auto g = build_lattice(c.lx, c.ly);
                     const CouplingParams p{num(c.params, "J"), SignMatrix::standard()};
                     const PhaseConfig gs = crystal_ground_state(g, c.seed);
                     TaskOutput out;
                     out.summary = {{"fixed_matter_cost", single_link_shift_cost(gs, p, g, LinkIndex(0), false)},
                                    {"retethered_cost", single_link_shift_cost(gs, p, g, LinkIndex(0), true)},
                                    {"star_gap", classical_star_gap(p.J)}};
                     return out;
                   }});
  return tasks;
}

// ------------------------------------------------------------------- loops

std::vector<Task> loops_tasks(const RunConfig& c, unsigned workers) {
  std::vector<Task> tasks;
  tasks.push_back({"z2", [&c] {
                     const auto g = build_lattice(c.lx, c.ly);
                     const LoopCovering crystal = loops_from_pairing(PairingConfig::crystal(g), g);
                     TaskOutput out;
                     out.summary = {{"z2_configs", count_z2_configs(g)},
                                    {"crystal_loops", crystal.stats.n_loops},
                                    {"links", g.num_links()}};
                     return out;
                   }});
  if (c.params.at("enumerate").get<bool>()) {
    tasks.push_back({"enumeration", [&c, workers] {
                       const auto g = build_lattice(c.lx, c.ly);
                       const LoopEnumeration e = enumerate_loop_coverings(g, workers);
                       const auto has = [&](const PairingConfig& pc) {
                         return std::find(e.argmax.begin(), e.argmax.end(), pc) != e.argmax.end();
                       };
                       TaskOutput out;
                       Table counts{"loop_counts", {"n_loops", "coverings"}, {}};
                       for (std::size_t n = 0; n < e.count_by_loops.size(); ++n)
                         if (e.count_by_loops[n]) counts.rows.push_back({n, e.count_by_loops[n]});
                       Table sectors{"loop_sectors", {"n_loops", "n_winding", "coverings"}, {}};
                       for (const auto& [key, n] : e.count_by_sector) sectors.rows.push_back({key.first, key.second, n});
                       out.tables = {counts, sectors};
                       const double lambda = num(c.params, "lambda");
                       out.summary = {{"coverings", e.total},
                                      {"max_loops", e.max_loops},
                                      {"argmax_size", e.argmax.size()},
                                      {"crystal_in_argmax", has(PairingConfig::crystal(g, 0)) &&
                                                                has(PairingConfig::crystal(g, 1))},
                                      {"lambda", lambda},
                                      {"partition_function", e.partition_function(lambda)}};
                       return out;
                     }});
  }
  if (!c.params.at("fugacity_K").empty()) {
    tasks.push_back({"fugacity", [&c] {
                       TaskOutput out;
                       Table t{"fugacity",
                               {"p", "K", "value", "error", "asymptote", "ratio", "cycle_corrected_ratio", "converged"},
                               {}};
                       QuadratureSpec spec;
                       spec.seed = c.seed;
                       for (const auto& p : c.params.at("fugacity_p"))
                         for (const auto& k : c.params.at("fugacity_K")) {
                           const FugacityResult r = fugacity_integral(p.get<int>(), k.get<double>(), spec);
                           t.rows.push_back({r.p, r.K, r.value, r.error, r.asymptote, r.ratio,
                                             r.cycle_corrected_ratio, r.converged});
                         }
                       out.summary = {{"evaluations", t.rows.size()}};
                       out.tables.push_back(std::move(t));
                       return out;
                     }});
  }
  return tasks;
}

// ---------------------------------------------------------------------- mc

std::vector<Task> mc_tasks(const RunConfig& c, unsigned workers) {
  return {{"sample", [&c, workers] {
             const auto g = build_lattice(c.lx, c.ly);
             McOptions o;
             o.K_eff = num(c.params, "K_eff");
             o.mode = c.params.at("mode") == "full" ? McMode::FullThetaPhi : McMode::EffectiveTheta;
             o.sweeps = u64(c.params, "sweeps");
             o.burn_in = u64(c.params, "burn_in");
             o.measure_every = u64(c.params, "measure_every");
             o.seed = c.seed;
             o.start = c.params.at("start") == "crystal" ? McStart::Crystal : McStart::Random;
             o.loop_tolerance = num(c.params, "loop_tolerance");
             o.plaquette_moves = c.params.at("plaquette_moves").get<bool>();
             o.n_blocks = u64(c.params, "blocks");
             const McResult r = mc_sample_chains(g, CouplingParams{}, o, u64(c.params, "chains"), workers);

             TaskOutput out;
             Table lengths{"loop_lengths", {"length", "count"}, {}};
             for (const auto& [len, n] : r.stats.length_histogram) lengths.rows.push_back({len, n});
             Table corr{"correlators", {"distance", "mean", "error", "pairs"}, {}};
             for (const auto& b : r.stats.correlators) corr.rows.push_back({b.distance, b.mean, b.error, b.pairs});
             Table series{"series", {"measurement", "energy", "mean_loop_length"}, {}};
             for (std::size_t i = 0; i < r.energy_series.size(); ++i)
               series.rows.push_back({i, r.energy_series[i], r.loop_length_series[i]});
             out.tables = {lengths, corr, series};
             const auto& d = r.diagnostics;
             out.summary = {{"mean_loop_length", r.mean_loop_length},
                            {"mean_loop_length_error", r.mean_loop_length_error},
                            {"mean_n_loops", r.mean_n_loops},
                            {"mean_n_loops_error", r.mean_n_loops_error},
                            {"mean_energy", r.mean_energy},
                            {"mean_energy_error", r.mean_energy_error},
                            {"diagnostics", {{"link_acceptance", d.link_acceptance},
                                             {"matter_acceptance", d.matter_acceptance},
                                             {"plaquette_acceptance", d.plaquette_acceptance},
                                             {"link_width", d.link_width},
                                             {"matter_width", d.matter_width},
                                             {"measurements", d.measurements},
                                             {"unresolved_sites", d.unresolved_sites},
                                             {"warnings", d.warnings}}}};
             return out;
           }}};
}

// ---------------------------------------------------------------------- ed

std::vector<Task> ed_tasks(const RunConfig& c, unsigned workers) {
  return {{"spectrum", [&c, workers] {
             const auto g = build_lattice(c.lx, c.ly);
             require_quantum_size(g);
             const double lj = num(c.params, "lambda_J");
             const StabilizerModelParams p =
                 c.params.at("lambda_flip_b").is_null()
                     ? StabilizerModelParams::uniform(g, lj, num(c.params, "lambda_flip"))
                     : StabilizerModelParams::two_valued(g, lj, num(c.params, "lambda_flip"),
                                                         num(c.params, "lambda_flip_b"));
             const SparseMatrix h = build_effective_hamiltonian(g, p);
             EigenOptions eo;
             eo.n_low = u64(c.params, "n_low");
             eo.tol = num(c.params, "tol");
             eo.seed = c.seed;
             eo.workers = workers;
             EigenResult r;
             if (static_cast<std::size_t>(h.rows()) <= eo.dense_limit) {
               r.values = full_spectrum(h);
               r.converged = true;
               r.method = "dense";
             } else {
               r = exact_diagonalize(h, eo);
             }
             const std::vector<double> oracle = expand_levels(stabilizer_spectrum_oracle(g, p), r.values.size());

             TaskOutput out;
             Table t{"spectrum", {"index", "energy", "oracle", "difference"}, {}};
             double worst = 0.0;
             for (std::size_t i = 0; i < r.values.size(); ++i) {
               const double diff = r.values[i] - oracle[i];
               worst = std::max(worst, std::abs(diff));
               t.rows.push_back({i, r.values[i], oracle[i], diff});
             }
             out.tables.push_back(std::move(t));
             json conservation = nullptr;
             if (c.params.at("conservation").get<bool>() && h.rows() <= (1 << 16)) {
               const ConservationReport cr = check_conserved_plaquettes(h, g);
               conservation = {{"generator_commutator", cr.generator_commutator},
                               {"hamiltonian_commutator", cr.hamiltonian_commutator}};
             }
             double residual = 0.0;
             for (double x : r.residuals) residual = std::max(residual, x);
             out.summary = {{"dimension", h.rows()},
                            {"method", r.method},
                            {"converged", r.converged},
                            {"max_residual", residual},
                            {"levels", levels_json(group_levels(r.values))},
                            {"max_oracle_difference", worst},
                            {"conservation", conservation}};
             return out;
           }}};
}

// --------------------------------------------------------------------- wxy

std::vector<Task> wxy_tasks(const RunConfig& c, unsigned workers) {
  return {{"wxy", [&c, workers] {
             const std::string kind = c.params.at("cluster").get<std::string>();
             const WxyCluster cluster = kind == "waffle" ? WxyCluster::single_waffle()
                                        : kind == "ring" ? WxyCluster::two_site_ring()
                                                         : WxyCluster::from_lattice(build_lattice(c.lx, c.ly));
             WxyParams p;
             p.J = num(c.params, "J");
             p.h_matter = num(c.params, "h_matter");
             p.h_gauge = num(c.params, "h_gauge");
             const WxyConservation cons = check_wxy_conservation(cluster, p);
             const SparseMatrix h = wxy_hamiltonian(cluster, p);
             EigenOptions eo;
             eo.n_low = std::min<std::size_t>(u64(c.params, "n_low"), static_cast<std::size_t>(h.rows()));
             eo.seed = c.seed;
             eo.workers = workers;
             const EigenResult r = exact_diagonalize(h, eo);
             TaskOutput out;
             Table t{"wxy_levels", {"index", "energy"}, {}};
             for (std::size_t i = 0; i < r.values.size(); ++i) t.rows.push_back({i, r.values[i]});
             out.tables.push_back(std::move(t));
             out.summary = {{"cluster", cluster.name},
                            {"spins", cluster.n_spins()},
                            {"generators", cluster.generators.size()},
                            {"generator_commutator", cons.generator_commutator},
                            {"hamiltonian_commutator", cons.hamiltonian_commutator},
                            {"bias_commutator", cons.bias_commutator},
                            {"sz_commutator", cons.sz_commutator},
                            {"method", r.method},
                            {"levels", levels_json(group_levels(r.values))}};
             return out;
           }}};
}

// --------------------------------------------------------------------- wkb

std::vector<Task> wkb_tasks(const RunConfig& c) {
  return {{"probe", [&c] {
             WkbParams p;
             p.J = num(c.params, "J");
             p.C = num(c.params, "C");
             p.k = num(c.params, "k");
             p.K = num(c.params, "K");
             p.validate();
             const auto grid = log_grid(num(c.params, "jc_min"), num(c.params, "jc_max"), u64(c.params, "points"));
             const ScalingProbe probe = scaling_probe(p, grid);
             TaskOutput out;
             Table t{"wkb", {"jc", "lambda_over_J"}, {}};
             for (std::size_t i = 0; i < probe.jc.size(); ++i) t.rows.push_back({probe.jc[i], probe.lambda_over_J[i]});
             out.tables.push_back(std::move(t));
             out.summary = {{"exponent", probe.exponent},
                            {"fitted_K", probe.prefactor},
                            {"max_residual", probe.max_residual},
                            {"flip_amplitude", wkb_flip_amplitude(p)},
                            {"turnover_jc", wkb_turnover(p)},
                            {"omega", characteristic_frequency(p.J, p.C)}};
             return out;
           }}};
}

// ----------------------------------------------------------------- circuit

std::vector<Task> circuit_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  tasks.push_back({"squid", [&c] {
                     const json& s = c.params.at("squid");
                     SquidParams p;
                     p.J_w = num(s, "J_w");
                     p.J_t = num(s, "J_t");
                     p.Phi_w = num(s, "Phi_w");
                     p.Phi_t = num(s, "Phi_t");
                     p.e_LJ = num(s, "e_LJ");
                     p.validate();
                     const HarmonicExpansion ex = squid_harmonic_expansion(p);
                     const Phasor ph = squid_effective_phasor(p);
                     const std::uint64_t n = u64(s, "points");
                     TaskOutput out;
                     Table t{"squid_potential", {"delta", "exact", "series", "difference"}, {}};
                     std::vector<double> diff;
                     for (std::uint64_t i = 0; i < n; ++i) {
                       const double d = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
                       const double exact = squid_potential_exact(d, p).energy;
                       const double series = ex.value(d, p);
                       diff.push_back(exact - series);
                       t.rows.push_back({d, exact, series, exact - series});
                     }
                     double mean = 0.0;
                     for (double x : diff) mean += x / static_cast<double>(n);
                     double worst = 0.0;
                     for (double x : diff) worst = std::max(worst, std::abs(x - mean));
                     out.tables.push_back(std::move(t));
                     out.summary = {{"coefficients", {{"c1", ex.c1}, {"c_d", ex.c_d}, {"c2", ex.c2}, {"c3", ex.c3}}},
                                    {"phasor", {{"J_eff", ph.J_eff}, {"Phi_tot", ph.Phi_tot},
                                                {"well_conditioned", ph.well_conditioned}}},
                                    {"constant_offset", mean},
                                    {"max_residual_mean_removed", worst}};
                     return out;
                   }});
  tasks.push_back({"calibration", [&c] {
                     const json& cal = c.params.at("calibration");
                     const double d_J = num(cal, "d_J");
                     std::vector<JunctionTarget> targets;
                     for (const auto& t : cal.at("targets"))
                       targets.push_back({t.at("name").get<std::string>(), t.at("sign").get<int>(),
                                          num(t, "J_target"), num(t, "J_w_actual")});
                     // Random draws of large-junction disorder around J_target = 1.
                     CounterRng rng(c.seed, 3);
                     std::uint64_t infeasible = 0;
                     const double spread = num(cal, "spread");
                     for (std::uint64_t k = 0; k < u64(cal, "draws"); ++k) {
                       JunctionTarget t{"draw" + std::to_string(k), rng.next_u32() % 2 ? -1 : 1, 1.0,
                                        1.0 + spread * (2.0 * rng.uniform() - 1.0)};
                       if (calibration_feasible(t, d_J)) {
                         targets.push_back(t);
                       } else {
                         ++infeasible;
                       }
                     }
                     TaskOutput out;
                     Table t{"calibration",
                             {"name", "sign", "J_target", "J_w_actual", "Phi_w", "Phi_t", "J_t", "J_eff", "Phi_tot",
                              "relative_error"},
                             {}};
                     double worst = 0.0;
                     if (!targets.empty()) {
                       const auto cals = calibrate_fluxes(targets, d_J);
                       for (std::size_t i = 0; i < cals.size(); ++i) {
                         const auto& k = cals[i];
                         worst = std::max(worst, k.relative_error);
                         t.rows.push_back({k.name, targets[i].sign, targets[i].J_target, targets[i].J_w_actual,
                                           k.Phi_w, k.Phi_t, k.J_t, k.J_eff, k.Phi_tot, k.relative_error});
                       }
                     }
                     out.tables.push_back(std::move(t));
                     out.summary = {{"d_J", d_J},
                                    {"calibrated", targets.size()},
                                    {"infeasible_draws", infeasible},
                                    {"max_relative_error", worst}};
                     return out;
                   }});
  tasks.push_back({"capacitance", [&c] {
                     const json& cp = c.params.at("capacitance");
                     SiteCapacitances sc{num(cp, "C_J"),     num(cp, "C_m"),      num(cp, "C_g"),
                                         num(cp, "C_m_par"), num(cp, "C_m_par2"), num(cp, "C_m_par3"),
                                         num(cp, "C_g_par"), num(cp, "C_g_par2"), num(cp, "C_g_par3")};
                     const Matrix8 C = build_capacitance_matrix(sc);
                     const Eigen::SelfAdjointEigenSolver<Matrix8> es(C, Eigen::EigenvaluesOnly);
                     TaskOutput out;
                     Table t{"capacitance_matrix", {"row", "c0", "c1", "c2", "c3", "c4", "c5", "c6", "c7"}, {}};
                     json rows = json::array();
                     for (int r = 0; r < 8; ++r) {
                       std::vector<json> row{r};
                       json jr = json::array();
                       for (int k = 0; k < 8; ++k) {
                         row.push_back(C(r, k));
                         jr.push_back(C(r, k));
                       }
                       t.rows.push_back(std::move(row));
                       rows.push_back(jr);
                     }
                     out.tables.push_back(std::move(t));
                     out.summary = {{"matrix", rows},
                                    {"min_eigenvalue", es.eigenvalues().minCoeff()},
                                    {"junction_dominant", sc.junction_dominant()},
                                    {"symmetry_breaking_metric", symmetry_breaking_metric(sc)}};
                     return out;
                   }});
  return tasks;
}

std::vector<Task> tasks_for(const RunConfig& c, unsigned workers) {
  switch (c.command) {
    case Command::Symmetry: return symmetry_tasks(c);
    case Command::Classical: return classical_tasks(c);
    case Command::Loops: return loops_tasks(c, workers);
    case Command::Mc: return mc_tasks(c, workers);
    case Command::Ed: return ed_tasks(c, workers);
    case Command::Wxy: return wxy_tasks(c, workers);
    case Command::Wkb: return wkb_tasks(c);
    case Command::Circuit: return circuit_tasks(c);
  }
  return {};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string run_id(const RunConfig& config) {
  json j = config.echo();
  j["output"].erase("dir");  // where results land does not change them
  return sha256_hex(j.dump() + CGSLAB_VERSION_STRING).substr(0, 16);
}

RunManifest run(const RunConfig& config, unsigned workers) {
  RunManifest m;
  m.run_id = run_id(config);
  m.version = CGSLAB_VERSION_STRING;
  m.timestamp = utc_timestamp();
  m.seed = config.seed;
  m.workers = workers;
  m.config = config.echo();

  const std::vector<Task> tasks = tasks_for(config, workers);
  const std::vector<TaskResult> results = run_tasks(tasks, workers, command_name(config.command));

  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) throw cgs::Error(cgs::ErrorKind::Config, "cannot create output directory '" + config.out_dir + "'");

  json doc;
  doc["run_id"] = m.run_id;
  doc["manifest"] = "manifest.json";
  doc["command"] = command_name(config.command);
  doc["tasks"] = json::object();
  for (const auto& r : results) {
    m.tasks.push_back({r.name, r.wall_seconds});
    json task = r.output.summary;
    for (const auto& t : r.output.tables) {
      if (config.format == OutputFormat::Csv) {
        m.files.push_back(write_file(config.out_dir, t.name + ".csv", render_csv(t, m.run_id)));
        task["tables"][t.name] = t.name + ".csv";
      } else {
        task["tables"][t.name] = {{"columns", t.columns}, {"rows", t.rows}};
      }
    }
    doc["tasks"][r.name] = task;
  }
  m.files.push_back(write_file(config.out_dir, "results.json", doc.dump(2) + "\n"));
  write_file(config.out_dir, "manifest.json", m.to_json().dump(2) + "\n");
  return m;
}

}  // namespace cgslab
