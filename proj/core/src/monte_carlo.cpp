#include "cgs/monte_carlo.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <thread>

#include "cgs/error.hpp"
#include "cgs/rng.hpp"

namespace cgs {

namespace {

constexpr std::uint64_t kInitStreamBit = 1ULL << 63;
constexpr std::uint64_t kAdaptInterval = 100;

struct Tables {
  std::vector<std::array<std::uint32_t, 4>> star;    // links of each site, N E S W
  std::vector<std::array<LinkEnd, 2>> ends;          // per link
  std::vector<std::array<std::uint32_t, 4>> plaq;    // links per plaquette
  std::vector<std::array<std::uint32_t, 4>> corner;  // sites per plaquette
  std::array<MonomialMatrix, 4> corner_partner;      // L for each corner position

  Tables(const LatticeGeometry& g, const SignMatrix& w) {
    star.resize(g.num_sites());
    for (std::size_t s = 0; s < g.num_sites(); ++s) {
      const auto links = g.star_links(SiteIndex(s));
      for (int k = 0; k < 4; ++k) star[s][k] = static_cast<std::uint32_t>(links[k].value);
    }
    ends.reserve(g.num_links());
    for (std::size_t l = 0; l < g.num_links(); ++l) ends.push_back(g.link_ends(LinkIndex(l)));
    plaq.resize(g.num_plaquettes());
    corner.resize(g.num_plaquettes());
    for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
      const auto links = g.plaquette_links(PlaquetteIndex(p));
      const auto sites = g.plaquette_sites(PlaquetteIndex(p));
      for (int k = 0; k < 4; ++k) {
        plaq[p][k] = static_cast<std::uint32_t>(links[k].value);
        corner[p][k] = static_cast<std::uint32_t>(sites[k].value);
      }
    }
    for (int c = 0; c < 4; ++c) {
      std::array<int, 4> r{1, 1, 1, 1};
      for (int leg : g.plaquette_legs(PlaquetteIndex(0), c)) r[leg] = -1;
      corner_partner[c] = left_partner(w, r);
    }
  }
};

SitePhases gather_theta(const std::vector<double>& theta, const std::array<std::uint32_t, 4>& star) {
  return {theta[star[0]], theta[star[1]], theta[star[2]], theta[star[3]]};
}

SitePhases gather_phi(const std::vector<double>& phi, std::size_t site) {
  return {phi[4 * site], phi[4 * site + 1], phi[4 * site + 2], phi[4 * site + 3]};
}

class Chain {
 public:
  Chain(const LatticeGeometry& g, const CouplingParams& params, const McOptions& opt)
      : g_(g), params_(params), opt_(opt), t_(g, params.W), beta_(opt.K_eff / params.J) {
    full_ = opt.mode == McMode::FullThetaPhi;
    init_state();
    site_e_.resize(g.num_sites());
    for (std::size_t s = 0; s < g.num_sites(); ++s) site_e_[s] = site_energy(s);
    link_width_ = opt.initial_width;
    matter_width_ = opt.initial_width;

    const std::uint64_t uniforms =
        2 * g.num_links() + (full_ ? 2 * g.num_matter() : 0) + g.num_plaquettes();
    blocks_per_sweep_ = (2 * uniforms + 3) / 4 + 1;
  }

  McResult run() {
    McResult result;
    std::vector<double> n_loops_series;
    std::vector<std::vector<double>> corr_series;  // per measurement, per bin
    setup_correlator_bins();
    LoopTracer tracer(g_);

    const std::uint64_t total = opt_.burn_in + opt_.sweeps;
    for (std::uint64_t sweep = 0; sweep < total; ++sweep) {
      CounterRng rng(opt_.seed, opt_.chain_id, sweep * blocks_per_sweep_);
      do_sweep(rng);
      if (sweep < opt_.burn_in) {
        if ((sweep + 1) % kAdaptInterval == 0) adapt();
        if (sweep + 1 == opt_.burn_in) reset_counters();
        continue;
      }
      const std::uint64_t prod = sweep - opt_.burn_in;
      if ((prod + 1) % opt_.measure_every != 0) continue;

      result.energy_series.push_back(total_energy() / params_.J);
      const PairingConfig pc = measure_pairings(result.diagnostics.unresolved_sites);
      int n_winding = 0;
      const int n = tracer.count(pc.pairing.data(), &n_winding);
      n_loops_series.push_back(static_cast<double>(n));
      result.loop_length_series.push_back(static_cast<double>(g_.num_links()) / n);
      const LoopCovering cov = loops_from_pairing(pc, g_);
      for (const auto& [len, count] : cov.stats.length_histogram)
        result.stats.length_histogram[len] += count;
      corr_series.push_back(measure_correlators());
    }

    McDiagnostics& d = result.diagnostics;
    d.measurements = result.energy_series.size();
    d.link_acceptance = ratio(link_acc_, link_tries_);
    d.matter_acceptance = ratio(matter_acc_, matter_tries_);
    d.plaquette_acceptance = ratio(plaq_acc_, plaq_tries_);
    d.link_width = link_width_;
    d.matter_width = full_ ? matter_width_ : 0.0;
    warn_acceptance(d, "link", d.link_acceptance, link_tries_);
    if (full_) warn_acceptance(d, "matter", d.matter_acceptance, matter_tries_);
    if (d.unresolved_sites > 0)
      d.warnings.push_back(std::to_string(d.unresolved_sites) +
                           " quenched sites matched no pairing within tolerance");

    if (d.measurements > 0) {
      const std::size_t blocks = std::min(opt_.n_blocks, d.measurements);
      std::tie(result.mean_energy, result.mean_energy_error) =
          block_mean_error(result.energy_series, blocks);
      std::tie(result.mean_loop_length, result.mean_loop_length_error) =
          block_mean_error(result.loop_length_series, blocks);
      std::tie(result.mean_n_loops, result.mean_n_loops_error) =
          block_mean_error(n_loops_series, blocks);
      result.stats.n_loops = static_cast<std::size_t>(std::lround(result.mean_n_loops));
      result.stats.correlators = summarize_correlators(corr_series, blocks);
    }
    // Winding count of the final quenched state.
    {
      std::size_t ignored = 0;
      const PairingConfig pc = measure_pairings(ignored);
      int n_winding = 0;
      tracer.count(pc.pairing.data(), &n_winding);
      result.stats.n_winding = static_cast<std::size_t>(n_winding);
    }
    result.final_config = state_;
    result.final_config.canonicalize();
    return result;
  }

 private:
  static double ratio(std::uint64_t a, std::uint64_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  }

  static void warn_acceptance(McDiagnostics& d, const char* what, double rate, std::uint64_t tries) {
    if (tries == 0) return;
    if (rate < 0.05 || rate > 0.95)
      d.warnings.push_back(std::string(what) + " acceptance " + std::to_string(rate) +
                           " outside [0.05, 0.95]");
  }

  void init_state() {
    state_ = PhaseConfig::zeros(g_);
    CounterRng rng(opt_.seed, opt_.chain_id | kInitStreamBit);
    if (opt_.start == McStart::Crystal) {
      const PairingConfig pc = PairingConfig::crystal(g_, 0);
      const LoopCovering cov = loops_from_pairing(pc, g_);
      std::vector<double> loop_phases(cov.loops.size());
      for (double& a : loop_phases) a = kTwoPi * rng.uniform();
      state_ = phases_from_pairing(g_, pc, loop_phases, params_.W);
    } else {
      for (double& a : state_.theta) a = kTwoPi * rng.uniform();
      if (full_) {
        for (double& a : state_.phi) a = kTwoPi * rng.uniform();
      } else {
        tether_all(state_, params_.W, g_);
      }
    }
  }

  double site_energy(std::size_t s) const {
    const SitePhases th = gather_theta(state_.theta, t_.star[s]);
    if (full_) return site_josephson_energy(th, gather_phi(state_.phi, s), params_);
    return site_min_energy(th, params_);
  }

  double total_energy() const { return std::accumulate(site_e_.begin(), site_e_.end(), 0.0); }

  void do_sweep(CounterRng& rng) {
    const std::size_t nl = g_.num_links();
    for (std::size_t l = 0; l < nl; ++l) {
      const double step = link_width_ * (2.0 * rng.uniform() - 1.0);
      const double u = rng.uniform();
      const std::size_t s0 = t_.ends[l][0].site.value;
      const std::size_t s1 = t_.ends[l][1].site.value;
      const double old_theta = state_.theta[l];
      state_.theta[l] = old_theta + step;
      const double e0 = site_energy(s0);
      const double e1 = s1 == s0 ? e0 : site_energy(s1);
      const double delta = (e0 - site_e_[s0]) + (s1 == s0 ? 0.0 : e1 - site_e_[s1]);
      ++link_tries_;
      ++window_tries_;
      if (metropolis_accept(delta, beta_, u)) {
        state_.theta[l] = canonical_phase(state_.theta[l]);
        site_e_[s0] = e0;
        site_e_[s1] = e1;
        ++link_acc_;
        ++window_acc_;
      } else {
        state_.theta[l] = old_theta;
      }
    }
    if (full_) {
      for (std::size_t m = 0; m < g_.num_matter(); ++m) {
        const double step = matter_width_ * (2.0 * rng.uniform() - 1.0);
        const double u = rng.uniform();
        const std::size_t s = m / 4;
        const double old_phi = state_.phi[m];
        state_.phi[m] = old_phi + step;
        const double e = site_energy(s);
        ++matter_tries_;
        ++window_matter_tries_;
        if (metropolis_accept(e - site_e_[s], beta_, u)) {
          state_.phi[m] = canonical_phase(state_.phi[m]);
          site_e_[s] = e;
          ++matter_acc_;
          ++window_matter_acc_;
        } else {
          state_.phi[m] = old_phi;
        }
      }
    }
    if (opt_.plaquette_moves) {
      for (std::size_t p = 0; p < g_.num_plaquettes(); ++p) plaquette_move(p, rng.uniform());
    }
  }

  void plaquette_move(std::size_t p, double u) {
    std::array<double, 4> old_theta{};
    for (int k = 0; k < 4; ++k) {
      old_theta[k] = state_.theta[t_.plaq[p][k]];
      state_.theta[t_.plaq[p][k]] += kPi;
    }
    std::array<SitePhases, 4> old_phi{};
    if (full_) {
      for (int c = 0; c < 4; ++c) {
        const std::size_t s = t_.corner[p][c];
        old_phi[c] = gather_phi(state_.phi, s);
        const MonomialMatrix& L = t_.corner_partner[c];
        for (int n = 0; n < 4; ++n)
          state_.phi[4 * s + n] = old_phi[c][L.permutation[n]] + (L.signs[n] < 0 ? kPi : 0.0);
      }
    }
    std::array<double, 4> new_e{};
    double delta = 0.0;
    for (int c = 0; c < 4; ++c) {
      const std::size_t s = t_.corner[p][c];
      new_e[c] = site_energy(s);
      delta += new_e[c] - site_e_[s];
    }
    ++plaq_tries_;
    if (metropolis_accept(delta, beta_, u)) {
      for (int k = 0; k < 4; ++k)
        state_.theta[t_.plaq[p][k]] = canonical_phase(state_.theta[t_.plaq[p][k]]);
      for (int c = 0; c < 4; ++c) {
        const std::size_t s = t_.corner[p][c];
        site_e_[s] = new_e[c];
        if (full_)
          for (int n = 0; n < 4; ++n) state_.phi[4 * s + n] = canonical_phase(state_.phi[4 * s + n]);
      }
      ++plaq_acc_;
    } else {
      for (int k = 0; k < 4; ++k) state_.theta[t_.plaq[p][k]] = old_theta[k];
      if (full_) {
        for (int c = 0; c < 4; ++c) {
          const std::size_t s = t_.corner[p][c];
          for (int n = 0; n < 4; ++n) state_.phi[4 * s + n] = old_phi[c][n];
        }
      }
    }
  }

  void adapt() {
    link_width_ = rescale(link_width_, window_acc_, window_tries_);
    if (full_) matter_width_ = rescale(matter_width_, window_matter_acc_, window_matter_tries_);
    window_acc_ = window_tries_ = window_matter_acc_ = window_matter_tries_ = 0;
  }

  double rescale(double width, std::uint64_t acc, std::uint64_t tries) const {
    if (tries == 0) return width;
    const double rate = static_cast<double>(acc) / static_cast<double>(tries);
    const double factor = std::clamp((rate + 0.01) / (opt_.target_acceptance + 0.01), 0.5, 2.0);
    return std::clamp(width * factor, 1e-4, kPi);
  }

  void reset_counters() {
    link_acc_ = link_tries_ = matter_acc_ = matter_tries_ = plaq_acc_ = plaq_tries_ = 0;
  }

  PairingConfig measure_pairings(std::size_t& unresolved) const {
    PhaseConfig q = state_;
    quench(q, params_, g_);
    PairingConfig pc;
    pc.pairing.resize(g_.num_sites());
    for (std::size_t s = 0; s < g_.num_sites(); ++s) {
      const SitePhases th = q.site_theta(g_, SiteIndex(s));
      // Nearest pairing; near a junction of pairings the quench converges
      // slowly, so order of enumeration must not decide.
      Pairing best = Pairing::P12_34;
      double best_mismatch = pairing_mismatch(th, best);
      for (Pairing p : kAllPairings) {
        const double mm = pairing_mismatch(th, p);
        if (mm < best_mismatch) {
          best = p;
          best_mismatch = mm;
        }
      }
      if (best_mismatch > opt_.loop_tolerance) ++unresolved;
      pc.pairing[s] = best;
    }
    return pc;
  }

  void setup_correlator_bins() {
    const std::size_t nl = g_.num_links();
    std::map<long long, std::size_t> key_to_bin;
    std::vector<long long> keys;
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = a + 1; b < nl; ++b)
        keys.push_back(std::llround(g_.link_distance(LinkIndex(a), LinkIndex(b)) * 1e6));
    std::vector<long long> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) key_to_bin[sorted[i]] = i;
    bin_distance_.clear();
    for (long long k : sorted) bin_distance_.push_back(static_cast<double>(k) * 1e-6);
    pair_bin_.clear();
    pair_bin_.reserve(keys.size());
    for (long long k : keys) pair_bin_.push_back(key_to_bin[k]);
    bin_pairs_.assign(sorted.size(), 0);
    for (std::size_t b : pair_bin_) ++bin_pairs_[b];
  }

  std::vector<double> measure_correlators() const {
    const std::size_t nl = g_.num_links();
    std::vector<double> sum(bin_distance_.size(), 0.0);
    std::vector<std::complex<double>> z(nl);
    for (std::size_t l = 0; l < nl; ++l) z[l] = std::polar(1.0, 2.0 * state_.theta[l]);
    std::size_t k = 0;
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = a + 1; b < nl; ++b, ++k)
        sum[pair_bin_[k]] += (z[a] * std::conj(z[b])).real();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] /= static_cast<double>(bin_pairs_[i]);
    return sum;
  }

  std::vector<CorrelatorBin> summarize_correlators(const std::vector<std::vector<double>>& series,
                                                   std::size_t blocks) const {
    std::vector<CorrelatorBin> out;
    for (std::size_t i = 0; i < bin_distance_.size(); ++i) {
      std::vector<double> col;
      col.reserve(series.size());
      for (const auto& row : series) col.push_back(row[i]);
      CorrelatorBin bin;
      bin.distance = bin_distance_[i];
      bin.pairs = bin_pairs_[i];
      std::tie(bin.mean, bin.error) = block_mean_error(col, blocks);
      out.push_back(bin);
    }
    return out;
  }

  const LatticeGeometry& g_;
  const CouplingParams& params_;
  const McOptions& opt_;
  Tables t_;
  double beta_;
  bool full_ = false;
  PhaseConfig state_;
  std::vector<double> site_e_;
  double link_width_ = 0.5;
  double matter_width_ = 0.5;
  std::uint64_t blocks_per_sweep_ = 0;

  std::uint64_t link_acc_ = 0, link_tries_ = 0;
  std::uint64_t matter_acc_ = 0, matter_tries_ = 0;
  std::uint64_t plaq_acc_ = 0, plaq_tries_ = 0;
  std::uint64_t window_acc_ = 0, window_tries_ = 0;
  std::uint64_t window_matter_acc_ = 0, window_matter_tries_ = 0;

  std::vector<double> bin_distance_;
  std::vector<std::size_t> bin_pairs_;
  std::vector<std::size_t> pair_bin_;
};

}  // namespace

void McOptions::validate() const {
  if (!(K_eff > 0.0) || !std::isfinite(K_eff)) throw invalid_argument("K_eff must be finite and > 0");
  if (sweeps == 0) throw invalid_argument("sweeps must be > 0");
  if (measure_every == 0) throw invalid_argument("measure_every must be > 0");
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0))
    throw invalid_argument("target acceptance must lie in (0, 1)");
  if (!(initial_width > 0.0 && initial_width <= kPi))
    throw invalid_argument("initial proposal width must lie in (0, pi]");
  if (!(loop_tolerance > 0.0)) throw invalid_argument("loop tolerance must be > 0");
  if (n_blocks < 2) throw invalid_argument("need at least 2 error blocks");
  if (chain_id & kInitStreamBit) throw invalid_argument("chain id too large");
}

std::pair<double, double> block_mean_error(const std::vector<double>& series, std::size_t n_blocks) {
  if (series.empty()) return {0.0, 0.0};
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / series.size();
  n_blocks = std::min(n_blocks, series.size());
  if (n_blocks < 2) return {mean, 0.0};
  const std::size_t block_len = series.size() / n_blocks;
  std::vector<double> means;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    const auto first = series.begin() + static_cast<std::ptrdiff_t>(b * block_len);
    means.push_back(std::accumulate(first, first + static_cast<std::ptrdiff_t>(block_len), 0.0) /
                    static_cast<double>(block_len));
  }
  const double bm = std::accumulate(means.begin(), means.end(), 0.0) / n_blocks;
  double var = 0.0;
  for (double m : means) var += (m - bm) * (m - bm);
  var /= static_cast<double>(n_blocks - 1);
  return {mean, std::sqrt(var / static_cast<double>(n_blocks))};
}

double quench(PhaseConfig& config, const CouplingParams& params, const LatticeGeometry& g,
              int max_iterations, double energy_tol, int* iterations) {
  tether_all(config, params.W, g);
  double energy = josephson_energy(config, params, g);
  int it = 0;
  const auto& w = params.W;
  for (; it < max_iterations; ++it) {
    for (std::size_t l = 0; l < g.num_links(); ++l) {
      std::complex<double> z{0.0, 0.0};
      for (const LinkEnd& end : g.link_ends(LinkIndex(l))) {
        const std::size_t s = end.site.value;
        for (int n = 0; n < 4; ++n)
          z += static_cast<double>(w(n, end.leg)) * std::polar(1.0, config.phi[4 * s + n]);
      }
      if (std::abs(z) > kTetherEpsilon) config.theta[l] = canonical_phase(std::arg(z));
    }
    tether_all(config, params.W, g);
    const double e = josephson_energy(config, params, g);
    const double drop = energy - e;
    energy = e;
    if (drop < energy_tol * static_cast<double>(g.num_sites())) {
      ++it;
      break;
    }
  }
  if (iterations) *iterations = it;
  return energy;
}

McResult mc_sample(const LatticeGeometry& g, const CouplingParams& params, const McOptions& options) {
  params.validate();
  options.validate();
  Chain chain(g, params, options);
  return chain.run();
}

McResult mc_sample_chains(const LatticeGeometry& g, const CouplingParams& params,
                          const McOptions& options, std::size_t n_chains, unsigned workers) {
  if (n_chains == 0) throw invalid_argument("need at least one chain");
  params.validate();
  options.validate();
  std::vector<McResult> results(n_chains);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_chains)));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < n_chains; c += workers) {
          McOptions o = options;
          o.chain_id = options.chain_id + c;
          results[c] = mc_sample(g, params, o);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  if (n_chains == 1) return results.front();

  McResult merged;
  const double n = static_cast<double>(n_chains);
  auto combine = [&](auto mean_of, auto err_of, double& mean, double& err) {
    double m = 0.0, e2 = 0.0;
    for (const auto& r : results) {
      m += mean_of(r);
      e2 += err_of(r) * err_of(r);
    }
    mean = m / n;
    err = std::sqrt(e2) / n;
  };
  combine([](const McResult& r) { return r.mean_energy; },
          [](const McResult& r) { return r.mean_energy_error; }, merged.mean_energy,
          merged.mean_energy_error);
  combine([](const McResult& r) { return r.mean_loop_length; },
          [](const McResult& r) { return r.mean_loop_length_error; }, merged.mean_loop_length,
          merged.mean_loop_length_error);
  combine([](const McResult& r) { return r.mean_n_loops; },
          [](const McResult& r) { return r.mean_n_loops_error; }, merged.mean_n_loops,
          merged.mean_n_loops_error);
  merged.stats.n_loops = static_cast<std::size_t>(std::lround(merged.mean_n_loops));
  merged.stats.n_winding = results.front().stats.n_winding;
  merged.stats.correlators = results.front().stats.correlators;
  for (std::size_t b = 0; b < merged.stats.correlators.size(); ++b) {
    double m = 0.0, e2 = 0.0;
    for (const auto& r : results) {
      m += r.stats.correlators[b].mean;
      e2 += r.stats.correlators[b].error * r.stats.correlators[b].error;
    }
    merged.stats.correlators[b].mean = m / n;
    merged.stats.correlators[b].error = std::sqrt(e2) / n;
  }
  McDiagnostics& d = merged.diagnostics;
  for (std::size_t c = 0; c < n_chains; ++c) {
    const McResult& r = results[c];
    for (const auto& [len, count] : r.stats.length_histogram) merged.stats.length_histogram[len] += count;
    merged.energy_series.insert(merged.energy_series.end(), r.energy_series.begin(),
                                r.energy_series.end());
    merged.loop_length_series.insert(merged.loop_length_series.end(),
                                     r.loop_length_series.begin(), r.loop_length_series.end());
    d.link_acceptance += r.diagnostics.link_acceptance / n;
    d.matter_acceptance += r.diagnostics.matter_acceptance / n;
    d.plaquette_acceptance += r.diagnostics.plaquette_acceptance / n;
    d.link_width += r.diagnostics.link_width / n;
    d.matter_width += r.diagnostics.matter_width / n;
    d.measurements += r.diagnostics.measurements;
    d.unresolved_sites += r.diagnostics.unresolved_sites;
    for (const auto& wmsg : r.diagnostics.warnings)
      d.warnings.push_back("chain " + std::to_string(options.chain_id + c) + ": " + wmsg);
  }
  merged.final_config = results.front().final_config;
  return merged;
}

std::vector<double> sample_single_site(double K_eff, const CouplingParams& params,
                                       std::uint64_t sweeps, std::uint64_t seed, double width) {
  params.validate();
  if (!(K_eff >= 0.0)) throw invalid_argument("K_eff must be >= 0");
  if (!(width > 0.0)) throw invalid_argument("proposal width must be > 0");
  const double beta = K_eff / params.J;
  CounterRng rng(seed, 0x5173);
  SitePhases theta{};
  for (double& a : theta) a = kTwoPi * rng.uniform();
  double e = site_min_energy(theta, params);
  std::vector<double> out;
  out.reserve(sweeps);
  for (std::uint64_t s = 0; s < sweeps; ++s) {
    for (int i = 0; i < 4; ++i) {
      const double old = theta[i];
      theta[i] = canonical_phase(old + width * (2.0 * rng.uniform() - 1.0));
      const double e_new = site_min_energy(theta, params);
      if (metropolis_accept(e_new - e, beta, rng.uniform())) {
        e = e_new;
      } else {
        theta[i] = old;
      }
    }
    out.push_back(e / params.J);
  }
  return out;
}

}  // namespace cgs
