#pragma once

/**
 * @file campaigns.hpp
 * @brief Verification campaigns behind the command-line tool.
 *
 * Each campaign returns a VerificationReport whose checks are listed in a
 * fixed order, independent of how the work was scheduled. Independent items
 * (faithful actions) may be processed on several threads.
 */

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "abelian.hpp"
#include "closure.hpp"
#include "constructions.hpp"
#include "group_io.hpp"
#include "perm_group.hpp"
#include "report.hpp"

namespace kclosure {

struct CampaignOptions {
  Caps caps;
  std::size_t jobs = 1;
  /// verify-lemmas: orbit subsets tried per Sylow subgroup and action.
  std::size_t subset_limit = 256;
  /// verify-lemmas: actions examined; 0 means every enumerated action.
  std::size_t action_limit = 0;
  /// Required whenever a campaign has to sample.
  std::optional<std::uint64_t> seed;
};

namespace detail {

inline json points_json(const PointSet &points) {
  json out = json::array();
  for (Point p : points) out.push_back(p + 1);
  return out;
}

inline json perms_json(const std::vector<Permutation> &perms) {
  json out = json::array();
  for (const auto &x : perms) out.push_back(to_string(x));
  return out;
}

/// Runs f(0..count-1) on up to `jobs` threads; rethrows the first error.
template <class F>
void parallel_for(std::size_t count, std::size_t jobs, F &&f) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, count); ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline std::mt19937_64 require_rng(const CampaignOptions &options, const char *why) {
  if (!options.seed)
    throw InputError(std::string(why) + " samples at random and needs an explicit --seed");
  return std::mt19937_64(*options.seed);
}

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  json first_failure = nullptr;

  void record(bool ok, const json &context) {
    ++cases;
    if (!ok && failures++ == 0) first_failure = context;
  }
};

}  // namespace detail

/// Restriction property of setwise stabilizers for an abelian group: for
/// each prime p with Sylow subgroup P and each union D of P-orbits, the
/// subgroup fixing each chosen P-orbit setwise induces on D what P induces.
inline void check_setwise_restriction(const PermGroup &g, detail::Tally &tally,
                                      const CampaignOptions &options,
                                      std::mt19937_64 *rng) {
  for (const auto &[p, sylow] : abelian_sylow_subgroups(g)) {
    auto parts = orbits(sylow).orbits;
    const std::size_t m = parts.size();
    std::vector<std::uint64_t> masks;
    const std::uint64_t total = (m >= 63) ? UINT64_MAX : (std::uint64_t{1} << m) - 1;
    if (total <= options.subset_limit) {
      for (std::uint64_t mask = 1; mask <= total; ++mask) masks.push_back(mask);
    } else {
      if (!rng) throw InputError("orbit-subset sampling needs an explicit --seed");
      std::uniform_int_distribution<std::uint64_t> pick(1, total);
      for (std::size_t i = 0; i < options.subset_limit; ++i) masks.push_back(pick(*rng));
    }
    for (auto mask : masks) {
      std::vector<PointSet> blocks;
      PointSet delta;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) {
          blocks.push_back(parts[i]);
          delta.insert(delta.end(), parts[i].begin(), parts[i].end());
        }
      auto stabilizer = setwise_stabilizer_of_blocks(g, blocks, options.caps.max_elements);
      bool ok = restriction(stabilizer, delta).same_group(restriction(sylow, delta));
      json blocks_json = json::array();
      for (const auto &b : blocks) blocks_json.push_back(detail::points_json(b));
      tally.record(ok, {{"generators", detail::perms_json(g.generators())},
                        {"prime", p},
                        {"blocks", blocks_json}});
    }
  }
}

/// Hall-subgroup orbit property on every transitive constituent T of an
/// abelian group and every set of primes pi dividing |T|: each orbit of the
/// Hall pi-subgroup H has size |orbit|_pi, T permutes Orb(H), and the kernel
/// of that action is H.
inline void check_hall_orbits(const PermGroup &g, detail::Tally &sizes,
                              detail::Tally &kernels, const CampaignOptions &options) {
  for (const auto &gamma : orbits(g).orbits) {
    PermGroup t = restriction(g, gamma);
    std::vector<std::uint64_t> primes;
    for (auto p : prime_divisors(t.order())) primes.push_back(p);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << primes.size()); ++mask) {
      std::vector<std::uint64_t> pi;
      PrimeSet pi_set;
      for (std::size_t i = 0; i < primes.size(); ++i)
        if (mask >> i & 1) {
          pi.push_back(primes[i]);
          pi_set.insert(primes[i]);
        }
      PermGroup hall = abelian_hall_subgroup(t, pi);
      auto hall_orbits = orbits(hall).orbits;
      std::uint64_t expected = pi_part(gamma.size(), pi_set);
      bool sizes_ok = std::all_of(hall_orbits.begin(), hall_orbits.end(),
                                  [&](const auto &o) { return o.size() == expected; });
      json context = {{"orbit", detail::points_json(gamma)}, {"primes", pi}};
      sizes.record(sizes_ok, context);

      // T maps H-orbits to H-orbits, and fixes all of them exactly on H
      auto id = orbits(hall).orbit_id;
      bool permutes = true;
      for (const auto &x : t.generators())
        for (const auto &o : hall_orbits)
          for (Point q : o)
            if (id[x[q]] != id[x[o.front()]]) permutes = false;
      auto kernel = setwise_stabilizer_of_blocks(t, hall_orbits, options.caps.max_elements);
      kernels.record(permutes && kernel.same_group(hall), context);
    }
  }
}

/// k-closure of a group given by generators.
inline VerificationReport cmd_closure(const PermGroup &g, std::size_t k,
                                      const CampaignOptions &options = {}) {
  Stopwatch clock;
  VerificationReport r;
  r.campaign = "closure";
  r.inputs = group_to_json(g);
  r.inputs["k"] = k;

  PermGroup closure = k_closure(g, k, options.caps);
  std::optional<Permutation> witness;
  for (const auto &x : closure.generators())
    if (!g.contains(x)) {
      witness = x;
      break;
    }

  r.details["group_order"] = g.order();
  r.details["closure_order"] = closure.order();
  r.details["closure_generators"] = detail::perms_json(closure.generators());
  r.details["k_closed"] = !witness.has_value();
  r.details["witness"] = witness ? json(to_string(*witness)) : json(nullptr);

  r.expect_true("G is contained in G^(k)", closure.contains_group(g));
  bool all_preserve = true;
  TupleOrbitIndex index(g, k, options.caps.max_tuples);
  for (const auto &x : closure.generators()) all_preserve = all_preserve && index.preserved_by(x);
  r.expect_true("every closure generator preserves each k-tuple orbit", all_preserve);
  r.expect_eq("G^(k) has the orbits of G", orbits(g).orbits, orbits(closure).orbits);
  if (g.degree() <= options.caps.brute_force_degree) {
    PermGroup brute = brute_force_k_closure(g, k, options.caps);
    r.details["brute_force_order"] = brute.order();
    r.expect_true("search agrees with filtering all of Sym(Omega)", brute.same_group(closure));
  }
  r.wall_time = clock.seconds();
  return r;
}

/// Builds the non-closure witness for an abelian group and checks it.
inline VerificationReport cmd_witness(const AbelianSpec &spec,
                                      const CampaignOptions &options = {}) {
  if (spec.is_trivial()) throw InputError("witness needs a nontrivial group");
  Stopwatch clock;
  VerificationReport r;
  r.campaign = "witness";
  r.inputs = {{"orders", spec.orders()}};

  const std::size_t n = n_of(spec);
  MixedWitness w = mixed_witness_rep(spec);
  const PermGroup &h = w.group;

  json deltas = json::array();
  for (const auto &d : w.primary.deltas) deltas.push_back(detail::points_json(d));
  json regular = json::array();
  for (const auto &[p, block] : w.regular_blocks)
    regular.push_back({{"prime", p}, {"points", detail::points_json(block)}});
  r.details["invariant_factors"] = invariant_factors(spec).d;
  r.details["n"] = n;
  r.details["N"] = capital_N(spec);
  r.details["witness"] = {{"prime", w.prime},
                          {"factor_orders", w.primary.factor_orders},
                          {"degree", h.degree()},
                          {"generators", detail::perms_json(h.generators())},
                          {"tau0", to_string(w.tau0)},
                          {"deltas", deltas},
                          {"regular_blocks", regular}};

  PermGroup closure = k_closure(h, n, options.caps);
  r.details["group_order"] = h.order();
  r.details["closure_order"] = closure.order();
  r.details["closure_generators"] = detail::perms_json(closure.generators());

  r.expect_eq("witness is faithful: |H| = |G|", spec.order(), h.order());
  r.expect_true("H is abelian", h.is_abelian());
  r.expect_eq("H has the invariant factors of G", invariant_factors(spec).d,
              abelian_invariant_factors(h, options.caps.max_elements).d);
  r.expect_true("tau0 is not in H", !h.contains(w.tau0));
  r.expect_true("tau0 lies in H^(n)", in_k_closure(h, w.tau0, n, options.caps));
  r.expect_true("H is not n-closed: |H^(n)| > |H|", closure.order() > h.order());
  auto upper = k_closedness(h, n + 1, options.caps);
  r.details["n_plus_1_via_shortcut"] = upper.via_shortcut;
  r.expect_true("H is (n+1)-closed", upper.closed);
  r.wall_time = clock.seconds();
  return r;
}

/// Totally (n(G)+1)-closed over every faithful action on <= max_points
/// points, and not n(G)-closed in the witness action.
inline VerificationReport cmd_verify_thm2(const AbelianSpec &spec, std::size_t max_points,
                                          const CampaignOptions &options = {}) {
  if (spec.is_trivial()) throw InputError("needs a nontrivial group");
  Stopwatch clock;
  VerificationReport r;
  r.campaign = "verify-thm2";
  r.inputs = {{"orders", spec.orders()}, {"max_points", max_points}};

  const std::size_t n = n_of(spec);
  const std::size_t big_n = capital_N(spec);
  r.details["n"] = n;
  r.details["N"] = big_n;

  auto actions = enumerate_faithful_actions(spec, max_points);
  struct Outcome {
    std::uint64_t order = 0;
    std::size_t base = 0;
    ClosednessVerdict verdict;
  };
  std::vector<Outcome> outcomes(actions.size());
  detail::parallel_for(actions.size(), options.jobs, [&](std::size_t i) {
    const auto &g = actions[i].group;
    outcomes[i].order = g.order();
    outcomes[i].base = minimal_base_size(g);
    outcomes[i].verdict = k_closedness(g, n + 1, options.caps);
  });

  std::size_t faithful = 0, closed = 0, shortcut = 0, base_ok = 0;
  json listing = json::array();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto &o = outcomes[i];
    faithful += o.order == spec.order();
    closed += o.verdict.closed;
    shortcut += o.verdict.via_shortcut;
    base_ok += o.base <= big_n;
    listing.push_back({{"orbit_lengths", actions[i].indices},
                       {"generators", detail::perms_json(actions[i].group.generators())},
                       {"base_size", o.base},
                       {"closed", o.verdict.closed},
                       {"via_shortcut", o.verdict.via_shortcut},
                       {"witness", o.verdict.witness ? json(to_string(*o.verdict.witness))
                                                     : json(nullptr)}});
  }
  r.details["action_count"] = actions.size();
  r.details["closed_via_shortcut"] = shortcut;
  r.details["actions"] = listing;

  r.expect_eq("every enumerated action is faithful", actions.size(), faithful);
  r.expect_eq("every action is (n+1)-closed", actions.size(), closed);
  r.expect_eq("every action has base size <= N(G)", actions.size(), base_ok);

  std::vector<std::uint64_t> prime_powers;
  for (const auto &[p, list] : primary_decomposition(spec))
    prime_powers.insert(prime_powers.end(), list.begin(), list.end());
  PermGroup disjoint = disjoint_cyclic_rep(prime_powers);
  r.expect_eq("disjoint cyclic action on the prime-power factors has base size N(G)",
              big_n, minimal_base_size(disjoint));

  MixedWitness w = mixed_witness_rep(spec);
  auto outside = closure_element_outside(w.group, n, options.caps);
  r.details["witness"] = {{"degree", w.group.degree()},
                          {"generators", detail::perms_json(w.group.generators())},
                          {"tau0", to_string(w.tau0)},
                          {"element_outside",
                           outside ? json(to_string(*outside)) : json(nullptr)}};
  r.expect_eq("witness action is faithful", spec.order(), w.group.order());
  r.expect_true("witness action is not n-closed", outside.has_value());
  r.expect_true("tau0 lies in the n-closure of the witness but not in it",
                in_k_closure(w.group, w.tau0, n, options.caps) && !w.group.contains(w.tau0));
  r.wall_time = clock.seconds();
  return r;
}

/// k-closure of an abelian group against the product of its Sylow closures.
inline VerificationReport cmd_verify_product(const PermGroup &g, std::size_t k,
                                             const CampaignOptions &options = {}) {
  if (!g.is_abelian()) throw InputError("verify-product needs an abelian group");
  if (k < 2) throw InputError("verify-product needs k >= 2");
  Stopwatch clock;
  VerificationReport r = closure_product_check(g, k, options.caps);
  r.campaign = "verify-product";

  PermGroup closure = k_closure(g, k, options.caps);
  r.expect_true("G^(k) is abelian", closure.is_abelian());
  r.expect_eq("G^(k) has the prime divisors of |G|",
              prime_divisors(g.order()), prime_divisors(closure.order()));
  for (const auto &[p, sylow] : abelian_sylow_subgroups(g)) {
    const std::uint64_t primes[] = {p};
    PermGroup q = abelian_hall_subgroup(closure, primes);
    PermGroup sylow_closure = k_closure(sylow, k, options.caps);
    std::string tag = " (p=" + std::to_string(p) + ")";
    r.expect_true("P^(k) is a p-group" + tag,
                  prime_divisors(sylow_closure.order()) == PrimeSet{p});
    r.expect_eq("Orb(P) = Orb(Q) for Q the Sylow subgroup of G^(k)" + tag,
                orbits(sylow).orbits, orbits(q).orbits);
    r.expect_true("P^(k) is the Sylow subgroup of G^(k)" + tag, sylow_closure.same_group(q));
  }
  r.wall_time = clock.seconds();
  return r;
}

/// Setwise-stabilizer restriction and Hall-orbit properties over the
/// faithful actions of an abelian group (plus its disjoint cyclic action).
inline VerificationReport cmd_verify_lemmas(const AbelianSpec &spec, std::size_t max_points,
                                            const CampaignOptions &options = {}) {
  Stopwatch clock;
  VerificationReport r;
  r.campaign = "verify-lemmas";
  r.inputs = {{"orders", spec.orders()}, {"max_points", max_points}};
  if (options.seed) r.inputs["seed"] = *options.seed;

  std::vector<PermGroup> groups;
  if (!spec.is_trivial()) groups.push_back(disjoint_cyclic_rep(spec.orders()));
  for (auto &a : enumerate_faithful_actions(spec, max_points))
    groups.push_back(std::move(a.group));

  std::optional<std::mt19937_64> rng;
  if (options.seed) rng.emplace(*options.seed);
  if (options.action_limit && groups.size() > options.action_limit) {
    auto gen = detail::require_rng(options, "--action-limit");
    std::vector<PermGroup> sample;
    std::sample(groups.begin(), groups.end(), std::back_inserter(sample),
                options.action_limit, gen);
    groups = std::move(sample);
  }

  detail::Tally restriction_tally, size_tally, kernel_tally;
  for (const auto &g : groups) {
    check_setwise_restriction(g, restriction_tally, options, rng ? &*rng : nullptr);
    check_hall_orbits(g, size_tally, kernel_tally, options);
  }
  r.details["actions"] = groups.size();
  r.details["restriction_cases"] = restriction_tally.cases;
  r.details["hall_cases"] = size_tally.cases;
  r.details["first_failures"] = {{"restriction", restriction_tally.first_failure},
                                 {"hall_orbit_size", size_tally.first_failure},
                                 {"hall_kernel", kernel_tally.first_failure}};
  r.expect_eq("setwise stabilizer of P-orbits restricts to P on their union",
              0, restriction_tally.failures);
  r.expect_eq("Hall pi-subgroup orbits have size n_pi", 0, size_tally.failures);
  r.expect_eq("kernel of the action on Hall-subgroup orbits is the Hall subgroup",
              0, kernel_tally.failures);
  r.wall_time = clock.seconds();
  return r;
}

/// Small fixed battery covering the worked examples.
inline VerificationReport cmd_self_test(const CampaignOptions &options = {}) {
  Stopwatch clock;
  VerificationReport r;
  r.campaign = "self-test";

  PermGroup s3_five = group_from_strings(5, {"(1,2,3)", "(1,2)(4,5)"});
  PermGroup s3_c2 = group_from_strings(5, {"(1,2,3)", "(1,2)", "(4,5)"});
  PermGroup s3 = group_from_strings(3, {"(1,2,3)", "(1,2)"});
  PermGroup c2 = group_from_strings(4, {"(1,2)(3,4)"});

  auto two = k_closure(s3_five, 2, options.caps);
  r.expect_eq("intransitive S3: |G^(2)| = 12", 12, two.order());
  r.expect_true("intransitive S3: G^(2) = S3 x C2", two.same_group(s3_c2));
  r.expect_true("natural S3 is 2-closed", is_k_closed(s3, 2, options.caps));
  r.expect_true("<(1,2)(3,4)>^(1) = <(1,2),(3,4)>",
                k_closure(c2, 1, options.caps)
                    .same_group(group_from_strings(4, {"(1,2)", "(3,4)"})));
  auto v = k_closedness(s3_five, 3, options.caps);
  r.expect_true("intransitive S3 is 3-closed via a base of size 2",
                v.closed && v.via_shortcut);
  r.merge(cmd_witness(AbelianSpec({2, 2}), options), "witness 2,2: ");
  r.wall_time = clock.seconds();
  return r;
}

}  // namespace kclosure
