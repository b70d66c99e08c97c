#include <optional>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "ldkep/attacks.hpp"
#include "ldkep/garside.hpp"

using namespace ldkep;

namespace {

// Independent reference for the coset search: the plain double loop, h outer,
// c inner, first hit wins.
std::optional<SCCPSolution> sccp_double_loop(const SCCPInstance& inst) {
  std::uint64_t tested = 0;
  for (const Permutation& h : inst.subgroup_h)
    for (const Permutation& c : inst.subgroup_k) {
      ++tested;
      if (c * inst.x * c.inverse() == h * inst.y) return SCCPSolution{h, c, tested};
    }
  return std::nullopt;
}

Element lv(std::uint32_t v) { return Element(v); }

}  // namespace

TEST_CASE("simultaneous search on the level-2 table") {
  LDContext ctx = LDContext::laver_context(2);
  // s = 1, s' = 2*1 = 3; the first candidate with cand*1 = 3 is 2 itself
  LDPInstance inst{&ctx, OpSide::B, {{lv(1), lv(3)}}, SearchDomain::carrier()};
  auto sol = brute_simldp(inst);
  REQUIRE(sol.has_value());
  CHECK(std::get<std::uint32_t>(sol->candidate) == 2);
  CHECK(verify_simldp(inst, *sol));
}

TEST_CASE("identity instance returns the identity first") {
  LDContext ctx = LDContext::group_conjugacy(PermGroup::symmetric(4));
  std::vector<std::pair<Element, Element>> pairs;
  Rng rng(3);
  for (int i = 0; i < 3; ++i) {
    Element s = ctx.sample(rng);
    pairs.emplace_back(s, s);
  }
  auto sol = brute_simldp(LDPInstance{&ctx, OpSide::B, pairs, SearchDomain::carrier()});
  REQUIRE(sol.has_value());
  CHECK(std::get<Permutation>(sol->candidate).is_identity());
}

TEST_CASE("operation search recovers a working pair on the two-op platform") {
  LDContext ctx = LDContext::from_descriptor("platform=group kind=dihedral order=8 a=r2,e");
  Rng rng(5);
  Element b = ctx.sample(rng);
  std::size_t beta = 1;
  std::vector<std::pair<Element, Element>> pairs;
  for (int i = 0; i < 2; ++i) {
    Element s = ctx.sample(rng);
    pairs.emplace_back(s, ctx.apply(beta, b, s));
  }
  LDPInstance inst{&ctx, OpSide::B, pairs, SearchDomain::carrier()};
  auto sol = brute_simldp(inst);
  REQUIRE(sol.has_value());
  CHECK(verify_simldp(inst, *sol));
}

TEST_CASE("searches on infinite carriers are refused") {
  LDContext ctx = LDContext::shifted_conjugacy();
  LDPInstance inst{&ctx, OpSide::B, {}, SearchDomain::carrier()};
  CHECK_THROWS_AS(brute_simldp(inst), std::invalid_argument);
}

TEST_CASE("modified search on the level-3 table") {
  LDContext ctx = LDContext::laver_context(3);
  Rng rng(11);
  Element a = ctx.sample(rng);
  Element a0 = ctx.sample(rng);
  std::vector<std::pair<Element, Element>> pairs;
  for (int i = 0; i < 2; ++i) {
    Element t = ctx.sample(rng);
    pairs.emplace_back(t, ctx.apply(0, a, t));
  }
  ModLDPInstance inst{&ctx, OpSide::A, pairs, ctx.apply(0, a, a0), SearchDomain::carrier()};
  auto sol = brute_modsimldp(inst);
  REQUIRE(sol.has_value());
  CHECK(verify_modsimldp(inst, *sol));
}

TEST_CASE("modified search finds a basis element at tree size one") {
  LDContext ctx = LDContext::laver_context(3);
  SubmagmaBasis basis{{lv(2), lv(5)}, OpSide::A};
  Element a = lv(3);
  Element p0 = ctx.apply(0, a, basis.elements[0]);  // a0 is a basis element
  // the pair (1, 3*1) pins a' = 3: first columns are distinct across rows
  ModLDPInstance inst{&ctx, OpSide::A, {{lv(1), ctx.apply(0, a, lv(1))}}, p0,
                      SearchDomain::submagma(basis)};
  auto sol = brute_modsimldp(inst);
  REQUIRE(sol.has_value());
  REQUIRE(sol->a0_witness.has_value());
  CHECK(sol->a0_witness->leaf_count() == 1);
  CHECK(verify_modsimldp(inst, *sol));
}

TEST_CASE("an unsatisfiable doctored instance exhausts the space") {
  LDContext ctx = LDContext::laver_context(2);
  // collect every value a' * a'0 can take subject to a' * t = t'; then doctor
  // p0 to be outside that set
  Element t = lv(1), t_img = ctx.apply(0, lv(2), t);
  std::set<std::uint32_t> reachable;
  for (std::uint32_t a = 1; a <= 4; ++a) {
    if (!ctx.equal(ctx.apply(0, lv(a), t), t_img)) continue;
    for (std::uint32_t a0 = 1; a0 <= 4; ++a0)
      reachable.insert(std::get<std::uint32_t>(ctx.apply(0, lv(a), lv(a0))));
  }
  std::uint32_t doctored = 0;
  for (std::uint32_t v = 1; v <= 4; ++v)
    if (!reachable.count(v)) doctored = v;
  REQUIRE(doctored != 0);
  ModLDPInstance inst{&ctx, OpSide::A, {{t, t_img}}, lv(doctored), SearchDomain::carrier()};
  CHECK_FALSE(brute_modsimldp(inst).has_value());
}

TEST_CASE("membership search returns minimal witnesses") {
  LDContext ctx = LDContext::laver_context(3);
  SubmagmaBasis basis{{lv(1)}, OpSide::Both};
  // the target is a basis element: single leaf
  auto leaf = membership_search(MSPInstance{&ctx, basis, lv(1), 12, 100000});
  REQUIRE(leaf.has_value());
  CHECK(leaf->leaf_count() == 1);
  // 1*1 = 2: two leaves
  auto two = membership_search(MSPInstance{&ctx, basis, lv(2), 12, 100000});
  REQUIRE(two.has_value());
  CHECK(two->leaf_count() == 2);
  CHECK(ctx.equal(eval_tree(*two, basis, ctx), lv(2)));

  // closure of {8} is {8}: everything else is out of reach
  SubmagmaBasis top{{lv(8)}, OpSide::Both};
  auto closure = submagma_closure(ctx, top, 12, 100000);
  CHECK(closure.size() == 1);
  CHECK_FALSE(membership_search(MSPInstance{&ctx, top, lv(1), 12, 100000}).has_value());
}

TEST_CASE("closure deduplicates and every witness evaluates to its element") {
  LDContext ctx = LDContext::laver_context(3);
  SubmagmaBasis basis{{lv(1), lv(4)}, OpSide::Both};
  auto closure = submagma_closure(ctx, basis, 10, 100000);
  std::set<std::uint32_t> values;
  for (const ClosureEntry& entry : closure) {
    CHECK(values.insert(std::get<std::uint32_t>(entry.value)).second);
    CHECK(ctx.equal(eval_tree(entry.tree, basis, ctx), entry.value));
  }
}

TEST_CASE("pseudo-keys act like the original on the whole submagma") {
  // a candidate matching b on the basis matches it on the closure too
  LDContext ctx = LDContext::from_descriptor("platform=group kind=dihedral order=8 a=r2,e");
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    SubmagmaBasis basis_a{{ctx.sample(rng), ctx.sample(rng)}, OpSide::A};
    Element b = ctx.sample(rng);
    std::size_t beta = rng.below(2);
    std::vector<std::pair<Element, Element>> pairs;
    for (const Element& s : basis_a.elements) pairs.emplace_back(s, ctx.apply(beta, b, s));
    auto sol = brute_simldp(LDPInstance{&ctx, OpSide::B, pairs, SearchDomain::carrier()});
    REQUIRE(sol.has_value());
    for (const ClosureEntry& entry : submagma_closure(ctx, basis_a, 8, 4096))
      CHECK(ctx.equal(ctx.apply(sol->op_index, sol->candidate, entry.value),
                      ctx.apply(beta, b, entry.value)));
  }
}

TEST_CASE("all four pipelines recover the key") {
  for (const char* d : {"platform=laver n=3", "platform=group kind=dihedral order=8 a=r2,e"}) {
    PublicParams params = PublicParams::make(d, 2, 2, 19);
    for (int t = 0; t < 10; ++t) {
      LocalRun honest = run_local(params, 100 + t, 200 + t);
      for (Pipeline p : {Pipeline::A, Pipeline::B, Pipeline::C, Pipeline::D}) {
        PipelineResult result = run_pipeline(p, params, honest.transcript);
        CHECK(result.key.canonical == honest.key_a.canonical);
        CHECK(result.tested > 0);
      }
    }
  }
}

TEST_CASE("pipelines refuse infinite platforms") {
  PublicParams params = PublicParams::make("platform=braid mode=shifted p=1", 1, 1, 23);
  LocalRun honest = run_local(params, 1, 2);
  CHECK_THROWS_AS(run_pipeline(Pipeline::A, params, honest.transcript), std::invalid_argument);
}

TEST_CASE("coset search agrees with the double-loop reference") {
  Rng rng(29);
  std::vector<PermGroup> groups;
  groups.push_back(PermGroup::symmetric(3));
  groups.push_back(PermGroup::symmetric(4));
  groups.push_back(PermGroup::dihedral(8));
  groups.push_back(PermGroup::dihedral(12));
  groups.push_back(PermGroup::quaternion());
  groups.push_back(PermGroup::cyclic(24));
  for (const PermGroup& g : groups) {
    REQUIRE(g.order() <= 24);
    for (int t = 0; t < 12; ++t) {
      SubgroupSpec h{t % 2 ? SubgroupSpec::Kind::Center : SubgroupSpec::Kind::Whole, {}};
      SubgroupSpec k{t % 3 ? SubgroupSpec::Kind::Whole : SubgroupSpec::Kind::Trivial, {}};
      SCCPInstance inst = plant_sccp(g, h, k, rng);
      auto fast = sccp_brute(inst);
      auto slow = sccp_double_loop(inst);
      REQUIRE(fast.has_value() == slow.has_value());
      if (fast) {
        CHECK(fast->h == slow->h);
        CHECK(fast->c == slow->c);
        CHECK(fast->c * inst.x * fast->c.inverse() == fast->h * inst.y);
      }
    }
  }
}

TEST_CASE("coset search corner cases") {
  PermGroup s4 = PermGroup::symmetric(4);
  // x = y, H = {e}, K = G: the first solution is h = e with the first
  // centralizing c, and the identity centralizes everything
  Rng rng(31);
  Permutation x = s4.elements()[rng.below(s4.order())];
  SCCPInstance inst{s4, {s4.identity()}, s4.elements(), x, x};
  auto sol = sccp_brute(inst);
  REQUIRE(sol.has_value());
  CHECK(sol->h.is_identity());
  CHECK(sol->c.is_identity());

  // K = {e} reduces to coset membership: solvable exactly when x y^-1 in H
  auto young = s4.young_subgroup({2, 2});
  for (const Permutation& x2 : s4.elements()) {
    for (const Permutation& y2 : s4.elements()) {
      SCCPInstance inst2{s4, young, {s4.identity()}, x2, y2};
      bool solvable = sccp_brute(inst2).has_value();
      bool member = std::binary_search(young.begin(), young.end(), x2 * y2.inverse());
      CHECK(solvable == member);
    }
  }
}

TEST_CASE("planted S_5 instances are solved") {
  PermGroup s5 = PermGroup::symmetric(5);
  SubgroupSpec h{SubgroupSpec::Kind::Young, {3, 2}};
  SubgroupSpec k{SubgroupSpec::Kind::Whole, {}};
  Rng rng(37);
  for (int t = 0; t < 10; ++t) {
    SCCPInstance inst = plant_sccp(s5, h, k, rng);
    auto sol = sccp_brute(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->c * inst.x * sol->c.inverse() == sol->h * inst.y);
  }
}

TEST_CASE("decomposition transform identity and window membership") {
  Rng rng(41);
  ParabolicParams params{7, 3, 4, 0};
  for (int t = 0; t < 8; ++t) {
    PlantedDecomposition planted = plant_decomposition(params, rng, t % 4 == 3);
    TransformCheck check = verify_decomposition_transform(planted, params);
    CHECK(check.identity_holds);
    CHECK(check.factors_in_windows);
    CHECK(check.strands >= 2 * params.p);
    if (t % 4 == 3) CHECK(check.strands == 2 * params.p);  // boundary case
  }
}

TEST_CASE("degenerate transform instance") {
  // everything trivial: s = s' = b = 1, empty window elements. The planted
  // identity collapses to tau factors only and still verifies.
  ParabolicParams params{7, 3, 4, 0};
  PlantedDecomposition planted;
  planted.s = BraidWord();
  planted.b = BraidWord();
  planted.beta1 = BraidWord();
  planted.beta2 = BraidWord();
  planted.s_image = tau_word(params.p, params.p);  // shift^p(1) beta tau beta shift^p(1) 1
  TransformCheck check = verify_decomposition_transform(planted, params);
  CHECK(check.identity_holds);
  CHECK(check.factors_in_windows);
  CHECK(check.strands == 2 * params.p);
}

TEST_CASE("transform respects the minimal strand rule") {
  Rng rng(43);
  ParabolicParams params{5, 2, 3, 0};  // relaxed parameters are enough here
  PlantedDecomposition planted = plant_decomposition(params, rng, false);
  BraidSCCPInstance inst = decomposition_to_sccp(planted.s, planted.s_image, params);
  CHECK(inst.strands ==
        std::max({2 * params.p, planted.s_image.max_index() + 1,
                  planted.s.max_index() + params.p + 1}));
  CHECK(inst.conjugator_strands == inst.strands - params.p);
  ParabolicParams bad{5, 5, 3, 0};
  CHECK_THROWS_AS(decomposition_to_sccp(planted.s, planted.s_image, bad), std::invalid_argument);
}
