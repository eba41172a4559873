#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "kpart/constructions.hpp"
#include "kpart/covers.hpp"
#include "oracles.hpp"

using namespace kpart;

namespace {

std::vector<oracle::Parts> parts_of(const Family& f) {
  std::vector<oracle::Parts> out;
  for (const auto& m : f) out.push_back(oracle::parts(m));
  return out;
}

std::set<oracle::Parts> parts_of(const std::vector<PartialPartition>& covers) {
  std::set<oracle::Parts> out;
  for (const auto& c : covers) out.insert(oracle::parts(c));
  return out;
}

}  // namespace

TEST_CASE("is_t_cover examples", "[covers]") {
  auto star_spec = FamilySpec::named_star({6, 4, 2});
  Family star = materialize(star_spec);
  CHECK(is_t_cover(star_spec.anchor, star, 2));
  Family alpha = materialize(FamilySpec::named_alpha({6, 4, 1}));
  for (const auto& m : alpha) CHECK(is_t_cover(m.as_partial(), alpha, 1));
  CHECK_FALSE(is_t_cover(parse_partial("1", 6), alpha, 1));
  CHECK(alpha.has_member(parse_set_partition("1 4|2|3|5 6")));
}

TEST_CASE("covering number examples", "[covers]") {
  auto star_spec = FamilySpec::named_star({6, 4, 1});
  CoverReport star = covering_number(materialize(star_spec), 1);
  CHECK(star.tau == 1);
  CHECK(star.witness == star_spec.anchor);
  CHECK(covering_number(materialize(FamilySpec::named_alpha({6, 4, 1})), 1).tau == 2);
  CHECK(covering_number(materialize(FamilySpec::named_hm({6, 4, 1})), 1).tau == 2);
}

TEST_CASE("covering number rejects bad families", "[covers]") {
  GroundParams p{4, 3, 1};
  CHECK_THROWS_AS(covering_number(Family(p, {}), 1), std::invalid_argument);
  Family apart(p, {parse_set_partition("1|2|3 4"), parse_set_partition("1 2|3|4")});
  CHECK_THROWS_AS(covering_number(apart, 1), std::invalid_argument);
  CHECK_THROWS_AS(cover_family_T(materialize(FamilySpec::named_star({6, 4, 1})), 1), std::invalid_argument);
}

TEST_CASE("T of A(Z) is every (t+1)-subset of Z", "[covers]") {
  for (GroundParams p : {GroundParams{5, 3, 1}, GroundParams{6, 4, 1}, GroundParams{7, 4, 2}}) {
    auto spec = FamilySpec::named_alpha(p);
    Family fam = materialize(spec);
    auto covers = cover_family_T(fam, p.t);
    CHECK(covers.size() == static_cast<std::size_t>(p.t + 2));
    auto brute = oracle::covers_of_size(parts_of(fam), p.t, p.t + 1);
    CHECK(parts_of(covers) == std::set<oracle::Parts>(brute.begin(), brute.end()));
    auto c = classify_T(covers, p.t, p.k);
    CHECK(c.shape == CoverShape::CoreBelowT);
    REQUIRE(c.union_blocks.has_value());
    CHECK(*c.union_blocks == spec.anchor);
  }
}

TEST_CASE("T of H(n,k,t) has core X", "[covers]") {
  for (GroundParams p : {GroundParams{6, 4, 1}, GroundParams{7, 5, 2}, GroundParams{7, 4, 1}}) {
    auto spec = FamilySpec::named_hm(p);
    Family fam = materialize(spec);
    auto covers = cover_family_T(fam, p.t);
    auto brute = oracle::covers_of_size(parts_of(fam), p.t, p.t + 1);
    CHECK(parts_of(covers) == std::set<oracle::Parts>(brute.begin(), brute.end()));
    for (const auto& c : covers) CHECK(is_t_cover(c, fam, p.t));
    auto c = classify_T(covers, p.t, p.k);
    CHECK(c.shape == CoverShape::CoreT);
    REQUIRE(c.core.has_value());
    CHECK(*c.core == spec.core);
    CHECK(c.core_structure_ok);
  }
}

TEST_CASE("classify_T small cases", "[covers]") {
  CHECK(classify_T({}, 1, 3).shape == CoverShape::Empty);
  auto one = classify_T({parse_partial("1|2", 5)}, 1, 3);
  CHECK(one.shape == CoverShape::Singleton);
  auto apart = classify_T({parse_partial("1|2", 5), parse_partial("3|4", 5)}, 1, 3);
  CHECK(apart.shape == CoverShape::NotTIntersecting);
  CHECK(apart.witness_pair.has_value());
}

TEST_CASE("covering number agrees with brute force on random subfamilies", "[covers][oracle]") {
  std::mt19937_64 rng(3);
  for (GroundParams p : {GroundParams{6, 4, 1}, GroundParams{6, 3, 1}, GroundParams{6, 4, 2}}) {
    std::vector<Family> sources{materialize(FamilySpec::named_star(p)), materialize(FamilySpec::named_alpha(p)),
                                materialize(FamilySpec::named_hm(p))};
    for (const Family& src : sources) {
      for (int trial = 0; trial < 12; ++trial) {
        std::vector<SetPartition> pick;
        for (const auto& m : src)
          if (rng() % 3 == 0) pick.push_back(m);
        if (pick.empty()) pick.push_back(src.members().front());
        Family sub(p, pick);
        CoverReport r = covering_number(sub, p.t);
        auto ref = parts_of(sub);
        REQUIRE(r.tau == oracle::covering_number(ref, p.t, p.k));
        REQUIRE(static_cast<int>(r.witness.size()) == r.tau);
        REQUIRE(is_t_cover(r.witness, sub, p.t));
        if (r.tau > p.t) REQUIRE(oracle::covers_of_size(ref, p.t, r.tau - 1).empty());
      }
    }
  }
}

TEST_CASE("minimal t-covers are covers and inclusion-minimal", "[covers][property]") {
  Family fam = materialize(FamilySpec::named_alpha({6, 4, 1}));
  auto covers = minimal_t_covers(fam.members(), 1, 3);
  REQUIRE_FALSE(covers.empty());
  std::set<oracle::Parts> expected;
  auto ref = parts_of(fam);
  for (int j = 1; j <= 3; ++j) {
    for (const auto& c : oracle::covers_of_size(ref, 1, j)) {
      bool minimal = true;
      for (const auto& b : c) {
        oracle::Parts smaller = c;
        smaller.erase(b);
        if (oracle::is_cover(smaller, ref, 1)) minimal = false;
      }
      if (minimal) expected.insert(c);
    }
  }
  CHECK(parts_of(covers) == expected);
}
