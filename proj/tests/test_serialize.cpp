#include <gtest/gtest.h>

#include <algorithm>

#include "corefree/corefree.hpp"

using namespace corefree;

namespace {

SubgroupPresentation pres(std::string_view gens, std::size_t rank = 2) {
  return SubgroupPresentation(rank, parse_word_list(gens, rank));
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::precondition;
}

}  // namespace

TEST(WordJson, SyllablePairs) {
  const Word w = parse_word("x1 x1 x2^-1", 2);
  EXPECT_EQ(to_json(w).dump(), "[[1,2],[2,-1]]");
  EXPECT_EQ(word_from_json(to_json(w), 2), w);
  EXPECT_EQ(word_from_json(Json("x1^2 x2^-1"), 2), w);
  EXPECT_EQ(to_json(Word(2)).dump(), "[]");
  EXPECT_EQ(kind_of([] { (void)word_from_json(Json::parse("[[3,1]]"), 2); }), ErrorKind::out_of_range);
  EXPECT_EQ(kind_of([] { (void)word_from_json(Json::parse("[[1]]"), 2); }), ErrorKind::malformed_input);
}

TEST(WordJson, RoundTripRandom) {
  Rng rng(71);
  for (int it = 0; it < 1000; ++it) {
    const Word w = random_word_up_to(rng, 3, 20);
    EXPECT_EQ(word_from_json(Json::parse(to_json(w).dump()), 3), w);
  }
}

TEST(GraphJson, RoundTrip) {
  Rng rng(72);
  for (int it = 0; it < 200; ++it) {
    const FoldedGraph g = fold(random_presentation(rng, {2 + uniform_index(rng, 2), 3, 7, 0}));
    EXPECT_EQ(graph_from_json(Json::parse(export_json(g))), g);
  }
  const Json j = to_json(fold(pres("x1 x2")));
  EXPECT_EQ(j.at("rank"), 2);
  EXPECT_EQ(j.at("basepoint"), 0);
  EXPECT_EQ(j.at("vertices"), 2);
  EXPECT_EQ(j.at("edges").size(), 2u);
}

TEST(GraphJson, RejectsUnfoldedInput) {
  const Json j = Json::parse(R"({"rank":2,"vertices":2,"edges":[{"from":0,"to":1,"label":1},{"from":0,"to":0,"label":1}]})");
  EXPECT_THROW((void)graph_from_json(j), Error);
  EXPECT_EQ(kind_of([] { (void)graph_from_json(Json::parse(R"({"rank":2})")); }), ErrorKind::malformed_input);
}

TEST(Dot, Examples) {
  const std::string empty = export_dot(fold(pres("")));
  EXPECT_EQ(count(empty, "->"), 0u);
  EXPECT_EQ(count(empty, "  0"), 1u);

  const std::string loop = export_dot(fold(pres("x1 x2")));
  EXPECT_EQ(count(loop, "->"), 2u);
  EXPECT_EQ(count(loop, "label=\"x1\""), 1u);
  EXPECT_EQ(count(loop, "label=\"x2\""), 1u);
  EXPECT_EQ(count(loop, "doublecircle"), 1u);
}

TEST(CertificateJson, RoundTrip) {
  Rng rng(73);
  int done = 0;
  while (done < 50) {
    const auto p = random_presentation(rng, {2 + uniform_index(rng, 2), 3, 6, 0});
    if (index(fold(p))) continue;
    ++done;
    const auto cert = find_power_free_basis(p);
    EXPECT_EQ(certificate_from_json(Json::parse(to_json(cert).dump())), cert);
  }
  const Json j = to_json(find_power_free_basis(pres("x1")));
  EXPECT_EQ(j.at("moves").dump(), "[[2,-2]]");
  EXPECT_EQ(j.at("m0"), 3);
}

TEST(CertificateJson, RejectsBadFields) {
  Json j = to_json(find_power_free_basis(pres("x1")));
  j["m0"] = 0;
  EXPECT_EQ(kind_of([&] { (void)certificate_from_json(j); }), ErrorKind::malformed_input);
  j = to_json(find_power_free_basis(pres("x1")));
  j["moves"] = Json::parse("[[2,0]]");
  EXPECT_EQ(kind_of([&] { (void)certificate_from_json(j); }), ErrorKind::malformed_input);
  j = to_json(find_power_free_basis(pres("x1")));
  j.erase("basis");
  EXPECT_EQ(kind_of([&] { (void)certificate_from_json(j); }), ErrorKind::malformed_input);
}

TEST(FunctionJson, ExactRationals) {
  const AlternatingFunction f{{1, Rational(1)}, {4, Rational(-3, 7)}};
  EXPECT_EQ(to_json(f).dump(), R"({"support":[[1,"1"],[4,"-3/7"]]})");
  EXPECT_EQ(function_from_json(to_json(f)), f);
  EXPECT_EQ(function_from_json(Json::parse(R"({"support":[[2,5]]})")), (AlternatingFunction{{2, Rational(5)}}));
  EXPECT_THROW((void)function_from_json(Json::parse(R"({"support":[[0,"1"]]})")), Error);
  EXPECT_THROW((void)function_from_json(Json::parse(R"({"support":[[1,"1/0"]]})")), Error);
  EXPECT_THROW((void)function_from_json(Json::parse(R"({"support":[[1,"x"]]})")), Error);
}

TEST(QmJson, RoundTrip) {
  Rng rng(74);
  std::vector<AlternatingFunction> fs{random_function(rng, 4), random_function(rng, 4)};
  const SplitQM q(2, fs);
  const SplitQM back = split_from_json(Json::parse(to_json(q).dump()));
  EXPECT_EQ(back.factors(), q.factors());

  const auto cert = find_power_free_basis(pres("x1"));
  const RelativeQM r = make_relative_qm_embedded(cert, fs);
  const RelativeQM rb = relative_from_json(Json::parse(to_json(r).dump()));
  EXPECT_EQ(rb.certificate, r.certificate);
  EXPECT_EQ(rb.base_factors(), r.base_factors());
}

TEST(Rational, FormatAndParse) {
  EXPECT_EQ(format_rational(Rational(6, -4)), "-3/2");
  EXPECT_EQ(format_rational(Rational(5)), "5");
  EXPECT_EQ(parse_rational("-3/2"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("4/2"), Rational(2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
}
