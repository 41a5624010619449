#include <gtest/gtest.h>

#include "forge/error.hpp"
#include "forge/namespaces.hpp"
#include "forge/turtle.hpp"
#include "support/generators.hpp"

using namespace forge;

TEST(Turtle, EmptyDocumentHasNoTriples) {
  EXPECT_EQ(rdf::parse_turtle("").size(), 0u);
  EXPECT_EQ(rdf::parse_turtle("# only a comment\n@prefix ex: <http://ex.org/> .\n").size(), 0u);
}

TEST(Turtle, ParsesListsLiteralsAndBlanks) {
  auto g = rdf::parse_turtle(R"(
@prefix ex: <http://ex.org/> .
PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
ex:s a ex:C ;
  ex:n 42, 1.5, true ;
  ex:l "hi"@en, "3"^^xsd:integer, "q\"uote\n" ;
  ex:b _:x .
_:x ex:p <http://ex.org/o> .
)");
  EXPECT_EQ(g.size(), 9u);
  auto s = rdf::Term::iri("http://ex.org/s");
  EXPECT_TRUE(g.has_type(s, rdf::Term::iri("http://ex.org/C")));
  EXPECT_TRUE(g.contains(rdf::Triple(s, rdf::Term::iri("http://ex.org/n"),
                                     rdf::typed("42", "integer"))));
  EXPECT_TRUE(g.contains(rdf::Triple(s, rdf::Term::iri("http://ex.org/n"),
                                     rdf::typed("1.5", "decimal"))));
  EXPECT_TRUE(g.contains(rdf::Triple(s, rdf::Term::iri("http://ex.org/l"),
                                     rdf::Term::literal("hi", {}, "en"))));
  EXPECT_TRUE(g.contains(rdf::Triple(s, rdf::Term::iri("http://ex.org/l"),
                                     rdf::Term::literal("q\"uote\n"))));
  EXPECT_EQ(g.blank_labels(), (std::set<std::string>{"b0"}));
}

TEST(Turtle, SyntaxErrorCarriesPosition) {
  try {
    rdf::parse_turtle("@prefix ex: <http://ex.org/> .\nex:s ex:p ;\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GE(e.column(), 1u);
  }
}

TEST(Turtle, UnknownPrefix) {
  EXPECT_THROW(rdf::parse_turtle("zz:s zz:p zz:o ."), UnknownPrefixError);
}

TEST(Turtle, SerializationIsDeterministicAndUsesPrefixes) {
  rdf::Graph g;
  g.set_prefix("qoe", std::string(ns::kQoe));
  g.add(rdf::iri(ns::kQoe, "B"), rdf::rdf_type(), rdf::iri(ns::kQoe, "QoE_Indicator"));
  g.add(rdf::iri(ns::kQoe, "A"), rdf::rdf_type(), rdf::iri(ns::kQoe, "QoE_Indicator"));
  auto text = rdf::serialize_turtle(g);
  EXPECT_NE(text.find("@prefix qoe:"), std::string::npos);
  EXPECT_LT(text.find("qoe:A"), text.find("qoe:B"));
  EXPECT_EQ(text, rdf::serialize_turtle(rdf::parse_turtle(text)));
}

TEST(Turtle, RandomGraphsRoundTrip) {
  forge::testing::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    auto g = forge::testing::random_graph(rng, 60);
    auto back = rdf::parse_turtle(rdf::serialize_turtle(g));
    ASSERT_TRUE(rdf::isomorphic(g, back)) << rdf::serialize_turtle(g);
  }
}
