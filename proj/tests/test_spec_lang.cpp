#include <gtest/gtest.h>

#include <filesystem>

#include "common.hpp"
#include "cselect/spec_lang.hpp"

using namespace cselect;

namespace {

SpecFile parse_ok(const std::string& text) {
  auto r = parse_spec(text);
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : format(r.errors.front()));
  return r.spec;
}

}  // namespace

TEST(SpecParse, PropertyWithCombinatorBody) {
  auto spec = parse_ok(R"(property unique { \c -> (for-all-elems (\a -> (unique-count? a c)) c) })");
  ASSERT_EQ(spec.properties().size(), 1u);
  const PropertyDef& p = *spec.properties()[0];
  EXPECT_EQ(p.name, "unique");
  EXPECT_TRUE(p.bounds.empty());
  const Lambda* l = p.body->as_lambda();
  ASSERT_NE(l, nullptr);
  EXPECT_EQ(l->param, "c");
  auto [head, args] = spine(l->body);
  ASSERT_NE(head->as_var(), nullptr);
  EXPECT_EQ(head->as_var()->name, "for-all-elems");
  EXPECT_EQ(args.size(), 2u);
}

TEST(SpecParse, EmptyInput) {
  auto spec = parse_ok("");
  EXPECT_TRUE(spec.decls.empty());
  EXPECT_TRUE(parse_ok("  # only a comment\n").decls.empty());
}

TEST(SpecParse, TypeDeclaration) {
  auto spec = parse_ok("type StackCon<T> = {c <: (ContainerT, StackT) | (lifo c)}");
  ASSERT_EQ(spec.types().size(), 1u);
  const ContainerTypeDecl& d = *spec.types()[0];
  EXPECT_EQ(d.name, "StackCon");
  EXPECT_EQ(d.elem_param, "T");
  EXPECT_EQ(d.var, "c");
  EXPECT_EQ(d.bounds, (std::vector<std::string>{"ContainerT", "StackT"}));
  auto conj = refinement_conjuncts(d);
  ASSERT_EQ(conj.size(), 1u);
  EXPECT_EQ(print(conj[0]), "(lifo c)");
}

TEST(SpecParse, SelfApplicationIsGrammatical) {
  auto spec = parse_ok(R"(property p { \c -> (c c) })");
  EXPECT_EQ(spec.properties().size(), 1u);
}

TEST(SpecParse, BoundedPropertyAndSugar) {
  auto spec = parse_ok(R"(property lifo { \c <: StackT -> forall \x. (pop (push c x)) == x })");
  const PropertyDef& p = *spec.properties()[0];
  EXPECT_EQ(p.bounds, std::vector<std::string>{"StackT"});
  EXPECT_NE(print(p.body).find("equal?"), std::string::npos);
}

TEST(SpecParse, DeclarationOrderKept) {
  auto spec = parse_ok(R"(
    property b { \c -> true }
    type X<T> = {c <: (ContainerT) | b c}
    property a { \c -> false }
  )");
  ASSERT_EQ(spec.decls.size(), 3u);
  EXPECT_TRUE(std::holds_alternative<PropertyDef>(spec.decls[0]));
  EXPECT_TRUE(std::holds_alternative<ContainerTypeDecl>(spec.decls[1]));
  EXPECT_EQ(std::get<PropertyDef>(spec.decls[2]).name, "a");
}

TEST(SpecParse, ErrorsCarryPosition) {
  auto r = parse_spec("property ok { \\c -> true }\nproperty broken { \\c -> ( }\n");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.errors.front().pos.line, 2);
  EXPECT_GT(r.errors.front().pos.column, 0);
}

TEST(SpecParse, StrayToken) {
  auto r = parse_spec("widget foo");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.errors.front().pos.line, 1);
  EXPECT_EQ(r.errors.front().pos.column, 1);
}

TEST(SpecParse, DuplicateNamesRejected) {
  auto r = parse_spec("property p { \\c -> true }\nproperty p { \\c -> false }");
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.errors.front().message.find("duplicate"), std::string::npos);
  EXPECT_EQ(r.errors.front().pos.line, 2);

  auto t = parse_spec("type A<T> = {c <: (ContainerT) | p c}\ntype A<T> = {c <: (ContainerT) | p c}");
  EXPECT_FALSE(t.ok());
}

TEST(SpecParse, UnterminatedTypeDecl) {
  EXPECT_FALSE(parse_spec("type A<T> = {c <: (ContainerT) | p c").ok());
  EXPECT_FALSE(parse_spec("type A<T> = {c <: (ContainerT) }").ok());
}

TEST(SpecPrint, RoundTripSamples) {
  for (const auto& entry : std::filesystem::directory_iterator(testutil::samples_dir())) {
    if (entry.path().extension() != ".prs") continue;
    SCOPED_TRACE(entry.path().string());
    auto first = parse_ok(read_file(entry.path()));
    auto second = parse_ok(print(first));
    EXPECT_TRUE(first == second);
    EXPECT_EQ(print(first), print(second));
  }
}

TEST(SpecPrint, RoundTripNestedTerms) {
  const char* text = R"(
    property odd { \c <: (ContainerT, StackT) -> forall \x y. or (not (leq? x y)) (c == c) }
    type T1<E> = {v <: (ContainerT, StackT) | ((odd v) and ((odd v) and (odd v)))}
  )";
  auto first = parse_ok(text);
  EXPECT_TRUE(first == parse_ok(print(first)));
}

TEST(Refinement, FlattensConjunctions) {
  auto one = parse_term("((unique c) and (ascending c))");
  auto parts = refinement_conjuncts(one);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(print(parts[0]), "(unique c)");
  EXPECT_EQ(print(parts[1]), "(ascending c)");

  EXPECT_EQ(refinement_conjuncts(parse_term("(unique c)")).size(), 1u);

  auto nested = refinement_conjuncts(parse_term("((a c) and ((b c) and (d c)))"));
  ASSERT_EQ(nested.size(), 3u);
  EXPECT_EQ(print(nested[2]), "(d c)");
}

TEST(Refinement, DisjunctionIsOneConjunct) {
  EXPECT_EQ(refinement_conjuncts(parse_term("(a c) or (b c)")).size(), 1u);
}
