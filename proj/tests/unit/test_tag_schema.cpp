#include "deft/errors.hpp"
#include "deft/tag_schema.hpp"
#include "doctest.h"

using namespace deft;

TEST_CASE("BioTag string form round-trips") {
  for (const char* text : {"O", "B-Term", "I-Definition", "B-Alias-Term", "I-Term-frag"}) {
    auto tag = BioTag::parse(text);
    REQUIRE(tag.has_value());
    CHECK(tag->str() == text);
  }
  CHECK_FALSE(BioTag::parse("B-").has_value());
  CHECK_FALSE(BioTag::parse("X-Term").has_value());
  CHECK_FALSE(BioTag::parse("BTerm").has_value());
  CHECK_FALSE(BioTag::parse("").has_value());
  CHECK(BioTag::parse("O")->type.empty());
}

TEST_CASE("default schema alphabet") {
  auto schema = TagSchema::default_schema();
  CHECK(schema.types().size() == 8);
  CHECK(schema.size() == 17);
  CHECK(schema.tag(0).str() == "O");
  CHECK(schema.tag(1).str() == "B-Term");
  CHECK(schema.tag(2).str() == "I-Term");
  CHECK(schema.index_of("I-Secondary-Definition") == 16);
  CHECK_FALSE(schema.index_of("B-Qualifier").has_value());
  CHECK(TagSchema::corpus_release().index_of("B-Qualifier").has_value());
}

TEST_CASE("transition legality") {
  TagSchema schema({"Term", "Definition"});
  const auto o = *schema.index_of("O");
  const auto bt = *schema.index_of("B-Term");
  const auto it = *schema.index_of("I-Term");
  const auto id = *schema.index_of("I-Definition");
  CHECK(schema.legal_transition(std::nullopt, o));
  CHECK(schema.legal_transition(std::nullopt, bt));
  CHECK_FALSE(schema.legal_transition(std::nullopt, it));
  CHECK(schema.legal_transition(bt, it));
  CHECK(schema.legal_transition(it, it));
  CHECK_FALSE(schema.legal_transition(o, it));
  CHECK_FALSE(schema.legal_transition(bt, id));
}

TEST_CASE("schema files") {
  auto schema = TagSchema::from_text("# types\nTerm\n\nDefinition\r\n");
  CHECK(schema.types() == std::vector<std::string>{"Term", "Definition"});
  CHECK(TagSchema::from_text(schema.to_text()) == schema);
  CHECK_THROWS_AS(TagSchema::from_text("Term\nTerm\n"), ConfigError);
  CHECK_THROWS_AS(TagSchema::from_text("# nothing\n"), ConfigError);
}

TEST_CASE("definition tags under both label rules") {
  CHECK(is_definition_tag(BioTag::begin("Definition"), LabelRule::kDefinitionSubstring));
  CHECK(is_definition_tag(BioTag::inside("Ordered-Definition"), LabelRule::kDefinitionSubstring));
  CHECK_FALSE(is_definition_tag(BioTag::begin("Term"), LabelRule::kDefinitionSubstring));
  CHECK_FALSE(
      is_definition_tag(BioTag::inside("Ordered-Definition"), LabelRule::kPrimaryDefinition));
  CHECK(is_definition_tag(BioTag::inside("Definition"), LabelRule::kPrimaryDefinition));
}
