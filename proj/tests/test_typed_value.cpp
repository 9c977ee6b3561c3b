#include "doctest.h"

#include <random>

#include "coreason/typed_value.hpp"

using namespace coreason;

TEST_SUITE("typed_value") {

TEST_CASE("json surface form round-trips losslessly") {
  std::vector<TypedValue> values = {
      TypedValue::boolean(true),
      TypedValue::boolean(false),
      TypedValue::integer(35000000),
      TypedValue::integer(-7),
      TypedValue::real(3.25),
      TypedValue::text("singer"),
      TypedValue::text(""),
      TypedValue::list({"John Bardeen", "Frederick Sanger", "Linus Pauling", "Marie Curie"}),
      TypedValue::list({}),
  };
  for (const auto& v : values) {
    CHECK(TypedValue::from_json(v.to_json()) == v);
  }
}

TEST_CASE("round-trip holds over generated values") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 500; ++i) {
    TypedValue v;
    switch (gen() % 5) {
      case 0: v = TypedValue::boolean(gen() % 2 == 0); break;
      case 1: v = TypedValue::integer(static_cast<std::int64_t>(gen())); break;
      case 2: v = TypedValue::real(static_cast<double>(gen()) / 997.0); break;
      case 3: {
        std::string s;
        for (size_t n = gen() % 12; n > 0; --n)
          s.push_back(static_cast<char>('a' + gen() % 26));
        v = TypedValue::text(s);
        break;
      }
      default: {
        TypedValue::List xs;
        for (size_t n = gen() % 5; n > 0; --n) xs.push_back(std::to_string(gen() % 100));
        v = TypedValue::list(xs);
        break;
      }
    }
    CHECK(TypedValue::from_json(v.to_json()) == v);
  }
}

TEST_CASE("boolean casting accepts true/false/yes/no strings") {
  TypedValue out;
  CHECK(cast_json_to_kind(nlohmann::json(true), Kind::boolean, out));
  CHECK(out.as_bool());
  CHECK(cast_json_to_kind(nlohmann::json("Yes"), Kind::boolean, out));
  CHECK(out.as_bool());
  CHECK(cast_json_to_kind(nlohmann::json("FALSE"), Kind::boolean, out));
  CHECK_FALSE(out.as_bool());
  CHECK(cast_json_to_kind(nlohmann::json("no"), Kind::boolean, out));
  CHECK_FALSE(out.as_bool());
  CHECK_FALSE(cast_json_to_kind(nlohmann::json("maybe"), Kind::boolean, out));
  CHECK_FALSE(cast_json_to_kind(nlohmann::json(3), Kind::boolean, out));
}

TEST_CASE("integer casting rejects non-integral reals") {
  TypedValue out;
  CHECK(cast_json_to_kind(nlohmann::json(35000000), Kind::integer, out));
  CHECK(out.as_int() == 35000000);
  CHECK(cast_json_to_kind(nlohmann::json(4.0), Kind::integer, out));
  CHECK(out.as_int() == 4);
  CHECK_FALSE(cast_json_to_kind(nlohmann::json(4.5), Kind::integer, out));
  CHECK(cast_json_to_kind(nlohmann::json("  -12 "), Kind::integer, out));
  CHECK(out.as_int() == -12);
  CHECK_FALSE(cast_json_to_kind(nlohmann::json("12.5"), Kind::integer, out));
  CHECK_FALSE(cast_json_to_kind(nlohmann::json("twelve"), Kind::integer, out));
}

TEST_CASE("list casting stringifies any array") {
  TypedValue out;
  CHECK(cast_json_to_kind(nlohmann::json::parse(R"(["a", 2, true])"), Kind::list_of_text, out));
  CHECK(out.as_list() == TypedValue::List{"a", "2", "true"});
  CHECK_FALSE(cast_json_to_kind(nlohmann::json("not a list"), Kind::list_of_text, out));
}

TEST_CASE("kind labels match the retrieval query suffixes") {
  CHECK(kind_label(Kind::integer) == "int");
  CHECK(kind_label(Kind::text) == "str");
  CHECK(kind_label(Kind::list_of_text) == "list");
  CHECK(kind_label(Kind::boolean) == "bool");
  CHECK(kind_label(Kind::real) == "float");
}

}  // TEST_SUITE
