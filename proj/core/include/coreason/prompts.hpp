#pragma once

#include <map>
#include <string>
#include <vector>

namespace coreason {

struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string content;
};

// A chat prompt: system message, few-shot demonstration turns, and a final
// user turn carrying {{name}} slots. Slot syntax is double-braced so literal
// JSON braces in demonstrations never read as placeholders.
struct PromptTemplate {
  std::string name;
  std::string system_message;
  std::vector<ChatMessage> few_shot_turns;  // last turn is the slotted user turn
  std::vector<std::string> placeholders;

  // Every {{slot}} that occurs anywhere in the template body.
  std::vector<std::string> scan_placeholders() const;
};

class PromptCatalog {
 public:
  // Catalog preloaded with the built-in templates:
  //   conceptualize, cot, ask_llm, entity_gen, statement_gen, refine,
  //   program_gen, mcq_to_binary, declarativize
  static PromptCatalog builtin();

  void add(PromptTemplate t);
  bool has(const std::string& name) const;
  const PromptTemplate& get(const std::string& name) const;  // throws UnknownTemplate

  // Substitutes slots into every turn and returns the full message sequence.
  // Throws UnboundPlaceholder if a {{slot}} has no value; extra slot values
  // are ignored.
  std::vector<ChatMessage> render(const std::string& template_name,
                                  const std::map<std::string, std::string>& slot_values) const;

  std::vector<std::string> names() const;

 private:
  std::map<std::string, PromptTemplate> templates_;
};

}  // namespace coreason
