#include "coreason/prompts.hpp"

#include <set>

#include "coreason/errors.hpp"

namespace coreason {

namespace {

// Replaces every {{name}} with its slot value. Throws on slots without values.
std::string substitute(const std::string& body,
                       const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(body.size());
  size_t pos = 0;
  while (pos < body.size()) {
    size_t open = body.find("{{", pos);
    if (open == std::string::npos) {
      out.append(body, pos, std::string::npos);
      break;
    }
    size_t close = body.find("}}", open + 2);
    if (close == std::string::npos) {
      out.append(body, pos, std::string::npos);
      break;
    }
    out.append(body, pos, open - pos);
    std::string name = body.substr(open + 2, close - open - 2);
    auto it = slots.find(name);
    if (it == slots.end()) throw UnboundPlaceholder(name);
    out += it->second;
    pos = close + 2;
  }
  return out;
}

void scan_into(const std::string& body, std::set<std::string>& names) {
  size_t pos = 0;
  while (pos < body.size()) {
    size_t open = body.find("{{", pos);
    if (open == std::string::npos) break;
    size_t close = body.find("}}", open + 2);
    if (close == std::string::npos) break;
    names.insert(body.substr(open + 2, close - open - 2));
    pos = close + 2;
  }
}

}  // namespace

std::vector<std::string> PromptTemplate::scan_placeholders() const {
  std::set<std::string> names;
  scan_into(system_message, names);
  for (const auto& turn : few_shot_turns) scan_into(turn.content, names);
  return {names.begin(), names.end()};
}

void PromptCatalog::add(PromptTemplate t) {
  if (t.placeholders.empty()) t.placeholders = t.scan_placeholders();
  templates_[t.name] = std::move(t);
}

bool PromptCatalog::has(const std::string& name) const { return templates_.count(name) > 0; }

const PromptTemplate& PromptCatalog::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw UnknownTemplate(name);
  return it->second;
}

std::vector<ChatMessage> PromptCatalog::render(
    const std::string& template_name,
    const std::map<std::string, std::string>& slot_values) const {
  const PromptTemplate& t = get(template_name);
  std::vector<ChatMessage> messages;
  messages.reserve(t.few_shot_turns.size() + 1);
  messages.push_back({"system", substitute(t.system_message, slot_values)});
  for (const auto& turn : t.few_shot_turns) {
    messages.push_back({turn.role, substitute(turn.content, slot_values)});
  }
  return messages;
}

std::vector<std::string> PromptCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(templates_.size());
  for (const auto& [name, _] : templates_) out.push_back(name);
  return out;
}

namespace {

PromptTemplate make_conceptualize() {
  PromptTemplate t;
  t.name = "conceptualize";
  t.system_message =
      "Identify named entities, special nouns, or numerical values in the given question, then "
      "replace some of them with appropriate semantic types, so that the resulting abstract "
      "question is still answerable with the same general solution as the original question. "
      "Follow the the provided examples.";
  t.few_shot_turns = {
      {"user", "Does Rusev have to worry about human overpopulation in his homeland?"},
      {"assistant",
       R"(We first identify all named entities, special nouns and numerical values: Rusev, human overpopulation, his homeland. In order to keep the question answerable, we can only replace Rusev with Person X, because the original question's solution depends on knowing the issue in consideration is human overpopulation. Moreover, replacing "his homeland" will lead to too much ambiguity. As a result, we can replace "Rusev" to "Person X" (person_x: str) So the question becomes Does Person X have to worry about human overpopulation in his homeland? With parameters person_x="Rusev")"},
      {"user", "Can the Very Large Telescope observe the largest mountain on Earth?"},
      {"assistant",
       R"(We first identify all named entities, special nouns and numerical values: the Very Large Telescope, the largest mountain on Earth. We can replace these entities with fine-grained semantic types that keep the question answerable. The original question's general solution works as long as it knows that the Very Large Telescope is a Telescope on Earth, and the object in question is a geographical feature also on Earth.  As a result, we can replace "the Very Large Telescope" to "Telescope X" (telescope_x: str) "the largest mountain on Earth" to "Geographical Feature Y" (geo_feature_y: str) So the question becomes Can Telescope X on Earth observe Geographical Feature Y on Earth? With parameters telescope_x="Very Large Telescope", geo_feature_y="the largest mountain on Earth")"},
      {"user", "Will the Albany in Georgia reach a hundred thousand occupants before the one in New York?"},
      {"assistant",
       R"(We first identify all named entities, special nouns and numerical values: Albany in Georgia, a hundred thousand, the one in New York. The original question's solution can be generalized to checking if a city will reach a specific population before another city. This means that we can conceptualize the two cities in the original question with "City", and the number as Population. As a result, we can replace "Albany in Georgia" to "City X" (city_x: str) "a hundred thousand occupants" to "Population Y" (population_y: int) "the one in New York" to "City Z" (city_z: str) So the question becomes Will City X reach Population Y before City Z? With parameters city_x="Albany, Georgia", population_y=100000, city_z="Albany, New York")"},
      {"user", "Would the top of Mount Fuji stick out of the Sea of Japan?"},
      {"assistant",
       R"(We first identify all named entities, special nouns and numerical values: Mount Fuji, Sea of Japan. The generalized solution of the original question can be applied as long as we know Mount Fuji is a mountain (we cannot simply conceptulize it into geographical feature because the solution only works for features that point upwards such as a mountain), and Sea of Japan is a body of water (similarly, it needs to have depths.) As a result, we can replace "Mount Fuji" to "Mountain X" (mountain_x: str) "the Sea of Japan" to "Body of Water Y" (body_of_water_y: str) So the question becomes Would the top of Mountain X stick out of Body of Water Y? With parameters mountain_x="Mount Fuji", body_of_water_y="the Sea of Japan")"},
      {"user", "Did any country in Portuguese Colonial War take a general neutral role in WWII?"},
      {"assistant",
       R"(We first identify all named entities, special nouns and numerical values: Portuguese Colonial War, a general neutral role, WWII. The original solution checks for the involving countries in the first war, then checks if any of these countries took a general neutral role in the second war. We should not replace "a general nutral role" with its semantic type, because the solution would be vastly different for other roles. As a result, we can replace "Portuguese Colonial War" to "War X" (war_x: str) "WWII" to "War Y" (war_y: str) So the question becomes Did any country in War X take a general neutral role in War Y? With parameters war_x="Portuguese Colonial War", war_y="WWII")"},
      {"user", "Was Lil Jon's top ranked Billboard song a collaboration with a member of The Lox?"},
      {"assistant",
       R"(We first identify all named entities, special nouns and numerical values: Lil Jon, Billboard, The Lox. In order to keep the question answerable with the original problem-solving path, we should not replace 'Billboard', because the solution depends on knowing what kind of song the question is asking for. As a result, we can replace "Lil Jon" to "Artist X" (artist_x: str) "The Lox" to "Group Y" (group_y: str) So the question becomes Was Artist X's top ranked Billboard song a collaboration with a member of Group Y? With parameters artist_x="Lil Jon", group_y="The Lox")"},
      {"user", "{{question}}"},
  };
  return t;
}

PromptTemplate make_cot() {
  PromptTemplate t;
  t.name = "cot";
  t.system_message =
      "Solve the given question. Follow the way in the given examples to answer the questions. "
      "At the end, you must say if you have to guess an answer, the answer is yes/no.";
  t.few_shot_turns = {
      {"user", "Can the Very Large Telescope observe the largest mountain on Earth?"},
      {"assistant",
       "The Very Large Scope is in Chile. The largest mountain on Earth is mount Everest, which "
       "is in Nepal. The earth curvature is in between the two entities and there is not a line "
       "of sight. As a result, if I have to guess an answer, the answer is no."},
      {"user", "Did Bill Nye vote for Franklin Delano Roosevelt?"},
      {"assistant",
       "Bill Nye was born in 1955. Franklin Delano Roosevelt's last election was in 1944. Bill "
       "Nye was not born nor alive at the time Roosevelt was running. As a result, if I have to "
       "guess an answer, the answer is no."},
      {"user", "Does table tennis use prime numbers?"},
      {"assistant",
       "Table tennis plays to 11 points each game. 11 is a prime number. As a result, if I have "
       "to guess an answer, the answer is yes."},
      {"user", "Would an Evander Holyfield 2020 boxing return set age record?"},
      {"assistant",
       "Evander Holyfield will turn 58 years old at the end of 2020. Steve Ward holds the "
       "world's oldest boxer title at age 59. 58 is younger than 59 and not enough to set the "
       "record. As a result, if I have to guess an answer, the answer is no."},
      {"user", "Would the top of Mount Kilimanjaro stick out of the Sea of Japan?"},
      {"assistant",
       "The height of Mount Kilimanjaro is about 5,895 meters, while the Sea of Japan has a "
       "maximum depth of 3,742 meters. So, the top of Mount Kilimanjaro is taller than the "
       "maximum depth of the Sea of Japan. If we were to put Mount Kilimanjaro in the Sea of "
       "Japan, it will stick out. As a result, if I have to guess an answer, the answer is yes."},
      {"user", "{{question}}"},
  };
  return t;
}

PromptTemplate make_ask_llm() {
  PromptTemplate t;
  t.name = "ask_llm";
  t.system_message =
      "Answer the question in the expected type. Use your best educated guess or estimation if "
      "needed. Follow the provided examples and return a JSON dictionary with key 'answer'.";
  t.few_shot_turns = {
      {"user", "How many people today are related to Genghis Khan? (int)"},
      {"assistant", R"({"answer": 35000000})"},
      {"user", "What is the profession of Michael Jackson? (str)"},
      {"assistant", R"({"answer": singer})"},
      {"user", "Who has more than one Nobel Prize? (list)"},
      {"assistant", R"({"answer": ["John Bardeen", "Frederick Sanger", "Linus Pauling", "Marie Curie"]})"},
      {"user", "Does anchors on KBS speak Arabic? (bool)"},
      {"assistant", R"({"answer": false})"},
      {"user", "{{query}} ({{kind}})"},
  };
  return t;
}

PromptTemplate make_entity_gen() {
  PromptTemplate t;
  t.name = "entity_gen";
  t.system_message =
      "Follow the examples, for the given conceptualized question, generate some possible "
      "entities based on the type, and the provided example. Try to be diverse and creative.";
  t.few_shot_turns = {
      {"user",
       "Question: Was a person sold License X for Artwork Y ripped off? Entity: License X "
       "Example: Creative Commons License"},
      {"assistant",
       "MIT License\nGeneral Public License\nBSD License\nCopyLeft License\nArtistic License\n"
       "Exclusive License\nVARA License\nEND"},
      {"user", "Question: Is Technology X able to make Object Y? Entity: Object Y Example: adenovirus"},
      {"assistant",
       "prosthetics\nplastic bottles\ncoffee\nsmartphones\ncontact lenses\nfurniture\n"
       "computer software\nfood\nEND"},
      {"user", "Question: {{question}} Entity: {{entity}} Example: {{example}}"},
  };
  return t;
}

PromptTemplate make_statement_gen() {
  PromptTemplate t;
  t.name = "statement_gen";
  t.system_message =
      "Follow the examples for the given conceptualized statement and generate the missing "
      "entities based on the type so that the given statement holds. Try to be diverse and "
      "creative.";
  t.few_shot_turns = {
      {"user",
       "Statement: If someone loves chocolate, they enjoy Compound Y. Entity: Company Y: str "
       "(e.g., capsaicin)"},
      {"assistant",
       "{\"Compound Y\": \"Theobromine\", \"statement\": \"If someone loves chocolate, they enjoy Theobromine.\"}\n"
       "{\"Compound Y\": \"Phenylethylamine\", \"statement\": \"If someone loves chocolate, they enjoy Phenylethylamine.\"}\n"
       "{\"Compound Y\": \"Anandamide\", \"statement\": \"If someone loves chocolate, they enjoy Anandamide.\"}\n"
       "{\"Compound Y\": \"Tryptophan\", \"statement\": \"If someone loves chocolate, they enjoy Tryptophan.\"}\n"
       "{\"Compound Y\": \"Caffeine\", \"statement\": \"If someone loves chocolate, they enjoy Caffeine.\"}"},
      {"user",
       "Statement: Person X was present at the Year Y Met Gala. Entity: Person X: str (e.g., "
       "Bruce Lee), Year Y: int (e.g., 1964)"},
      {"assistant",
       "{\"Person X\": \"Blake Lively\", \"Year Y\": 2018, \"statement\": \"Blake Lively was present at the 2018 Met Gala.\"}\n"
       "{\"Person X\": \"Kendall Jenner\", \"Year Y\": 2021, \"statement\": \"Kendall Jenner was present at the 2021 Met Gala.\"}\n"
       "{\"Person X\": \"Rihanna\", \"Year Y\": 2017, \"statement\": \"Rihanna was present at the 2017 Met Gala.\"}\n"
       "{\"Person X\": \"Lady Gaga\", \"Year Y\": 2019, \"statement\": \"Lady Gaga was present at the 2019 Met Gala.\"}\n"
       "{\"Person X\": \"Beyonce\", \"Year Y\": 2015, \"statement\": \"Beyonce was present at the 2015 Met Gala.\"}"},
      {"user", "Statement: {{statement}} Entity: {{entity_specs}}"},
  };
  return t;
}

PromptTemplate make_refine() {
  PromptTemplate t;
  t.name = "refine";
  t.system_message =
      "Based on the given question, a person wrote a Python program. They used the following "
      "helper functions: ask_gpt(query: str, type): ask a simple question to the knowledgeable "
      "GPT model and returns the answer in the desired type. However, the program this person "
      "wrote failed on some test cases. Given the program, and the failed test cases with "
      "corresponding reasons, write a new program that address any potential issues.";
  t.few_shot_turns = {
      {"user",
       R"(Original Question: Did Coach X (coach_x: str) turn her chair around for Contestant Y (contestant_y: str) on TV Show Z (tv_show_z: str)?
Program the person wrote:
'''
We need to consider if Contestant Y appeared on TV Show Z and if Coach X turned their chair around for Contestant Y.
'''
def participant(contestant: str, tv_show: str) -> bool:
	question = f"Did {contestant} participate in {tv_show}?"
	participation = ask_gpt(question, bool)
	return participation
def chair_turn(coach: str, contestant: str, tv_show: str) -> bool:
	question = f"Did {coach} turn their chair around for {contestant} on {tv_show}?"
	chair_turned = ask_gpt(question, bool)
	return chair_turned
def answer(coach_x: str, contestant_y: str, tv_show_z: str):
	participated = participant(contestant_y, tv_show_z)
	if not participated:
		return "Must be no"
	chair_turned = chair_turn(coach_x, contestant_y, tv_show_z)
	return "Must be yes" if chair_turned else "Must be no"
Failed case 1: answer(coach_x="Adam Levine", contestant_y="John Legend", tv_show_z="The Voice")
Failed reason 1: The concrete question in this case is 'Did Adam Levine turn her chair around for John Legend on The Voice?' Adam Levine and John Legend have both been coaches on "The Voice," but the premise of the question contains a misunderstanding of the show's format. "Turning chairs" is something coaches do during blind auditions to signal they want an artist to join their team. Since John Legend and Adam Levine are both coaches, they would not be auditioning and therefore would not have a chair turn situation between them.  As a result, if I have to guess an answer, the answer is no. However, the program returned results 'Yes'.)"},
      {"assistant",
       R"(def check_contestant(contestant: str, tv_show: str) -> bool:
	question = f"Did {contestant} participate in {tv_show} as a contestant?"
	participation = ask_gpt(question, bool)
	return participation
def check_coach(judge: str, tv_show: str) -> bool:
	question = f"Did {judge} participate in {tv_show} as a coach?"
	participation = ask_gpt(question, bool)
	return participation
def chair_turn(coach: str, contestant: str, tv_show: str) -> bool:
	question = f"Did {coach} turn their chair around for {contestant} on {tv_show}?"
	chair_turned = ask_gpt(question, bool)
	return chair_turned
def answer(coach_x: str, contestant_y: str, tv_show_z: str):
	is_coach = check_coach(coach_x, tv_show_z)
	is_contestant = check_contestant(contestant_y, tv_show_z)
	if not is_coach or not is_contestant:
		return "Must be no"
	chair_turned = chair_turn(coach_x, contestant_y, tv_show_z)
	return "Must be yes" if chair_turned else "Must be no")"},
      {"user",
       "Original Question: {{question}}\nProgram the person wrote:\n{{program}}\n{{failed_cases}}"},
  };
  return t;
}

PromptTemplate make_program_gen() {
  PromptTemplate t;
  t.name = "program_gen";
  t.system_message =
      "Based on the given question, write a Python program with some abstraction that solves "
      "the given question and all other similar questions that can be solved in a similar "
      "fashion. Think as comprehensively as possible, so that the program would work on any "
      "inputs. You can use the following helper function: ask_llm(query: str, type) to ask a "
      "simple question to the knowledgeable GPT model and returns the answer in the desired "
      "type.";
  t.few_shot_turns = {
      {"user",
       "Is there a rapper whose real name is similar to Rapper X (rapper_x: str)'s real name "
       "have more than N times (multiplier_n: int) of Award Y (award_y: str) than Rapper X "
       "(rapper_x: str)? Multiple Choices: A) yes B) no"},
      {"assistant",
       R"('''
We can first find a list of rappers with enough Award Y, then check if any of them share a similar name with Rapper X.
'''

def rapper_real_name(name: str) -> str:
	question = f"What is the real or legal name of rapper {name}?"
	real_name = ask_gpt(question, str)
	return real_name
def rapper_awards(name: str, award_name: str) -> int:
	question = f"How many {award_name} has the rapper {name} won?"
	num_awards = ask_gpt(question, int)
	return num_awards
def list_of_rappers_with_certain_awards(award_name: str, award_count: int) -> list:
	question = f"Give me a list of rappers who have won at least {str(award_count)} {award_name}."
	list_of_rappers = ask_gpt(question, list)
	return list_of_rappers
def name_similar(name_1: str, name_2: str) -> bool:
	question = f"Is the name '{name_1}' similar to the name '{name_2}'?"
	name_is_similar = ask_gpt(question, bool)
	return name_is_similar
def answer(rapper_x: str, award_y: str, multiplier_n: int):
	reference_person_awards_count = rapper_awards(rapper_x, award_y)
	target_award_count = int(multiplier_n * reference_person_awards_count)
	candidates = list_of_rappers_with_certain_awards(award_y, target_award_count)
	reference_person_real_name = rapper_real_name(rapper_x)
	for candidate_name in candidates:
		candidate_real_name = rapper_real_name(candidate_name)
		if name_similar(candidate_real_name, reference_person_real_name):
			return "Must be yes"
	return "Must be no"
#The program ends here.)"},
      {"user", "{{question}} Multiple Choices: A) yes B) no"},
  };
  return t;
}

PromptTemplate make_mcq_to_binary() {
  PromptTemplate t;
  t.name = "mcq_to_binary";
  t.system_message =
      "Combine the given question and its correct answer into a single yes/no question whose "
      "correct answer is yes. Keep the wording natural. Reply with the question only.";
  t.few_shot_turns = {
      {"user", "Question: What do people typically do while playing guitar? Correct answer: singing"},
      {"assistant", "Do people typically sing while playing guitar?"},
      {"user", "Question: Where is a business restaurant likely to be located? Correct answer: business sector"},
      {"assistant", "Is a business restaurant likely to be located in a business sector?"},
      {"user", "Question: {{question}} Correct answer: {{answer}}"},
  };
  return t;
}

PromptTemplate make_declarativize() {
  PromptTemplate t;
  t.name = "declarativize";
  t.system_message =
      "Rewrite the given yes/no question as a declarative statement, keeping every placeholder "
      "exactly as written. When the requested form is negative, state the negation. Reply with "
      "the statement only.";
  t.few_shot_turns = {
      {"user", "Question: Is City X on Coast Y? Form: positive"},
      {"assistant", "City X is on Coast Y."},
      {"user", "Question: Is City X on Coast Y? Form: negative"},
      {"assistant", "City X is not on Coast Y."},
      {"user", "Question: Did any country in War X take a general neutral role in War Y? Form: positive"},
      {"assistant", "A country in War X took a general neutral role in War Y."},
      {"user", "Question: {{question}} Form: {{form}}"},
  };
  return t;
}

}  // namespace

PromptCatalog PromptCatalog::builtin() {
  PromptCatalog c;
  c.add(make_conceptualize());
  c.add(make_cot());
  c.add(make_ask_llm());
  c.add(make_entity_gen());
  c.add(make_statement_gen());
  c.add(make_refine());
  c.add(make_program_gen());
  c.add(make_mcq_to_binary());
  c.add(make_declarativize());
  return c;
}

}  // namespace coreason
