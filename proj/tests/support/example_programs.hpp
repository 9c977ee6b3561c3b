#pragma once

// Program sources used across parser/rewriter/selection tests. Tab-indented,
// as generated program text tends to be.

namespace coreason::testing {

// Checks preferences and budget but never whether the team already exists.
inline const char* kSchoolProgram1 = R"(def students_preferences(school: str, sport: str) -> bool:
	question = f"Would students at {school} prefer to have a {sport} sports team?"
	preferences = ask_gpt(question, bool)
	return preferences
def school_budget(school: str) -> int:
	question = f"What is the budget of {school}?"
	budget = ask_gpt(question, int)
	return budget
def answer(school_x: str, sports_team_y: str):
	preferences = students_preferences(school_x, sports_team_y)
	if preferences:
		budget = school_budget(school_x)
		if budget >= 5000000:
			return "Must be yes"
	return "Must be no"
)";

// Checks for an existing team first; already calls eq_override directly.
inline const char* kSchoolProgram2 = R"(def has_sports_team(school: str, sport: str) -> bool:
	question = f"Does {school} have a {sport} team?"
	team_exists = ask_gpt(question, bool)
	return team_exists
def popularity_of_sport(sport: str) -> str:
	question = f"How popular is the sport {sport}?"
	popularity = ask_gpt(question, str)
	return popularity
def answer(school_x: str, sports_team_y: str):
	if has_sports_team(school_x, sports_team_y):
		return "Must be no"
	school_popularity = popularity_of_sport(sports_team_y)
	if eq_override(school_popularity, 'very popular'):
		return "Must be yes"
	return "Must be no"
)";

// Membership check between two participant lists; misses neutrality.
inline const char* kWarProgram = R"(def participating_countries_in_war(war: str) -> list:
	question = f"Which countries were involved in {war}?"
	countries = ask_gpt(question, list)
	return countries
def answer(war_x: str, war_y: str):
	war_x_countries = participating_countries_in_war(war_x)
	war_y_countries = participating_countries_in_war(war_y)
	for country_x in war_x_countries:
		if country_x in war_y_countries:
			return "Must be yes"
	return "Must be no"
)";

// The refined variant: adds the neutrality check.
inline const char* kWarProgramRefined = R"(def participating_countries_in_war(war: str) -> list:
	question = f"Which countries were involved in {war}?"
	countries = ask_gpt(question, list)
	return countries
def neutral_country_in_war(country: str, war: str) -> bool:
	question = f"Was {country} neutral in {war}?"
	neutral = ask_gpt(question, bool)
	return neutral
def answer(war_x: str, war_y: str):
	war_x_countries = participating_countries_in_war(war_x)
	war_y_countries = participating_countries_in_war(war_y)
	for country_x in war_x_countries:
		if (in_override(country_x, war_y_countries) and neutral_country_in_war(country_x, war_y)):
			return "Must be yes"
	return "Must be no"
)";

}  // namespace coreason::testing
