#include "ram/io.hpp"

#include <algorithm>
#include <iomanip>
#include <regex>
#include <set>
#include <sstream>

namespace ram {

ParseError::ParseError(int line, const std::string& message)
    : InputError(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

struct Line {
  int number;
  std::string text;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({number, std::move(t)});
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Splits "key: rest" and checks the key (case-sensitive).
std::optional<std::string> after_key(const Line& line, std::string_view key) {
  const auto colon = line.text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  if (trim(std::string_view(line.text).substr(0, colon)) != key) return std::nullopt;
  return trim(std::string_view(line.text).substr(colon + 1));
}

Instance parse_objects_header(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "empty file; expected an \"objects:\" header");
  const auto rest = after_key(lines.front(), "objects");
  if (!rest) throw ParseError(lines.front().number, "expected \"objects: <name> ...\"");
  const auto names = words(*rest);
  for (const auto& name : names) {
    if (name.find_first_of(":|>,=") != std::string::npos) {
      throw ParseError(lines.front().number, "object name \"" + name + "\" contains a reserved character");
    }
  }
  try {
    return Instance(names);
  } catch (const InputError& e) {
    throw ParseError(lines.front().number, e.what());
  }
}

// "agent <k>: rest" with 1 <= k <= n. Returns the zero-based agent.
std::pair<AgentIndex, std::string> parse_agent_line(const Line& line, int n) {
  static const std::regex pattern(R"(^agent\s+(\d+)\s*:(.*)$)");
  std::smatch m;
  if (!std::regex_match(line.text, m, pattern)) {
    throw ParseError(line.number, "expected \"agent <k>: ...\"");
  }
  const std::string digits = m[1];
  if (digits.size() > 6) throw ParseError(line.number, "agent number out of range");
  const int k = std::stoi(digits);
  if (k < 1 || (n > 0 && k > n)) {
    throw ParseError(line.number, "agent number " + std::to_string(k) + " out of range");
  }
  return {k - 1, trim(m[2].str())};
}

Preference preference_from_words(const Instance& instance, const std::vector<std::string>& names,
                                 int line) {
  const int n = instance.size();
  if (static_cast<int>(names.size()) != n) {
    throw ParseError(line, "ranking lists " + std::to_string(names.size()) +
                               " objects, expected " + std::to_string(n));
  }
  std::vector<ObjectIndex> ranking;
  std::vector<bool> seen(n, false);
  for (const auto& name : names) {
    ObjectIndex a = 0;
    try {
      a = instance.object_index(name);
    } catch (const InputError&) {
      throw ParseError(line, "unknown object \"" + name + "\"");
    }
    if (seen[a]) throw ParseError(line, "duplicate object \"" + name + "\" in ranking");
    seen[a] = true;
    ranking.push_back(a);
  }
  return Preference(std::move(ranking));
}

std::vector<std::string> preference_words(std::string_view text) {
  std::string spaced(text);
  std::replace(spaced.begin(), spaced.end(), '>', ' ');
  return words(spaced);
}

Rational parse_rational_at(const std::string& token, int line) {
  try {
    return Rational::parse(token);
  } catch (const InputError& e) {
    throw ParseError(line, e.what());
  }
}

std::string pref_names(const Instance& instance, const Preference& p, std::string_view sep) {
  std::string out;
  for (ObjectIndex a : p.ranking()) {
    if (!out.empty()) out += sep;
    out += instance.object_name(a);
  }
  return out;
}

std::string header(const Instance& instance) {
  std::string out = "objects:";
  for (const auto& name : instance.object_names()) out += " " + name;
  return out + "\n";
}

}  // namespace

Preference parse_preference(const Instance& instance, std::string_view text) {
  return preference_from_words(instance, preference_words(text), 0);
}

// ---------------------------------------------------------------------------
// Profiles

ProfileFile parse_profile_file(std::string_view text) {
  const auto lines = content_lines(text);
  Instance instance = parse_objects_header(lines);
  const int n = instance.size();
  std::vector<std::optional<Preference>> prefs(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    auto [agent, rest] = parse_agent_line(lines[k], n);
    if (prefs[agent]) {
      throw ParseError(lines[k].number, "agent " + std::to_string(agent + 1) + " listed twice");
    }
    prefs[agent] = preference_from_words(instance, preference_words(rest), lines[k].number);
  }
  const auto listed = std::count_if(prefs.begin(), prefs.end(), [](auto& p) { return p.has_value(); });
  if (listed != n) {
    throw ParseError(lines.back().number, std::to_string(listed) + " agent lines for " +
                                              std::to_string(n) + " objects");
  }
  std::vector<Preference> out;
  for (auto& p : prefs) out.push_back(std::move(*p));
  return ProfileFile{std::move(instance), Profile(std::move(out))};
}

std::string write_profile_file(const Instance& instance, const Profile& profile) {
  std::string out = header(instance);
  for (AgentIndex i = 0; i < profile.size(); ++i) {
    out += "agent " + std::to_string(i + 1) + ": " + pref_names(instance, profile[i], " ") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Priors

PriorFile parse_prior_file(std::string_view text) {
  const auto lines = content_lines(text);
  Instance instance = parse_objects_header(lines);
  const int n = instance.size();
  if (n > EnumerationLimits{}.max_preference_n) {
    throw ResourceError("prior files are limited to n <= " +
                        std::to_string(EnumerationLimits{}.max_preference_n));
  }
  const std::uint64_t count = factorial(n);
  std::vector<std::optional<Rational>> probs(count);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto colon = line.text.rfind(':');
    if (colon == std::string::npos) {
      throw ParseError(line.number, "expected \"<ranking> : <probability>\"");
    }
    const Preference p = preference_from_words(
        instance, preference_words(std::string_view(line.text).substr(0, colon)), line.number);
    const auto value = words(std::string_view(line.text).substr(colon + 1));
    if (value.size() != 1) throw ParseError(line.number, "expected one probability");
    Rational prob = parse_rational_at(value.front(), line.number);
    if (prob < 0) throw ParseError(line.number, "negative probability " + prob.str());
    auto& slot = probs[p.lex_index()];
    if (slot) throw ParseError(line.number, "preference listed twice");
    slot = std::move(prob);
  }
  std::vector<Rational> values;
  for (std::uint64_t k = 0; k < count; ++k) {
    if (!probs[k]) {
      throw ParseError(0, "missing probability for preference " +
                              pref_names(instance, Preference::from_lex_index(n, k), " "));
    }
    values.push_back(std::move(*probs[k]));
  }
  const Rational total = sum(values);
  if (total != 1) {
    throw ParseError(0, "probabilities sum to " + total.str() + ", residual " +
                            (Rational(1) - total).str());
  }
  return PriorFile{std::move(instance), Prior(n, std::move(values))};
}

std::string write_prior_file(const Instance& instance, const Prior& prior) {
  std::string out = header(instance);
  for (std::size_t k = 0; k < prior.probabilities().size(); ++k) {
    out += pref_names(instance, Preference::from_lex_index(prior.n(), k), " ") + " : " +
           prior[k].str() + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mechanism tables

TableFile parse_table_file(std::string_view text) {
  const auto lines = content_lines(text);
  Instance instance = parse_objects_header(lines);
  const int n = instance.size();
  if (lines.size() < 2) throw ParseError(0, "missing \"agents: n\" line");
  const auto agents = after_key(lines[1], "agents");
  if (!agents || words(*agents).size() != 1) {
    throw ParseError(lines[1].number, "expected \"agents: <n>\"");
  }
  if (*agents != std::to_string(n)) {
    throw ParseError(lines[1].number, "agents: " + *agents + " does not match " +
                                          std::to_string(n) + " objects");
  }

  TableFile out{instance, {}};
  std::size_t k = 2;
  while (k < lines.size()) {
    const Line& head = lines[k];
    const auto body = after_key(head, "profile");
    if (!body) throw ParseError(head.number, "expected \"profile: <pref> | ... | <pref>\"");
    std::vector<Preference> prefs;
    std::size_t start = 0;
    while (true) {
      const auto bar = body->find('|', start);
      const auto part = std::string_view(*body).substr(start, bar == std::string::npos
                                                                  ? std::string::npos
                                                                  : bar - start);
      prefs.push_back(preference_from_words(instance, preference_words(part), head.number));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (static_cast<int>(prefs.size()) != n) {
      throw ParseError(head.number, "profile lists " + std::to_string(prefs.size()) +
                                        " preferences, expected " + std::to_string(n));
    }
    Profile profile(std::move(prefs));
    if (out.rows.contains(profile)) throw ParseError(head.number, "profile listed twice");

    std::vector<std::vector<Rational>> rows;
    for (AgentIndex i = 0; i < n; ++i) {
      ++k;
      if (k >= lines.size()) {
        throw ParseError(head.number, "profile block has " + std::to_string(i) + " of " +
                                          std::to_string(n) + " agent rows");
      }
      auto [agent, rest] = parse_agent_line(lines[k], n);
      if (agent != i) {
        throw ParseError(lines[k].number, "expected the row of agent " + std::to_string(i + 1));
      }
      const auto tokens = words(rest);
      if (static_cast<int>(tokens.size()) != n) {
        throw ParseError(lines[k].number, "expected " + std::to_string(n) + " shares");
      }
      std::vector<Rational> row;
      for (const auto& t : tokens) row.push_back(parse_rational_at(t, lines[k].number));
      rows.push_back(std::move(row));
    }
    try {
      (void)validate_assignment(rows);
    } catch (const InputError& e) {
      throw ParseError(head.number, e.what());
    }
    out.rows.emplace(std::move(profile), std::move(rows));
    ++k;
  }
  return out;
}

std::string write_table_file(const Instance& instance, const Mechanism& m,
                             const EnumerationLimits& limits) {
  if (instance.size() != m.n()) throw InputError("instance and mechanism disagree on n");
  const ProfileSpace space(m.n(), limits);
  std::string out = header(instance);
  out += "agents: " + std::to_string(m.n()) + "\n";
  Profile profile = space.profile(0);
  for (std::uint64_t k = 0; k < space.count(); ++k) {
    space.fill(k, profile);
    out += "profile:";
    for (AgentIndex i = 0; i < m.n(); ++i) {
      out += (i == 0 ? " " : " | ") + pref_names(instance, profile[i], " ");
    }
    out += "\n";
    const Assignment q = m.evaluate(profile);
    for (AgentIndex i = 0; i < m.n(); ++i) {
      out += "agent " + std::to_string(i + 1) + ":";
      for (ObjectIndex a = 0; a < m.n(); ++a) out += " " + q(i, a).str();
      out += "\n";
    }
  }
  return out;
}

Mechanism load_table_mechanism(std::string_view text, const EnumerationLimits& limits) {
  const TableFile t = parse_table_file(text);
  return tabulated_mechanism(t.instance, t.rows, limits);
}

// ---------------------------------------------------------------------------
// Speed schedules

EatingSpeedSchedule parse_speed_file(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty speed schedule");
  static const std::regex piece(R"(\[([^,\[\]()]+),([^,\[\]()]+)\):([^\[]+))");
  std::map<AgentIndex, std::vector<SpeedPiece>> agents;
  for (const auto& line : lines) {
    auto [agent, rest] = parse_agent_line(line, 0);
    if (agents.contains(agent)) {
      throw ParseError(line.number, "agent " + std::to_string(agent + 1) + " listed twice");
    }
    std::string compact;
    for (char c : rest) {
      if (c != ' ' && c != '\t') compact += c;
    }
    std::vector<SpeedPiece> pieces;
    std::size_t consumed = 0;
    for (auto it = std::sregex_iterator(compact.begin(), compact.end(), piece);
         it != std::sregex_iterator(); ++it) {
      if (static_cast<std::size_t>(it->position()) != consumed) {
        throw ParseError(line.number, "malformed speed piece");
      }
      consumed += it->length();
      pieces.push_back({parse_rational_at((*it)[1], line.number),
                        parse_rational_at((*it)[2], line.number),
                        parse_rational_at((*it)[3], line.number)});
    }
    if (pieces.empty() || consumed != compact.size()) {
      throw ParseError(line.number, "expected pieces \"[t0,t1):speed\"");
    }
    agents.emplace(agent, std::move(pieces));
  }
  std::vector<std::vector<SpeedPiece>> per_agent;
  for (AgentIndex i = 0; i < static_cast<AgentIndex>(agents.size()); ++i) {
    auto it = agents.find(i);
    if (it == agents.end()) throw ParseError(0, "missing agent " + std::to_string(i + 1));
    per_agent.push_back(std::move(it->second));
  }
  try {
    return EatingSpeedSchedule(std::move(per_agent));
  } catch (const InputError& e) {
    throw ParseError(0, e.what());
  }
}

std::string write_speed_file(const EatingSpeedSchedule& speeds) {
  std::string out;
  for (AgentIndex i = 0; i < speeds.agents(); ++i) {
    out += "agent " + std::to_string(i + 1) + ":";
    for (const auto& p : speeds.pieces(i)) {
      out += " [" + p.start.str() + "," + p.end.str() + "):" + p.speed.str();
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Assignments

AssignmentFile parse_assignment_file(std::string_view text) {
  const auto lines = content_lines(text);
  Instance instance = parse_objects_header(lines);
  const int n = instance.size();
  std::vector<std::optional<std::vector<Rational>>> rows(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    auto [agent, rest] = parse_agent_line(lines[k], n);
    if (rows[agent]) {
      throw ParseError(lines[k].number, "agent " + std::to_string(agent + 1) + " listed twice");
    }
    const auto tokens = words(rest);
    if (static_cast<int>(tokens.size()) != n) {
      throw ParseError(lines[k].number, "expected " + std::to_string(n) + " shares");
    }
    std::vector<Rational> row;
    for (const auto& t : tokens) row.push_back(parse_rational_at(t, lines[k].number));
    rows[agent] = std::move(row);
  }
  std::vector<std::vector<Rational>> matrix;
  for (AgentIndex i = 0; i < n; ++i) {
    if (!rows[i]) throw ParseError(0, "missing row for agent " + std::to_string(i + 1));
    matrix.push_back(std::move(*rows[i]));
  }
  return AssignmentFile{std::move(instance), validate_assignment(matrix)};
}

std::string write_assignment_file(const Instance& instance, const Assignment& assignment) {
  std::string out = header(instance);
  for (AgentIndex i = 0; i < assignment.size(); ++i) {
    out += "agent " + std::to_string(i + 1) + ":";
    for (const auto& x : assignment.row(i)) out += " " + x.str();
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string pref_arrow(const Instance& instance, const Preference& p) {
  return pref_names(instance, p, ">");
}

std::string profile_machine(const Instance& instance, const Profile& profile) {
  std::string out;
  for (AgentIndex i = 0; i < profile.size(); ++i) {
    if (i > 0) out += "|";
    out += pref_arrow(instance, profile[i]);
  }
  return out;
}

std::string object_list(const Instance& instance, const std::vector<int>& objects,
                        std::string_view sep) {
  std::string out;
  for (int a : objects) {
    if (!out.empty()) out += sep;
    out += instance.object_name(a);
  }
  return out;
}

std::string agent_list(const std::vector<int>& agents, std::string_view sep) {
  std::string out;
  for (int i : agents) {
    if (!out.empty()) out += sep;
    out += std::to_string(i + 1);
  }
  return out;
}

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::kAtLeast:
      return ">=";
    case Relation::kAtMost:
      return "<=";
    case Relation::kEqual:
      return "=";
    case Relation::kNone:
      break;
  }
  return "none";
}

std::string_view relation_word(Relation r) {
  switch (r) {
    case Relation::kAtLeast:
      return "at-least";
    case Relation::kAtMost:
      return "at-most";
    case Relation::kEqual:
      return "equal";
    case Relation::kNone:
      break;
  }
  return "none";
}

std::string component_text(const Instance& instance, const DeterministicAssignment& d,
                           std::string_view arrow, std::string_view sep) {
  std::string out;
  for (AgentIndex i = 0; i < d.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(i + 1) + std::string(arrow) + instance.object_name(d[i]);
  }
  return out;
}

std::string permutation_text(const Instance& instance, const ObjectPermutation& sigma) {
  std::string out;
  for (ObjectIndex a = 0; a < sigma.size(); ++a) {
    if (a > 0) out += ",";
    out += instance.object_name(a) + "->" + instance.object_name(sigma(a));
  }
  return out;
}

std::string report_machine(const Instance& instance, const ViolationReport& v) {
  std::string out = "violation axiom=" + std::string(axiom_name(v.axiom));
  if (v.agent >= 0) out += " agent=" + std::to_string(v.agent + 1);
  if (v.other_agent) out += " other=" + std::to_string(*v.other_agent + 1);
  if (v.profile) out += " profile=" + profile_machine(instance, *v.profile);
  if (v.truthful) out += " truthful=" + pref_arrow(instance, *v.truthful);
  if (v.deviation) out += " deviation=" + pref_arrow(instance, *v.deviation);
  if (v.swap) {
    out += " swap=" + instance.object_name(v.swap->lowered) + "," +
           instance.object_name(v.swap->raised) + "@" + std::to_string(v.swap->position + 1);
  }
  if (v.permutation) out += " sigma=" + permutation_text(instance, *v.permutation);
  if (v.component) out += " component=" + component_text(instance, *v.component, "->", ",");
  if (v.prefix_length > 0) out += " prefix=" + std::to_string(v.prefix_length);
  if (!v.witness.empty()) {
    out += v.axiom == Axiom::kExPostEfficiency ? " cycle=" + agent_list(v.witness, ",")
           : v.axiom == Axiom::kOrdinalEfficiency ? " cycle=" + object_list(instance, v.witness, ",")
                                                  : " objects=" + object_list(instance, v.witness, ",");
  }
  if (v.relation != Relation::kNone) {
    out += " relation=" + std::string(relation_word(v.relation));
  }
  if (v.axiom == Axiom::kExPostEfficiency) {
    out += " weight=" + v.lhs.str();
  } else if (v.axiom != Axiom::kOrdinalEfficiency) {
    out += " lhs=" + v.lhs.str() + " rhs=" + v.rhs.str();
  }
  return out + "\n";
}

std::string report_human(const Instance& instance, const ViolationReport& v) {
  std::ostringstream os;
  os << "  " << axiom_name(v.axiom) << " violated";
  if (v.agent >= 0) os << " for agent " << v.agent + 1;
  os << "\n";
  if (v.profile) os << "    profile:    " << to_string(instance, *v.profile) << "\n";
  const bool interim = is_interim(v.axiom);
  if (v.truthful && (interim || v.deviation)) {
    os << "    truthful:   " << pref_arrow(instance, *v.truthful) << "\n";
  }
  if (v.deviation) os << "    deviation:  " << pref_arrow(instance, *v.deviation) << "\n";
  const std::string who = interim ? "q" : "Q";
  switch (v.axiom) {
    case Axiom::kStrategyProofness:
    case Axiom::kWeakStrategyProofness:
    case Axiom::kObic:
      os << "    top " << v.prefix_length << " {" << object_list(instance, v.witness, ", ")
         << "}: truthful " << v.lhs << " < deviation " << v.rhs << "\n";
      break;
    case Axiom::kElementaryMonotonicity:
    case Axiom::kUpperInvariance:
    case Axiom::kLowerInvariance:
    case Axiom::kInterimElementaryMonotonicity:
    case Axiom::kInterimUpperInvariance:
    case Axiom::kInterimLowerInvariance: {
      const std::string x = instance.object_name(v.witness.front());
      os << "    swap " << instance.object_name(v.swap->lowered) << ","
         << instance.object_name(v.swap->raised) << " at rank " << v.swap->position + 1 << "\n";
      os << "    requires " << who << "(deviation)[" << x << "] " << relation_symbol(v.relation)
         << " " << who << "(truthful)[" << x << "], got " << v.lhs << " vs " << v.rhs << "\n";
      break;
    }
    case Axiom::kNeutrality: {
      const ObjectIndex a = v.witness.front();
      os << "    sigma:      " << permutation_text(instance, *v.permutation) << "\n";
      os << "    Q[" << instance.object_name(a) << "] = " << v.lhs << " but Q^sigma["
         << instance.object_name((*v.permutation)(a)) << "] = " << v.rhs << "\n";
      break;
    }
    case Axiom::kEqualTreatment:
      os << "    agents " << v.agent + 1 << " and " << *v.other_agent + 1 << " differ on "
         << instance.object_name(v.witness.front()) << ": " << v.lhs << " vs " << v.rhs << "\n";
      break;
    case Axiom::kOrdinalEfficiency:
      os << "    tau cycle:  " << object_list(instance, v.witness, " -> ") << " -> "
         << instance.object_name(v.witness.front()) << "\n";
      break;
    case Axiom::kExPostEfficiency:
      os << "    component (weight " << v.lhs
         << "): " << component_text(instance, *v.component, "->", ", ") << "\n";
      os << "    agents trading in a cycle: " << agent_list(v.witness, ", ") << "\n";
      break;
  }
  return os.str();
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string render_report(const Instance& instance, const ViolationReport& report,
                          OutputFormat format) {
  return format == OutputFormat::kMachine ? report_machine(instance, report)
                                          : report_human(instance, report);
}

std::string render_outcome(const Instance& instance, const CheckOutcome& outcome,
                           OutputFormat format) {
  std::string out;
  const std::string name(axiom_name(outcome.axiom));
  if (format == OutputFormat::kMachine) {
    out += "verdict axiom=" + name + " status=" + (outcome.satisfied() ? "satisfied" : "violated") +
           " violations=" + std::to_string(outcome.violations.size()) +
           " profiles=" + std::to_string(outcome.stats.profiles_checked) +
           " comparisons=" + std::to_string(outcome.stats.comparisons) + "\n";
    for (const auto& v : outcome.violations) out += report_machine(instance, v);
    return out;
  }
  out += name + ": " + (outcome.satisfied() ? "SATISFIED" : "VIOLATED");
  if (!outcome.satisfied()) {
    out += " (" + std::to_string(outcome.violations.size()) + " violation" +
           (outcome.violations.size() == 1 ? "" : "s") + ")";
  }
  out += "\n  checked " + std::to_string(outcome.stats.profiles_checked) + " cases, " +
         std::to_string(outcome.stats.comparisons) + " comparisons\n";
  for (const auto& v : outcome.violations) out += report_human(instance, v);
  return out;
}

std::string render_assignment(const Instance& instance, const Assignment& l, OutputFormat format) {
  const int n = l.size();
  std::string out;
  if (format == OutputFormat::kMachine) {
    for (AgentIndex i = 0; i < n; ++i) {
      out += "row agent=" + std::to_string(i + 1);
      for (ObjectIndex a = 0; a < n; ++a) out += " " + instance.object_name(a) + "=" + l(i, a).str();
      out += "\n";
    }
    return out;
  }
  std::size_t width = 1;
  for (const auto& x : l.entries()) width = std::max(width, x.str().size());
  for (const auto& name : instance.object_names()) width = std::max(width, name.size());
  width += 2;
  const std::string label = "agent " + std::to_string(n);
  out += pad("", label.size() + 2);
  for (ObjectIndex a = 0; a < n; ++a) out += pad(instance.object_name(a), width);
  out += "\n";
  for (AgentIndex i = 0; i < n; ++i) {
    out += pad("agent " + std::to_string(i + 1), label.size() + 2);
    for (ObjectIndex a = 0; a < n; ++a) out += pad(l(i, a).str(), width);
    out += "\n";
  }
  // Drop the trailing padding on each line.
  std::string trimmed;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    trimmed += line + "\n";
  }
  return trimmed;
}

std::string render_decomposition(const Instance& instance, const Decomposition& d,
                                 OutputFormat format) {
  std::string out;
  for (const auto& term : d.terms()) {
    if (format == OutputFormat::kMachine) {
      out += "term weight=" + term.weight.str() + " component=" +
             component_text(instance, term.component, "->", ",") + "\n";
    } else {
      out += term.weight.str() + " : " + component_text(instance, term.component, "↦", ", ") + "\n";
    }
  }
  return out;
}

std::string render_rank_vectors(const Instance& instance, const RankVectorReport& r,
                                OutputFormat format) {
  std::string out;
  const int n = instance.size();
  if (format == OutputFormat::kMachine) {
    for (std::size_t k = 0; k < r.reports.size(); ++k) {
      out += "ranks agent=" + std::to_string(r.agent + 1) +
             " report=" + pref_arrow(instance, r.reports[k]);
      for (int rank = 0; rank < n; ++rank) out += " " + r.rank_vectors[k][rank].str();
      out += "\n";
    }
    out += std::string("flags rank_invariant=") + (r.rank_invariant ? "true" : "false") +
           " rank_monotone=" + (r.rank_monotone ? "true" : "false") + "\n";
    return out;
  }
  std::size_t width = 8;
  for (const auto& v : r.rank_vectors) {
    for (const auto& x : v) width = std::max(width, x.str().size() + 2);
  }
  std::size_t pref_width = 0;
  for (const auto& p : r.reports) pref_width = std::max(pref_width, pref_arrow(instance, p).size());
  pref_width = std::max<std::size_t>(pref_width, 6) + 2;
  out += "interim rank vectors of agent " + std::to_string(r.agent + 1) + "\n";
  std::string head = pad("report", pref_width);
  for (int rank = 0; rank < n; ++rank) head += pad("rank " + std::to_string(rank + 1), width);
  head.erase(head.find_last_not_of(' ') + 1);
  out += head + "\n";
  for (std::size_t k = 0; k < r.reports.size(); ++k) {
    std::string line = pad(pref_arrow(instance, r.reports[k]), pref_width);
    for (int rank = 0; rank < n; ++rank) line += pad(r.rank_vectors[k][rank].str(), width);
    line.erase(line.find_last_not_of(' ') + 1);
    out += line + "\n";
  }
  out += std::string("rank invariant: ") + (r.rank_invariant ? "yes" : "no") + "\n";
  out += std::string("rank monotone:  ") + (r.rank_monotone ? "yes" : "no") + "\n";
  return out;
}

std::string render_prior(const Instance& instance, const Prior& prior, OutputFormat format) {
  if (format == OutputFormat::kHuman) return write_prior_file(instance, prior);
  std::string out;
  for (std::size_t k = 0; k < prior.probabilities().size(); ++k) {
    out += "prior preference=" + pref_arrow(instance, Preference::from_lex_index(prior.n(), k)) +
           " p=" + prior[k].str() + "\n";
  }
  return out;
}

}  // namespace ram
