#include "ram/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ram/axioms.hpp"
#include "ram/decomp.hpp"
#include "ram/interim.hpp"
#include "ram/io.hpp"
#include "ram/mechanisms.hpp"

namespace ram::cli {
namespace {

struct Common {
  std::string mechanism = "ps";
  int n = 0;
  int threads = 0;
  std::string format = "human";
  bool allow_large = false;
};

struct Setup {
  Instance instance;
  Mechanism mechanism;
  EnumerationLimits limits;
  OutputFormat format;
  int threads;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string file_context(const std::string& path, const InputError& e) {
  return path + ": " + e.what();
}

template <class F>
auto parse_from_file(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const InputError& e) {
    throw InputError(file_context(path, e));
  }
}

EnumerationLimits limits_for(const Common& c) {
  EnumerationLimits limits;
  if (c.allow_large) {
    limits.max_preference_n = 8;
    limits.max_sweep_n = 5;
  }
  return limits;
}

void check_n(int& n, int found, const std::string& source) {
  if (n != 0 && n != found) {
    throw InputError(source + " has n = " + std::to_string(found) + " but --n is " +
                     std::to_string(n));
  }
  n = found;
}

void check_names(std::optional<Instance>& instance, const Instance& found,
                 const std::string& source) {
  if (instance && *instance != found) {
    throw InputError(source + " names objects differently from the other inputs");
  }
  instance = found;
}

// Builds the mechanism named by the selector. `instance` may already be fixed
// by a profile file; table files fix it too.
Setup resolve(const Common& c, std::optional<Instance> instance = std::nullopt) {
  const EnumerationLimits limits = limits_for(c);
  int n = c.n;
  if (n < 0) throw InputError("--n must be positive");
  if (instance) check_n(n, instance->size(), "the profile");

  const std::string& sel = c.mechanism;
  const auto colon = sel.find(':');
  const std::string kind = sel.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : sel.substr(colon + 1);
  std::optional<Mechanism> mechanism;

  if (kind == "table") {
    if (arg.empty()) throw InputError("table: needs a file");
    const TableFile t = parse_from_file(arg, [](const std::string& s) { return parse_table_file(s); });
    check_n(n, t.instance.size(), arg);
    check_names(instance, t.instance, arg);
    mechanism = tabulated_mechanism(t.instance, t.rows, limits);
  } else if (kind == "sea") {
    if (arg.empty()) throw InputError("sea: needs a speed-schedule file");
    EatingSpeedSchedule speeds =
        parse_from_file(arg, [](const std::string& s) { return parse_speed_file(s); });
    check_n(n, speeds.agents(), arg);
    mechanism = make_simultaneous_eating(speeds);
  } else if (kind == "sd") {
    std::vector<AgentIndex> order;
    std::stringstream ss(arg);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos ||
          tok.size() > 6) {
        throw InputError("sd order must list agents as 1,2,...; got \"" + arg + "\"");
      }
      order.push_back(std::stoi(tok) - 1);
    }
    if (order.empty()) throw InputError("sd: needs a priority order such as sd:1,2,3");
    check_n(n, static_cast<int>(order.size()), "the sd order");
    mechanism = make_serial_dictatorship(PriorityOrder(order));
  } else if (sel == "ps" || sel == "rp") {
    if (n == 0) n = 3;
    if (sel == "ps") {
      mechanism = make_probabilistic_serial(n);
    } else {
      if (n > limits.max_preference_n) {
        throw ResourceError("random priority averages n! orders; n = " + std::to_string(n) +
                            " exceeds the cap " + std::to_string(limits.max_preference_n));
      }
      mechanism = make_random_priority(n, limits);
    }
  } else {
    throw InputError("unknown mechanism \"" + sel + "\"; expected ps, rp, sd:<order>, " +
                     "sea:<file> or table:<file>");
  }
  if (!instance) instance = Instance::with_default_names(n);
  OutputFormat format = OutputFormat::kHuman;
  if (c.format == "machine") format = OutputFormat::kMachine;
  return Setup{*instance, *mechanism, limits, format, c.threads};
}

SweepOptions sweep_options(const Setup& s, bool exhaustive, bool first) {
  SweepOptions o;
  o.threads = s.threads;
  o.limits = s.limits;
  if (exhaustive) o.mode = SweepMode::kExhaustive;
  if (first) o.mode = SweepMode::kFirstViolation;
  return o;
}

void require_sweep_cap(const Setup& s) {
  if (s.instance.size() > s.limits.max_sweep_n) {
    throw ResourceError("sweeps walk (n!)^n profiles; n = " + std::to_string(s.instance.size()) +
                        " exceeds the cap " + std::to_string(s.limits.max_sweep_n) +
                        " (use --allow-large to raise it)");
  }
}

Prior load_prior(const std::string& selector, const Setup& s) {
  if (selector == "uniform") return uniform_prior(s.instance.size(), s.limits);
  if (selector.rfind("file:", 0) == 0) {
    const std::string path = selector.substr(5);
    PriorFile f = parse_from_file(path, [](const std::string& t) { return parse_prior_file(t); });
    if (f.instance != s.instance) {
      throw InputError(path + ": objects do not match the mechanism's objects");
    }
    return f.prior;
  }
  throw InputError("prior must be \"uniform\" or \"file:<path>\"");
}

std::optional<Profile> load_profile(const std::string& path, const std::string& inline_profile,
                                    std::optional<Instance>& instance) {
  if (!path.empty() && !inline_profile.empty()) {
    throw InputError("give either --profile or --at, not both");
  }
  if (!path.empty()) {
    ProfileFile f = parse_from_file(path, [](const std::string& t) { return parse_profile_file(t); });
    instance = f.instance;
    return f.profile;
  }
  return std::nullopt;
}

Profile parse_inline_profile(const Instance& instance, const std::string& text) {
  std::vector<Preference> prefs;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, '|');) prefs.push_back(parse_preference(instance, part));
  if (static_cast<int>(prefs.size()) != instance.size()) {
    throw InputError("--at lists " + std::to_string(prefs.size()) + " preferences, expected " +
                     std::to_string(instance.size()));
  }
  return Profile(std::move(prefs));
}

void add_common(CLI::App* cmd, Common& c, bool with_threads) {
  cmd->add_option("--mechanism,-m", c.mechanism, "ps | rp | sd:<order> | sea:<file> | table:<file>");
  cmd->add_option("--n", c.n, "number of agents and objects")->check(CLI::Range(1, 26));
  cmd->add_option("--format", c.format, "human | machine")
      ->check(CLI::IsMember({"human", "machine"}));
  cmd->add_flag("--allow-large", c.allow_large, "raise the enumeration caps");
  if (with_threads) cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)");
}

// ---------------------------------------------------------------------------

int demo_table1(std::ostream& out, OutputFormat format) {
  const Instance inst = Instance::with_default_names(3);
  auto pref = [&](std::string_view s) { return parse_preference(inst, s); };
  const Profile truthful({pref("c>a>b"), pref("a>b>c"), pref("c>a>b")});
  const Profile manipulated = truthful.with(0, pref("a>c>b"));
  const Assignment left = probabilistic_serial(truthful);
  const Assignment right = probabilistic_serial(manipulated);
  const auto& p1 = truthful[0];
  const auto truth_fails = first_fosd_failure(left.row(0), right.row(0), p1);
  const auto dev_fails = first_fosd_failure(right.row(0), left.row(0), p1);
  if (!truth_fails || !dev_fails) throw InternalError("table 1 rows are comparable");

  auto prefix_objects = [&](int len) {
    std::string s;
    for (int k = 0; k < len; ++k) s += (k ? "," : "") + inst.object_name(p1.object_at(k));
    return s;
  };

  if (format == OutputFormat::kMachine) {
    out << "profile name=truthful value=" << to_string(inst, truthful) << "\n";
    out << "profile name=manipulated value=" << to_string(inst, manipulated) << "\n";
    for (const auto& [name, l] : {std::pair{"truthful", &left}, std::pair{"manipulated", &right}}) {
      std::istringstream rows(render_assignment(inst, *l, OutputFormat::kMachine));
      for (std::string line; std::getline(rows, line);) out << line << " at=" << name << "\n";
    }
    out << "fosd agent=1 preference=" << to_string(inst, p1) << " truthful_dominates=false"
        << " prefix=" << truth_fails->prefix_length
        << " objects=" << prefix_objects(truth_fails->prefix_length)
        << " truthful=" << truth_fails->lhs << " manipulated=" << truth_fails->rhs << "\n";
    out << "fosd agent=1 preference=" << to_string(inst, p1) << " manipulated_dominates=false"
        << " prefix=" << dev_fails->prefix_length
        << " objects=" << prefix_objects(dev_fails->prefix_length)
        << " manipulated=" << dev_fails->lhs << " truthful=" << dev_fails->rhs << "\n";
    out << "verdict incomparable=true\n";
    return kOk;
  }

  out << "Manipulation by agent 1 under probabilistic serial\n\n";
  out << "truthful profile:     " << to_string(inst, truthful) << "\n";
  out << render_assignment(inst, left, format) << "\n";
  out << "agent 1 reports a>c>b: " << to_string(inst, manipulated) << "\n";
  out << render_assignment(inst, right, format) << "\n";
  out << "agent 1's rows under the true preference " << to_string(inst, p1) << ":\n";
  out << "  top " << truth_fails->prefix_length << " {" << prefix_objects(truth_fails->prefix_length)
      << "}: truthful " << truth_fails->lhs << " < manipulated " << truth_fails->rhs << "\n";
  out << "  top " << dev_fails->prefix_length << " {" << prefix_objects(dev_fails->prefix_length)
      << "}: manipulated " << dev_fails->lhs << " < truthful " << dev_fails->rhs << "\n";
  out << "neither row stochastically dominates the other: the misreport is a profitable\n"
         "deviation for some utilities consistent with c>a>b, so PS is not strategy-proof.\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact random assignment mechanisms and axiom checks", "ram"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::string profile_path;
  std::string inline_profile;
  std::string axiom_text;
  bool exhaustive = false;
  bool first = false;
  std::string prior_selector = "uniform";
  std::string epsilon_text = "1/20";
  int samples = 100;
  std::uint64_t seed = 1;
  bool targeted = false;
  std::string assignment_path;
  int agent = 1;
  std::string demo_name;

  auto* eval = app.add_subcommand("eval", "evaluate a mechanism at a profile");
  add_common(eval, common, false);
  eval->add_option("--profile", profile_path, "profile file");
  eval->add_option("--at", inline_profile, "inline profile such as \"c>a>b|a>b>c|c>a>b\"");

  auto* check = app.add_subcommand("check", "sweep an ex-post axiom over all profiles");
  add_common(check, common, true);
  check->add_option("--axiom", axiom_text, "sp | weak-sp | em | neutral | ui | li | ete | oe | ex-post")
      ->required()
      ->check(CLI::IsMember({"sp", "weak-sp", "em", "neutral", "ui", "li", "ete", "oe", "ex-post"}));
  auto* ex_flag = check->add_flag("--exhaustive", exhaustive, "report every violation");
  check->add_flag("--first", first, "stop at the first violation in enumeration order")
      ->excludes(ex_flag);

  auto* obic = app.add_subcommand("obic", "interim incentive compatibility under a prior");
  add_common(obic, common, true);
  obic->add_option("--prior", prior_selector, "uniform | file:<path>");

  auto* lrobic = app.add_subcommand("lrobic", "search an epsilon ball of priors for an OBIC failure");
  add_common(lrobic, common, true);
  lrobic->add_option("--center", prior_selector, "uniform | file:<path>");
  lrobic->add_option("--epsilon", epsilon_text, "ball radius, p/q");
  lrobic->add_option("--samples", samples, "number of sampled priors");
  lrobic->add_option("--seed", seed, "64-bit seed");
  lrobic->add_flag("--targeted", targeted, "perturb the preferences of an invariance witness");

  auto* decompose = app.add_subcommand("decompose", "Birkhoff-von Neumann decomposition");
  add_common(decompose, common, false);
  decompose->add_option("--assignment", assignment_path, "assignment file");
  decompose->add_option("--profile", profile_path, "profile file (decomposes the mechanism output)");
  decompose->add_option("--at", inline_profile, "inline profile");

  auto* ranks = app.add_subcommand("ranks", "interim rank vectors of one agent");
  add_common(ranks, common, true);
  ranks->add_option("--prior", prior_selector, "uniform | file:<path>");
  ranks->add_option("--agent", agent, "agent number, from 1");

  auto* tabulate = app.add_subcommand("tabulate", "write a mechanism-table file");
  add_common(tabulate, common, false);

  auto* demo = app.add_subcommand("demo", "worked examples");
  demo->add_option("name", demo_name, "table1")->required()->check(CLI::IsMember({"table1"}));
  demo->add_option("--format", common.format, "human | machine")
      ->check(CLI::IsMember({"human", "machine"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    const OutputFormat format =
        common.format == "machine" ? OutputFormat::kMachine : OutputFormat::kHuman;

    if (demo->parsed()) return demo_table1(out, format);

    if (eval->parsed() || (decompose->parsed() && assignment_path.empty())) {
      std::optional<Instance> instance;
      std::optional<Profile> profile = load_profile(profile_path, inline_profile, instance);
      const Setup s = resolve(common, instance);
      if (!profile) {
        if (inline_profile.empty()) throw InputError("give a profile with --profile or --at");
        profile = parse_inline_profile(s.instance, inline_profile);
      }
      const Assignment l = s.mechanism.evaluate(*profile);
      if (eval->parsed()) {
        if (format == OutputFormat::kHuman) {
          out << s.mechanism.descriptor() << " at " << to_string(s.instance, *profile) << "\n";
        }
        out << render_assignment(s.instance, l, format);
        return kOk;
      }
      out << render_decomposition(s.instance, birkhoff_decompose(l), format);
      return kOk;
    }

    if (decompose->parsed()) {
      if (!profile_path.empty() || !inline_profile.empty()) {
        throw InputError("give either --assignment or a profile, not both");
      }
      const AssignmentFile f = parse_from_file(
          assignment_path, [](const std::string& t) { return parse_assignment_file(t); });
      out << render_decomposition(f.instance, birkhoff_decompose(f.assignment), format);
      return kOk;
    }

    if (tabulate->parsed()) {
      const Setup s = resolve(common);
      require_sweep_cap(s);
      out << write_table_file(s.instance, s.mechanism, s.limits);
      return kOk;
    }

    if (check->parsed()) {
      const Setup s = resolve(common);
      require_sweep_cap(s);
      const CheckOutcome outcome =
          check_axiom(parse_axiom(axiom_text), s.mechanism, sweep_options(s, exhaustive, first));
      out << render_outcome(s.instance, outcome, format);
      return outcome.satisfied() ? kOk : kViolation;
    }

    if (obic->parsed()) {
      const Setup s = resolve(common);
      require_sweep_cap(s);
      const Prior prior = load_prior(prior_selector, s);
      const ObicDecomposition d =
          obic_decomposition_report(s.mechanism, prior, sweep_options(s, false, false));
      for (const auto* o : {&d.obic, &d.elementary_monotonicity, &d.upper_invariance,
                            &d.lower_invariance}) {
        out << render_outcome(s.instance, *o, format);
      }
      return d.obic.satisfied() ? kOk : kViolation;
    }

    if (lrobic->parsed()) {
      const Setup s = resolve(common);
      require_sweep_cap(s);
      const Prior center = load_prior(prior_selector, s);
      const Rational epsilon = Rational::parse(epsilon_text);
      LrobicOptions options;
      options.targeted = targeted;
      options.sweep = sweep_options(s, false, false);
      const auto found = lrobic_search(s.mechanism, center, epsilon, samples, seed, options);
      if (!found) {
        if (format == OutputFormat::kMachine) {
          out << "lrobic status=none samples=" << samples << " seed=" << seed
              << " epsilon=" << epsilon << "\n";
        } else {
          out << "no violating prior found in " << samples << " samples\n";
        }
        return kOk;
      }
      if (format == OutputFormat::kMachine) {
        out << "lrobic status=found sample=" << found->sample_index
            << " sample_seed=" << found->prior.seed << " epsilon=" << epsilon << "\n";
      } else {
        out << "violating prior found at sample " << found->sample_index << " (sample seed "
            << found->prior.seed << "); the mechanism is not OBIC at this prior:\n";
      }
      out << render_prior(s.instance, found->prior.sample, format);
      if (format == OutputFormat::kHuman) out << "\n";
      out << render_report(s.instance, found->witness, format);
      return kViolation;
    }

    if (ranks->parsed()) {
      const Setup s = resolve(common);
      require_sweep_cap(s);
      if (agent < 1 || agent > s.instance.size()) throw InputError("--agent out of range");
      const Prior prior = load_prior(prior_selector, s);
      out << render_rank_vectors(
          s.instance,
          rank_vector_report(s.mechanism, prior, agent - 1, sweep_options(s, false, false)),
          format);
      return kOk;
    }
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  err << "no command given\n";
  return kInputError;
}

}  // namespace ram::cli
