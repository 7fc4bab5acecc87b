#ifndef RAM_IO_HPP_
#define RAM_IO_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ram/axioms.hpp"
#include "ram/core.hpp"
#include "ram/decomp.hpp"
#include "ram/interim.hpp"
#include "ram/mechanisms.hpp"

namespace ram {

// Input error located in a text file. line() is 1-based; 0 means "whole file".
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& message);
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

// All formats: one record per line, "#" starts a comment, blank lines and extra
// whitespace are ignored. Agents are numbered from 1 in files.

struct ProfileFile {
  Instance instance;
  Profile profile;
};
// objects: a b c
// agent 1: c a b
ProfileFile parse_profile_file(std::string_view text);
std::string write_profile_file(const Instance& instance, const Profile& profile);

struct PriorFile {
  Instance instance;
  Prior prior;
};
// objects: a b c
// a b c : 1/6      (one line per preference, all n! required)
PriorFile parse_prior_file(std::string_view text);
std::string write_prior_file(const Instance& instance, const Prior& prior);

struct TableFile {
  Instance instance;
  std::map<Profile, std::vector<std::vector<Rational>>> rows;
};
// objects: a b c
// agents: 3
// profile: c a b | a b c | c a b
// agent 1: 1/6 1/3 1/2       (shares in header order)
TableFile parse_table_file(std::string_view text);
// Tabulates `m` over every profile. Subject to the sweep cap.
std::string write_table_file(const Instance& instance, const Mechanism& m,
                             const EnumerationLimits& limits = {});
Mechanism load_table_mechanism(std::string_view text, const EnumerationLimits& limits = {});

// agent 1: [0,1/2):2 [1/2,1):0
EatingSpeedSchedule parse_speed_file(std::string_view text);
std::string write_speed_file(const EatingSpeedSchedule& speeds);

struct AssignmentFile {
  Instance instance;
  Assignment assignment;
};
// objects: a b
// agent 1: 1/2 1/2
AssignmentFile parse_assignment_file(std::string_view text);
std::string write_assignment_file(const Instance& instance, const Assignment& assignment);

// Preference named best to worst, e.g. "c>a>b"; objects may be separated by
// '>' or whitespace.
Preference parse_preference(const Instance& instance, std::string_view text);

enum class OutputFormat { kHuman, kMachine };

std::string render_assignment(const Instance& instance, const Assignment& assignment,
                              OutputFormat format);
// "1/2 : 1->a, 2->b" per term, one term per line.
std::string render_decomposition(const Instance& instance, const Decomposition& d,
                                 OutputFormat format);
std::string render_report(const Instance& instance, const ViolationReport& report,
                          OutputFormat format);
// Verdict line, statistics and every violation.
std::string render_outcome(const Instance& instance, const CheckOutcome& outcome,
                           OutputFormat format);
std::string render_rank_vectors(const Instance& instance, const RankVectorReport& report,
                                OutputFormat format);
std::string render_prior(const Instance& instance, const Prior& prior, OutputFormat format);

}  // namespace ram

#endif  // RAM_IO_HPP_
