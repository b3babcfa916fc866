// bioctool: batch front end over the bioct headers.  Verbs parse JSON
// descriptors (inline, from a file, or from stdin), run the computation,
// and emit a JSON or text report.  The report bodies live in
// bioct/jsonio.hpp and are shared with the python bindings.
//
// Exit codes: 0 success; 1 invalid input (schema or precondition); 2
// internal invariant violation (cross-checks such as the two b6
// computations disagreeing); 3 an Undecided verdict where a decision was
// requested without --allow-undecided.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bioct/jsonio.hpp"

using nlohmann::json;
using namespace bioct;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ----- input/output plumbing ----------------------------------------------

struct Io {
  std::string in;      // path, inline JSON, or empty (= stdin)
  std::string out;     // path or empty (= stdout)
  std::string format = "json";
  std::string field;  // inline field JSON used when the input has no "field"
  bool allow_undecided = false;
};

json read_input(const Io& io) {
  std::string text;
  if (io.in.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (!io.in.empty() && (io.in[0] == '{' || io.in[0] == '[')) {
    text = io.in;
  } else {
    std::ifstream f(io.in);
    if (!f) throw CliError("cannot open input file: " + io.in);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return json::parse(text);
}

void render(std::ostream& os, const json& j, const std::string& format) {
  if (format == "text") {
    for (const auto& [key, val] : j.items())
      os << key << " = " << val.dump() << "\n";
  } else {
    os << j.dump(2) << "\n";
  }
}

int emit(const Io& io, const json& j) {
  if (io.out.empty()) {
    render(std::cout, j, io.format);
  } else {
    std::ofstream f(io.out);
    if (!f) throw CliError("cannot open output file: " + io.out);
    render(f, j, io.format);
  }
  return 0;
}

// emit and honor the exit-code-3 contract for Undecided verdicts
int emit_verdict(const Io& io, const json& j) {
  emit(io, j);
  if (j.value("verdict", "") == "Undecided" && !io.allow_undecided) return 3;
  return 0;
}

int verb_selftest(const Io& io, std::uint64_t seed, int trials) {
  json out = jsonio::selftest_report(seed, trials);
  if (io.format == "text") {
    std::ostringstream ss;
    for (const auto& r : out.at("criteria"))
      ss << (r.at("pass").get<bool>() ? "PASS" : "FAIL") << " criterion-"
         << r.at("criterion").get<int>() << " "
         << r.at("name").get<std::string>() << " "
         << r.at("detail").get<std::string>() << "\n";
    ss << out.at("passed").get<int>() << "/" << out.at("total").get<int>()
       << " criteria passed\n";
    if (io.out.empty()) {
      std::cout << ss.str();
    } else {
      std::ofstream f(io.out);
      f << ss.str();
    }
  } else {
    emit(io, out);
  }
  return out.at("passed") == out.at("total") ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-octonion algebra toolkit"};
  app.require_subcommand(1);

  Io io;
  std::uint64_t seed = 0;
  int trials = 100;
  int en_degree = 3;

  auto add_common = [&](CLI::App* cmd, bool wants_field) {
    cmd->add_option("--in", io.in, "input: path or inline JSON (default stdin)");
    cmd->add_option("--out", io.out, "output path (default stdout)");
    cmd->add_option("--format", io.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--allow-undecided", io.allow_undecided,
                  "exit 0 on Undecided verdicts");
    cmd->add_option("--seed", seed, "seed for randomized suites");
    cmd->add_option("--trials", trials,
                    "trial budget as a percentage of the CI profile");
    if (wants_field)
      cmd->add_option("--field", io.field,
                      "inline field JSON when the input omits \"field\"");
  };

  struct Verb {
    const char* name;
    bool wants_field;
    std::function<int()> fn;
  };
  std::vector<Verb> verbs = {
      {"algebra-build", true,
       [&] { return emit(io, jsonio::algebra_build_report(read_input(io),
                                                          io.field)); }},
      {"algebra-invariants", true,
       [&] { return emit(io, jsonio::algebra_invariants_report(read_input(io),
                                                               io.field)); }},
      {"algebra-division", true,
       [&] { return emit(io, jsonio::algebra_division_report(read_input(io),
                                                             io.field)); }},
      {"algebra-isotopic", true,
       [&] { return emit_verdict(io, jsonio::algebra_isotopic_report(
                                         read_input(io), io.field)); }},
      {"algebra-decompose", true,
       [&] { return emit(io, jsonio::algebra_decompose_report(read_input(io),
                                                              io.field)); }},
      {"form-witt", false,
       [&] { return emit(io, jsonio::form_witt_report(read_input(io))); }},
      {"form-en", false,
       [&] { return emit(io,
                         jsonio::form_en_report(read_input(io), en_degree)); }},
      {"form-similar", false,
       [&] { return emit_verdict(io,
                                 jsonio::form_similar_report(read_input(io))); }},
      {"tkk-profile", true,
       [&] { return emit(io, jsonio::tkk_profile_report(read_input(io),
                                                        io.field)); }},
      {"rost-construct", true,
       [&] { return emit(io, jsonio::rost_construct_report(read_input(io),
                                                           io.field)); }},
      {"selftest", false, [&] { return verb_selftest(io, seed, trials); }},
  };
  std::function<int()> chosen;
  for (auto& v : verbs) {
    CLI::App* cmd = app.add_subcommand(v.name);
    add_common(cmd, v.wants_field);
    if (std::string(v.name) == "form-en")
      cmd->add_option("--n", en_degree, "e_n degree");
    auto fn = v.fn;
    cmd->callback([&chosen, fn] { chosen = fn; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return chosen();
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code == InvariantErrorCode::CrossCheckFailed ? 2 : 1;
  } catch (const TkkError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code == TkkErrorCode::RankMismatch ? 2 : 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
