// Command-line front end: analyze .germ files and print reports.

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "germscope/germscope.hpp"

namespace {

using namespace germscope;

enum Exit { kOk = 0, kInternal = 1, kParse = 2, kNonFinite = 3, kCertification = 4 };

struct Outcome {
  int code = kOk;
  std::string output;
  std::string error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome run_one(const std::string& path, const AnalysisOptions& options, Fragment fragment, bool json) {
  Outcome o;
  try {
    const MapGerm germ = parse_germ(read_input(path));
    const Report report = analyze(germ, options);
    o.output = json ? report_json(report, fragment).dump(2) + "\n" : report_text(report, fragment);
  } catch (const ParseError& e) {
    o.code = kParse;
    o.error = e.what();
  } catch (const NonFiniteGerm& e) {
    o.code = kNonFinite;
    o.error = std::string("germ is not finite: ") + e.what();
  } catch (const CertificationError& e) {
    o.code = kCertification;
    o.error = std::string("certification failed: ") + e.what();
  } catch (const std::invalid_argument& e) {
    // Unreadable files and malformed germs built outside the grammar.
    o.code = kParse;
    o.error = e.what();
  } catch (const std::exception& e) {
    o.code = kInternal;
    o.error = std::string("internal error: ") + e.what();
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image equations, tangent cones and LNE verdicts for finite map germs (C^n,0) -> (C^n+1,0)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  AnalysisOptions options;
  unsigned jet = 0;
  std::string format = "text";
  std::vector<std::string> files;

  struct Sub {
    const char* name;
    const char* help;
    Fragment fragment;
  };
  const Sub subs[] = {
      {"analyze", "Full report", Fragment::Analyze},
      {"presentation", "Generators and presentation matrix", Fragment::Presentation},
      {"tangent-cone", "Tangent cone of the image and the hyperplane test", Fragment::TangentCone},
      {"invariants", "corank, mult, gd and deg", Fragment::Invariants},
  };
  std::vector<std::pair<CLI::App*, Fragment>> commands;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    cmd->add_option("files", files, ".germ input files ('-' for stdin)")->required();
    cmd->add_option("--jet", jet, "Source jet budget D (default: derived from gd)")->check(CLI::PositiveNumber);
    cmd->add_option("--trials", options.trials, "Random projections tried for gd")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", options.seed, "Seed for the projection trials");
    cmd->add_flag("--assert-injective", options.assert_injective, "Treat the germ as injective");
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--retry-budget", options.retry_budget, "Retries at D+8 after a certification failure")
        ->check(CLI::NonNegativeNumber);
    commands.emplace_back(cmd, s.fragment);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  Fragment fragment = Fragment::Analyze;
  for (const auto& [cmd, frag] : commands)
    if (cmd->parsed()) fragment = frag;
  if (jet > 0) options.jet = jet;
  const bool json = format == "json";

  std::vector<std::future<Outcome>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(std::launch::async, run_one, f, options, fragment, json));

  int code = kOk;
  const bool many = files.size() > 1;
  if (json && many) std::cout << "[\n";
  bool first = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Outcome o = jobs[i].get();
    if (o.code != kOk) {
      std::cerr << "germscope: " << files[i] << ": " << o.error << '\n';
      if (code == kOk) code = o.code;
      continue;
    }
    if (json && many) {
      std::cout << (first ? "" : ",\n") << o.output.substr(0, o.output.size() - 1);
    } else {
      if (many) std::cout << (first ? "" : "\n") << "== " << files[i] << " ==\n";
      std::cout << o.output;
    }
    first = false;
  }
  if (json && many) std::cout << "\n]\n";
  return code;
}
