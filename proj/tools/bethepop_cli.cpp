#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bethepop/bethepop.h"

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  return out;
}

int input_error(const std::string& msg) {
  std::cerr << "bethepop: " << msg << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Populations of critical points, Bethe ansatz checks and sl2 Gaudin diagnostics"};
  std::vector<std::string> names;
  for (const char* const* n = bethe_subcommands(); *n; ++n) names.emplace_back(*n);

  std::string sub, input, output, type, family, weight, kappa;
  long max_nodes = -1, max_den = -1;
  int attempts = -1;
  double tol = -1, dedup_tol = -1;
  std::uint64_t seed = 0;
  app.add_option("subcommand", sub, "one of: populate, verify, solve, kernel-check, gaudin-check, dwg-check, fold-check")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("request", input, "JSON request file (problem, weight, tuple, ...)");
  app.add_option("--type", type, "root system, e.g. A2, B3, G2");
  app.add_option("--family", family, "trig, exp or xxx")->check(CLI::IsMember({"trig", "exp", "xxx"}));
  app.add_option("--weight", weight, "additive weight, comma separated p/q");
  app.add_option("--kappa", kappa, "multiplicative weight, comma separated p/q");
  app.add_option("--max-nodes", max_nodes, "population budget");
  app.add_option("--attempts", attempts, "Newton starts");
  app.add_option("--tol", tol, "Newton tolerance");
  app.add_option("--dedup-tol", dedup_tol, "solution dedup tolerance");
  app.add_option("--max-den", max_den, "rationalize solutions with this denominator bound");
  app.add_option("--seed", seed, "random seed")->default_val(0);
  app.add_option("-o,--output", output, "report path (stdout when omitted)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  json req = json::object();
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) return input_error("cannot open " + input);
    try {
      req = json::parse(in);
    } catch (const json::parse_error&) {
      return input_error("malformed JSON in " + input);
    }
    if (!req.is_object()) return input_error("request must be a JSON object");
  }
  if (!type.empty()) {
    req.erase("cartan");
    req["type"] = type;
  }
  if (!family.empty()) req["family"] = family;
  if (!weight.empty()) req["weight"] = split(weight);
  if (!kappa.empty()) req["kappa"] = split(kappa);
  json& opt = req["options"];
  if (!opt.is_object()) opt = json::object();
  if (max_nodes >= 0) opt["max_nodes"] = max_nodes;
  if (max_den >= 0) opt["max_den"] = max_den;
  if (attempts >= 0) opt["attempts"] = attempts;
  if (tol >= 0) opt["tol"] = tol;
  if (dedup_tol >= 0) opt["dedup_tol"] = dedup_tol;
  opt["seed"] = seed;

  bethe_session* s = bethe_session_new();
  if (!s) return 3;
  const bethe_status st = bethe_run(s, sub.c_str(), req.dump().c_str());
  int rc = 0;
  switch (st) {
    case BETHE_OK:
    case BETHE_CHECK_FAILED:
      if (output.empty()) {
        std::cout << bethe_report(s);
      } else {
        std::ofstream out(output);
        if (!out) {
          bethe_session_free(s);
          return input_error("cannot write " + output);
        }
        out << bethe_report(s);
      }
      rc = st == BETHE_OK ? 0 : 1;
      break;
    case BETHE_INPUT_ERROR:
      rc = input_error(bethe_last_error(s));
      break;
    default:
      std::cerr << "bethepop: " << bethe_last_error(s) << "\n";
      rc = 1;
  }
  bethe_session_free(s);
  return rc;
}
