#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "cli/commands.hpp"

using namespace yoneda::cli;

namespace {

std::string read_input(const std::string& path) {
  if (path.empty()) return {};
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw CliError(parse_error, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homological algebra over Z, group rings and finite posets"};
  std::string command, input, format = "human";
  bool json = false;
  Flags flags;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("input", input, "Input document (JSON); '-' reads standard input");
  app.add_option("--n", flags.n, "Degree");
  app.add_option("--max-deg", flags.max_deg, "Also report every degree up to k");
  app.add_option("--variance", flags.variance, "six-term variance")->check(CLI::IsMember({"co", "contra"}));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));
  app.add_flag("--json", json, "Same as --format machine");
  app.add_option("--B", flags.B, "Source operand: group, presheaf");
  app.add_option("--A", flags.A, "Coefficient operand: group, presheaf");
  app.add_option("--M", flags.M, "Module or group");
  app.add_option("--G", flags.G, "Finite group");
  app.add_option("--F", flags.F, "Presheaf");
  app.add_option("--f", flags.f, "Hom");
  app.add_option("--matrix", flags.matrix, "Matrix");
  app.add_option("--poset", flags.poset, "Poset");
  app.add_option("--seq", flags.seq, "Short exact sequence (repeatable)");
  app.add_option("--c", flags.c, "Poset element");
  app.add_option("--family", flags.family, "Stalk family for witness-search")->delimiter(',');
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : usage_error;
  }
  flags.format = json || format == "machine" ? Format::machine : Format::human;

  ResultDocument result;
  try {
    result = run(command, parse(read_input(input)), flags);
  } catch (const std::exception& e) {
    result = failure(command, flags, classify(e), e.what());
  }
  const std::string text = render(result, flags.format);
  (result.status() == 0 || flags.format == Format::machine ? std::cout : std::cerr) << text;
  return result.status();
}
