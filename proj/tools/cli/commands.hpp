#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cli/document.hpp"

namespace yoneda::cli {

enum class Format { human, machine };

struct Flags {
  std::optional<std::size_t> n;
  std::optional<std::size_t> max_deg;
  std::string variance = "co";
  Format format = Format::human;
  // Operand names: groups, homs, sequences, modules, posets or presheaves by command.
  std::string B, A, M, G, F, f, matrix, poset;
  std::vector<std::string> seq;
  std::optional<std::size_t> c;
  std::vector<std::string> family;
};

struct ResultDocument {
  nlohmann::ordered_json body;  // command, flags, result, details…, status
  [[nodiscard]] int status() const { return body.value("status", 0); }
};

const std::vector<std::string>& command_names();
constexpr std::size_t max_bar_degree = 6;

// Throws CliError (with its exit code) or a library error.
ResultDocument run(const std::string& command, const InputDocument& doc, const Flags& flags);
// A failed run as a result document.
ResultDocument failure(const std::string& command, const Flags& flags, ExitCode code, const std::string& message);
std::string render(const ResultDocument& r, Format format);

// "F(0) <- F(1) <- …" on chains, "c: F(c)" lines otherwise.
std::string format_presheaf(const AbPresheaf& f);

}  // namespace yoneda::cli
