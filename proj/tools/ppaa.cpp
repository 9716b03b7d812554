#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ppaa/commands.hpp"

namespace {

bool parse_seed_range(const std::string& text, std::uint64_t& first, std::uint64_t& last) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return false;
  try {
    std::size_t used = 0;
    first = std::stoull(text.substr(0, dots), &used);
    if (used != dots) return false;
    auto rest = text.substr(dots + 2);
    last = std::stoull(rest, &used);
    return used == rest.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ppaa::cli;
  RunConfig cfg;
  std::string seed_range = "0..99";

  CLI::App app{"Probabilistic logic programs under the distribution and argumentation semantics"};
  app.require_subcommand(1);

  const std::map<std::string, Semantics> semantics{
      {"dist", Semantics::Distribution}, {"arg", Semantics::Argumentation}, {"both", Semantics::Both}};
  const std::map<std::string, Format> formats{{"human", Format::Human}, {"json", Format::Json}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--worlds-cap", cfg.worlds_cap, "Maximum number of worlds (2^|F|)")
        ->envname("PPAA_WORLDS_CAP")
        ->check(CLI::PositiveNumber);
    sub->add_option("--args-cap", cfg.args_cap, "Maximum number of arguments")
        ->envname("PPAA_ARGS_CAP")
        ->check(CLI::PositiveNumber);
    sub->add_option("--stable-cap", cfg.stable_cap, "Maximum arguments for stable-extension search")
        ->envname("PPAA_STABLE_CAP")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--threads", cfg.threads, "Worker threads for world evaluation")
        ->check(CLI::PositiveNumber);
  };

  auto* query = app.add_subcommand("query", "Probability of a query");
  query->add_option("file", cfg.input_path, "Program file")->required();
  query->add_option("--query,-q", cfg.query_text, "Query atom, e.g. a or p(X)")->required();
  query->add_option("--semantics", cfg.semantics, "Back-end")
      ->transform(CLI::CheckedTransformer(semantics, CLI::ignore_case));
  query->add_flag("--trace", cfg.trace, "Include the per-world breakdown");
  add_common(query);

  auto* show = app.add_subcommand("show", "List ABA components, arguments and attacks");
  show->add_option("file", cfg.input_path, "Program file")->required();
  add_common(show);

  auto* worlds = app.add_subcommand("worlds", "World table with grounded claims");
  worlds->add_option("file", cfg.input_path, "Program file")->required();
  add_common(worlds);

  auto* check = app.add_subcommand("check", "Run the equivalence property suite on random programs");
  check->add_option("--seed-range", seed_range, "Seeds A..B (inclusive)");
  check->add_option("--counterexample-out", cfg.counterexample_path, "Where to write a failing program");
  add_common(check);

  try {
    app.parse(argc, argv);
    if (!parse_seed_range(seed_range, cfg.seed_first, cfg.seed_last))
      throw CLI::ValidationError("--seed-range", "expected A..B");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (app.got_subcommand(query)) cfg.command = Command::Query;
  if (app.got_subcommand(show)) cfg.command = Command::Show;
  if (app.got_subcommand(worlds)) cfg.command = Command::Worlds;
  if (app.got_subcommand(check)) cfg.command = Command::Check;
  return run(cfg, std::cout, std::cerr);
}
