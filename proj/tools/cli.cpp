#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <sstream>

#include "nabas/berkovich.hpp"
#include "nabas/config.hpp"
#include "nabas/error.hpp"

namespace nabas {

namespace {

std::string q64_text(Q64 q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks of an orthospectrum identity for non-Archimedean surface group representations"};
  app.require_subcommand(1);

  std::string cfg_path, word, format = "text", preset_name, output;
  bool geometric = false;
  std::optional<int> cutoff, window;
  int max_len = 4;

  auto* verify_cmd = app.add_subcommand("verify", "Evaluate both sides of the identity");
  verify_cmd->add_option("config", cfg_path, "Config file")->required();
  verify_cmd->add_flag("--geometric", geometric, "Use the tree-based pipeline (d = 2)");
  verify_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--cutoff", cutoff, "Maximal representative length")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--window", window, "Quiet window length")->check(CLI::NonNegativeNumber);

  auto* length_cmd = app.add_subcommand("length", "Translation length of a word");
  length_cmd->add_option("config", cfg_path)->required();
  length_cmd->add_option("word", word)->required();

  auto* classify_cmd = app.add_subcommand("classify", "Classify the image of a word in PGL(2)");
  classify_cmd->add_option("config", cfg_path)->required();
  classify_cmd->add_option("word", word)->required();

  auto* gap_cmd = app.add_subcommand("gap", "Minimal invariant-factor gap per word length");
  gap_cmd->add_option("config", cfg_path)->required();
  gap_cmd->add_option("--max-len", max_len)->check(CLI::NonNegativeNumber);

  auto* preset_cmd = app.add_subcommand("preset", "Write a built-in config");
  preset_cmd->add_option("name", preset_name)->required()->check(CLI::IsMember(preset_names()));
  preset_cmd->add_option("-o,--output", output, "Destination file (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  std::ostringstream buf;
  int code = 0;
  try {
    if (*preset_cmd) {
      std::string text = print_config(preset(preset_name));
      if (output.empty()) {
        buf << text;
      } else {
        std::ofstream f(output);
        if (!f || !(f << text)) fail(ErrorCode::InvalidArgument, "cannot write " + output);
      }
    } else {
      Config cfg = load_config(cfg_path);
      if (cutoff) cfg.cutoff = *cutoff;
      if (window) cfg.window = *window;
      Representation rep = cfg.representation();
      if (*verify_cmd) {
        IdentityReport r = geometric ? geometric_verify(rep) : verify(rep);
        buf << (format == "json" ? report_json(r) + "\n" : report_text(r));
        code = r.status == VerifyStatus::Verified ? 0 : 2;
      } else if (*length_cmd) {
        ProjMatrix g = rep.image(Word::parse(word, rep.surface().rank()));
        buf << "LENGTH " << q64_text(translation_length(g)) << "\n";
      } else if (*classify_cmd) {
        if (rep.dim() != 2) fail(ErrorCode::Dimension, "classify requires d = 2");
        ProjMatrix g = rep.image(Word::parse(word, rep.surface().rank()));
        buf << "CLASS " << pgl2_class_name(classify_pgl2(g)) << "\n";
      } else if (*gap_cmd) {
        for (const GapRow& row : anosov_gap_report(rep, max_len)) buf << "GAP " << row.length << " " << row.min_gap << "\n";
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  out << buf.str() << std::flush;
  return code;
}

}  // namespace nabas
