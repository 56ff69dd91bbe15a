#include "decdiag/cli/app.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "decdiag/cli/ars_format.hpp"
#include "decdiag/cli/json_io.hpp"

namespace decdiag::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ArsDocument load(const std::string& path, const ParseOptions& options = {}) {
  try {
    return parse_ars(read_file(path), options);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + (e.line() ? "" : " ") + e.what());
  }
}

Mode mode_of(const std::string& name) {
  auto m = parse_mode(name);
  if (!m) throw InputError("unknown mode '" + name + "'");
  return *m;
}

CompletionOptions completion_options() {
  CompletionOptions options;
  if (const char* fuel = std::getenv("DECDIAG_FUEL")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(fuel, &end, 10);
    if (*fuel == '\0' || *end != '\0' || v == 0)
      throw InputError("DECDIAG_FUEL must be a positive integer");
    options.fuel = static_cast<std::size_t>(v);
  }
  return options;
}

struct Context {
  std::ostream& out;
  std::ostream& err;

  void emit(const json& j) const { out << j.dump(2) << '\n'; }
};

int cmd_check(const Context& ctx, const std::string& file, const std::string& mode,
              std::size_t max_states) {
  const ArsDocument doc = load(file);
  SearchOptions options;
  options.max_states = max_states;
  const LdReport report =
      check_locally_decreasing(doc.ars(), doc.precedence(), mode_of(mode), options);
  json j = to_json(report);
  j["ars"] = doc.name;
  ctx.emit(j);
  if (const PeakResult* bad = report.first_failure()) {
    ctx.err << "not locally decreasing at " << to_string(bad->peak) << " ("
            << to_string(bad->status) << ")\n";
    return kCheckFailed;
  }
  return kOk;
}

int cmd_complete(const Context& ctx, const std::string& file, const std::string& left,
                 const std::string& right, const std::string& mode_name) {
  const ArsDocument doc = load(file);
  const LabeledArs ars = doc.ars();
  const Precedence prec = doc.precedence();
  const Mode mode = mode_of(mode_name);
  Peak peak;
  try {
    peak = {parse_path(ars, left), parse_path(ars, right)};
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
  if (peak.left.start != peak.right.start)
    throw InputError("--left and --right must start at the same object");
  const CompletionOptions options = completion_options();

  const LdReport report = check_locally_decreasing(ars, prec, mode);
  if (const PeakResult* bad = report.first_failure()) {
    ctx.emit({{"completed", false}, {"failing_peak", to_json(bad->peak)},
              {"status", to_string(bad->status)}});
    ctx.err << "no local join for " << to_string(bad->peak) << "\n";
    return kCheckFailed;
  }
  try {
    const Completion c =
        mode == Mode::valley
            ? complete_peak(ars, prec, completion_map(ars, prec, report), peak, options)
            : complete_peak_conv(ars, prec, conv_map(ars, prec, report), peak, options);
    ctx.emit({{"completed", true},
              {"mode", to_string(mode)},
              {"diagram", to_json(c.diagram)},
              {"trace", to_json(c.trace)}});
    return kOk;
  } catch (const CompletionError& e) {
    ctx.emit({{"completed", false}, {"error", e.what()}, {"failing_peak", to_json(e.peak())}});
    ctx.err << e.what() << "\n";
    return kCheckFailed;
  }
}

int cmd_oracle(const Context& ctx, const std::string& file) {
  const ArsDocument doc = load(file, {.unlabeled = true});
  const bool confluent = confluent_oracle(doc.unlabeled());
  ctx.emit({{"confluent", confluent}});
  return confluent ? kOk : kCheckFailed;
}

int cmd_newman(const Context& ctx, const std::string& file) {
  const ArsDocument doc = load(file, {.unlabeled = true});
  try {
    const SourceLabeling sl = newman_labeling(doc.unlabeled());
    json steps = json::array();
    for (const auto& s : sl.ars.steps())
      steps.push_back({{"source", s.source.name()}, {"label", s.label.name()}, {"target", s.target.name()}});
    ctx.emit({{"ok", true},
              {"labeling", {{"steps", steps}, {"precedence", to_json(sl.prec)}}},
              {"certificate", to_json(certify(sl.ars, sl.prec, Mode::valley))}});
    return kOk;
  } catch (const NonTerminating& e) {
    json cycle = json::array();
    for (const auto& o : e.cycle()) cycle.push_back(o.name());
    ctx.emit({{"ok", false}, {"reason", "non-terminating"}, {"cycle", cycle}});
    ctx.err << e.what() << "\n";
  } catch (const NotLocallyConfluent& e) {
    ctx.emit({{"ok", false},
              {"reason", "not-locally-confluent"},
              {"peak",
               {{"source", e.source().name()}, {"left", e.left().name()}, {"right", e.right().name()}}}});
    ctx.err << e.what() << "\n";
  }
  return kCheckFailed;
}

int cmd_find_prec(const Context& ctx, const std::string& file, const std::string& mode,
                  std::size_t cap) {
  const ArsDocument doc = load(file);
  std::optional<Precedence> prec;
  try {
    prec = find_precedence(doc.ars(), mode_of(mode), cap);
  } catch (const SearchCapExceeded& e) {
    throw InputError(e.what());
  }
  if (!prec) {
    ctx.emit({{"found", false}});
    ctx.err << "none\n";
    return kCheckFailed;
  }
  ctx.emit({{"found", true}, {"precedence", to_json(*prec)}});
  return kOk;
}

int cmd_verify(const Context& ctx, const std::string& file) {
  Certificate cert;
  try {
    cert = certificate_from_json(json::parse(read_file(file)));
  } catch (const json::exception& e) {
    throw InputError(file + ": " + e.what());
  } catch (const CertificateFormatError& e) {
    throw InputError(file + ": " + e.what());
  }
  const CertificateCheck check = verify_certificate(cert);
  ctx.emit({{"valid", check.ok()}, {"failures", check.failures}});
  return check.ok() ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decreasing-diagrams confluence analysis for finite labeled ARSs", "decdiag"};
  app.require_subcommand(1);
  const Context ctx{out, err};
  std::function<int()> action;

  std::string file, mode = "valley", left, right;
  std::size_t max_states = 0, cap = 5;

  auto* check = app.add_subcommand("check", "Check local decreasingness of every local peak");
  check->add_option("--mode", mode, "valley or conv")->check(CLI::IsMember({"valley", "conv", "conversion"}));
  check->add_option("--max-states", max_states, "Per-side search state cap (0 = unbounded)");
  check->add_option("file", file, ".ars file")->required();
  check->callback([&] { action = [&] { return cmd_check(ctx, file, mode, max_states); }; });

  auto* complete = app.add_subcommand("complete", "Complete a peak into a decreasing diagram");
  complete->add_option("file", file, ".ars file")->required();
  complete->add_option("--left", left, "Top path obj,label,obj,...")->required();
  complete->add_option("--right", right, "Left path obj,label,obj,...")->required();
  complete->add_option("--mode", mode, "valley or conv")->check(CLI::IsMember({"valley", "conv", "conversion"}));
  complete->callback([&] { action = [&] { return cmd_complete(ctx, file, left, right, mode); }; });

  auto* oracle = app.add_subcommand("oracle", "Brute-force confluence check");
  oracle->add_option("file", file, ".ars file")->required();
  oracle->callback([&] { action = [&] { return cmd_oracle(ctx, file); }; });

  auto* newman = app.add_subcommand("newman", "Source labeling of a terminating, locally confluent ARS");
  newman->add_option("file", file, ".ars file (labels and prec are ignored)")->required();
  newman->callback([&] { action = [&] { return cmd_newman(ctx, file); }; });

  auto* find_prec = app.add_subcommand("find-prec", "Search for a precedence making the ARS locally decreasing");
  find_prec->add_option("file", file, ".ars file")->required();
  find_prec->add_option("--mode", mode, "valley or conv")->check(CLI::IsMember({"valley", "conv", "conversion"}));
  find_prec->add_option("--cap", cap, "Largest label count searched");
  find_prec->callback([&] { action = [&] { return cmd_find_prec(ctx, file, mode, cap); }; });

  auto* verify = app.add_subcommand("verify", "Re-check a certificate without search");
  verify->add_option("cert", file, "Certificate JSON")->required();
  verify->callback([&] { action = [&] { return cmd_verify(ctx, file); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    return action();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace decdiag::cli
