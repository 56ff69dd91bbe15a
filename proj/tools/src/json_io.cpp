#include "decdiag/cli/json_io.hpp"

namespace decdiag::cli {

namespace {

constexpr const char* kCertificateFormat = "decdiag-certificate";
constexpr int kCertificateVersion = 1;

json labels_json(std::span<const Label> seq) {
  json a = json::array();
  for (const auto& l : seq) a.push_back(l.name());
  return a;
}

// Reading helpers: every accessor names the field it failed on.
const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw CertificateFormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) throw CertificateFormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const json& arr(const json& j, const char* what) {
  if (!j.is_array()) throw CertificateFormatError(std::string(what) + " must be an array");
  return j;
}

RewriteSeq seq_from_json(const json& j) {
  RewriteSeq s = empty_seq(Obj(str(field(j, "start"), "start")));
  for (const auto& e : arr(field(j, "steps"), "steps"))
    s.tail.push_back({Label(str(field(e, "label"), "label")),
                      Obj(str(field(e, "target"), "target"))});
  return s;
}

Conversion conv_from_json(const json& j) {
  Conversion c{Obj(str(field(j, "start"), "start")), {}};
  for (const auto& e : arr(field(j, "steps"), "steps")) {
    const std::string dir = str(field(e, "direction"), "direction");
    if (dir != "forward" && dir != "backward")
      throw CertificateFormatError("direction must be 'forward' or 'backward'");
    c.tail.push_back({dir == "forward", Label(str(field(e, "label"), "label")),
                      Obj(str(field(e, "target"), "target"))});
  }
  return c;
}

ConvSide side_from_json(const json& j) {
  return {conv_from_json(field(j, "low")), seq_from_json(field(j, "pivot")),
          conv_from_json(field(j, "high"))};
}

json side_json(const ConvSide& s) {
  return {{"low", to_json(s.low)}, {"pivot", to_json(s.pivot)}, {"high", to_json(s.high)}};
}

}  // namespace

json to_json(const LabelMultiset& m) {
  json a = json::array();
  for (const auto& [l, n] : m.counts())
    for (LabelMultiset::Count i = 0; i < n; ++i) a.push_back(l.name());
  return a;
}

json to_json(const RewriteSeq& s) {
  json steps = json::array();
  for (const auto& e : s.tail) steps.push_back({{"label", e.label.name()}, {"target", e.target.name()}});
  return {{"start", s.start.name()}, {"steps", steps}};
}

json to_json(const Conversion& c) {
  json steps = json::array();
  for (const auto& e : c.tail)
    steps.push_back({{"direction", e.forward ? "forward" : "backward"},
                     {"label", e.label.name()},
                     {"target", e.target.name()}});
  return {{"start", c.start.name()}, {"steps", steps}};
}

json to_json(const Peak& p) { return {{"left", to_json(p.left)}, {"right", to_json(p.right)}}; }

json to_json(const Diagram& d) {
  return {{"top", to_json(d.top)},
          {"left", to_json(d.left)},
          {"right", to_json(d.right)},
          {"bottom", to_json(d.bottom)}};
}

json to_json(const LocalJoin& j) {
  return {{"right", to_json(j.right)}, {"bottom", to_json(j.bottom)}};
}

json to_json(const LocalConvJoin& j) {
  return {{"right", side_json(j.right)}, {"bottom", side_json(j.bottom)}};
}

json to_json(const LdPrimeDecomposition& d) {
  return {{"prefix", labels_json(d.prefix)},
          {"pivot", labels_json(d.pivot)},
          {"suffix", labels_json(d.suffix)}};
}

json to_json(const CompletionTrace& t) {
  json a = json::array();
  for (const auto& e : t.events)
    a.push_back({{"before", to_json(e.before)}, {"after", to_json(e.after)}, {"rule", e.rule}});
  return a;
}

json to_json(const LdReport& r) {
  json peaks = json::array();
  for (const auto& p : r.peaks) {
    json e = {{"peak", to_json(p.peak)}, {"status", to_string(p.status)}};
    if (p.join) e["join"] = to_json(*p.join);
    if (p.conv_join) e["conv_join"] = to_json(*p.conv_join);
    if (p.right_split) e["right_split"] = to_json(*p.right_split);
    if (p.bottom_split) e["bottom_split"] = to_json(*p.bottom_split);
    peaks.push_back(std::move(e));
  }
  return {{"mode", to_string(r.mode)}, {"all_decreasing", r.all_decreasing()}, {"peaks", peaks}};
}

json to_json(const Precedence& p) {
  json a = json::array();
  for (const auto& [lo, hi] : p.pairs()) a.push_back({lo.name(), hi.name()});
  return a;
}

json to_json(const Certificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps)
    steps.push_back({{"source", s.source.name()}, {"label", s.label.name()}, {"target", s.target.name()}});
  json prec = json::array();
  for (const auto& [lo, hi] : c.precedence) prec.push_back({lo.name(), hi.name()});
  json entries = json::array();
  for (const auto& e : c.entries) {
    json j = {{"peak", to_json(e.peak)}};
    if (e.join) j["join"] = to_json(*e.join);
    if (e.conv_join) j["conv_join"] = to_json(*e.conv_join);
    entries.push_back(std::move(j));
  }
  return {{"format", kCertificateFormat},
          {"version", kCertificateVersion},
          {"mode", to_string(c.mode)},
          {"steps", steps},
          {"precedence", prec},
          {"label_order", labels_json(c.label_order)},
          {"entries", entries}};
}

Certificate certificate_from_json(const json& j) {
  if (str(field(j, "format"), "format") != kCertificateFormat)
    throw CertificateFormatError("not a decdiag certificate");
  if (field(j, "version") != kCertificateVersion)
    throw CertificateFormatError("unsupported certificate version");

  Certificate c;
  auto mode = parse_mode(str(field(j, "mode"), "mode"));
  if (!mode) throw CertificateFormatError("mode must be 'valley' or 'conversion'");
  c.mode = *mode;
  for (const auto& s : arr(field(j, "steps"), "steps"))
    c.steps.push_back({Obj(str(field(s, "source"), "source")),
                       Label(str(field(s, "label"), "label")),
                       Obj(str(field(s, "target"), "target"))});
  for (const auto& p : arr(field(j, "precedence"), "precedence")) {
    if (!p.is_array() || p.size() != 2)
      throw CertificateFormatError("precedence entries must be [smaller, larger] pairs");
    c.precedence.emplace_back(Label(str(p[0], "precedence label")),
                              Label(str(p[1], "precedence label")));
  }
  for (const auto& l : arr(field(j, "label_order"), "label_order"))
    c.label_order.emplace_back(str(l, "label_order entry"));
  for (const auto& e : arr(field(j, "entries"), "entries")) {
    const json& peak = field(e, "peak");
    CertificateEntry entry{{seq_from_json(field(peak, "left")), seq_from_json(field(peak, "right"))},
                           std::nullopt,
                           std::nullopt};
    if (e.contains("join")) {
      const json& jn = e.at("join");
      entry.join = LocalJoin{seq_from_json(field(jn, "right")), seq_from_json(field(jn, "bottom"))};
    }
    if (e.contains("conv_join")) {
      const json& jn = e.at("conv_join");
      entry.conv_join =
          LocalConvJoin{side_from_json(field(jn, "right")), side_from_json(field(jn, "bottom"))};
    }
    c.entries.push_back(std::move(entry));
  }
  return c;
}

}  // namespace decdiag::cli
