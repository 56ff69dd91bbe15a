#include "decdiag/cli/ars_format.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace decdiag::cli {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) tokens.push_back(std::move(t));
  return tokens;
}

bool is_identifier(const std::string& t) {
  return !t.empty() && t != "->" && t.find_first_of(":<#,") == std::string::npos;
}

template <typename T>
void add_unique(std::vector<T>& v, T x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(std::move(x));
}

}  // namespace

LabeledArs ArsDocument::ars() const { return LabeledArs(steps); }

Precedence ArsDocument::precedence() const { return Precedence::from_pairs(prec); }

UnlabeledArs ArsDocument::unlabeled() const {
  UnlabeledArs r;
  for (const auto& s : steps) r.emplace(s.source, s.target);
  return r;
}

ArsDocument parse_ars(std::string_view text, const ParseOptions& options) {
  ArsDocument doc;
  std::set<Obj> objects;
  std::set<Label> labels;
  bool named = false;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto tokens = tokenize(std::string_view(raw).substr(0, raw.find('#')));
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0];
    auto malformed = [&](const std::string& why) { return ParseError(line_no, why); };
    auto ident = [&](std::size_t i, const char* what) {
      if (!is_identifier(tokens[i]))
        throw malformed(std::string("invalid ") + what + " identifier '" + tokens[i] + "'");
      return tokens[i];
    };
    auto known_obj = [&](std::size_t i) {
      Obj o(ident(i, "object"));
      if (!objects.contains(o)) throw ParseError(line_no, "unknown object '" + o.name() + "'");
      return o;
    };
    auto known_label = [&](std::size_t i) {
      Label l(ident(i, "label"));
      if (!options.unlabeled && !labels.contains(l))
        throw ParseError(line_no, "unknown label '" + l.name() + "'");
      return l;
    };

    if (kw == "ars") {
      if (tokens.size() != 2) throw malformed("expected 'ars <name>'");
      if (named && doc.name != tokens[1])
        throw malformed("second ars name '" + tokens[1] + "'");
      doc.name = ident(1, "ars");
      named = true;
    } else if (kw == "objects") {
      if (tokens.size() < 2) throw malformed("expected 'objects <id>+'");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        Obj o(ident(i, "object"));
        if (objects.insert(o).second) doc.objects.push_back(o);
      }
    } else if (kw == "labels") {
      if (tokens.size() < 2) throw malformed("expected 'labels <id>+'");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        Label l(ident(i, "label"));
        if (labels.insert(l).second) doc.labels.push_back(l);
      }
    } else if (kw == "prec") {
      if (tokens.size() != 4 || tokens[2] != "<") throw malformed("expected 'prec <l1> < <l2>'");
      LabelPair pair{known_label(1), known_label(3)};
      add_unique(doc.prec, pair);
      if (!options.unlabeled) {
        try {
          (void)Precedence::from_pairs(doc.prec);
        } catch (const PrecedenceError& e) {
          throw ParseError(line_no, std::string("cycle in prec: ") + to_string(e.cycle()));
        }
      }
    } else if (kw == "step") {
      const bool labeled = tokens.size() == 6 && tokens[4] == ":";
      const bool bare = options.unlabeled && tokens.size() == 4;
      if ((!labeled && !bare) || tokens[2] != "->")
        throw malformed(options.unlabeled ? "expected 'step <obj> -> <obj> [: <label>]'"
                                          : "expected 'step <obj> -> <obj> : <label>'");
      Step s{known_obj(1), labeled ? known_label(5) : Label(), known_obj(3)};
      add_unique(doc.steps, s);
    } else {
      throw malformed("unknown directive '" + kw + "'");
    }
  }
  return doc;
}

std::string print_ars(const ArsDocument& doc) {
  std::ostringstream out;
  if (!doc.name.empty()) out << "ars " << doc.name << '\n';
  if (!doc.objects.empty()) {
    out << "objects";
    for (const auto& o : doc.objects) out << ' ' << o;
    out << '\n';
  }
  if (!doc.labels.empty()) {
    out << "labels";
    for (const auto& l : doc.labels) out << ' ' << l;
    out << '\n';
  }
  for (const auto& [lo, hi] : doc.prec) out << "prec " << lo << " < " << hi << '\n';
  for (const auto& s : doc.steps) {
    out << "step " << s.source << " -> " << s.target;
    if (!s.label.name().empty()) out << " : " << s.label;
    out << '\n';
  }
  return out.str();
}

RewriteSeq parse_path(const LabeledArs& ars, std::string_view path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == ',') {
      parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(std::move(cur));
  if (parts.size() % 2 == 0)
    throw ParseError(0, "path '" + std::string(path) + "' must alternate objects and labels");
  for (const auto& p : parts)
    if (!is_identifier(p))
      throw ParseError(0, "path '" + std::string(path) + "' has an empty or invalid entry");

  RewriteSeq seq = empty_seq(Obj(parts[0]));
  for (std::size_t i = 1; i < parts.size(); i += 2) {
    Step s{lst(seq), Label(parts[i]), Obj(parts[i + 1])};
    if (!ars.contains(s))
      throw ParseError(0, "path '" + std::string(path) + "': no step " + s.source.name() +
                              " -> " + s.target.name() + " : " + s.label.name());
    seq.tail.push_back({s.label, s.target});
  }
  return seq;
}

}  // namespace decdiag::cli
