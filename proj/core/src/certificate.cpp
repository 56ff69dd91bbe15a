#include "decdiag/certificate.hpp"

#include <map>
#include <set>

namespace decdiag {

Certificate certify(const LabeledArs& ars, const Precedence& prec, Mode mode) {
  const LdReport report = check_locally_decreasing(ars, prec, mode);
  if (const PeakResult* bad = report.first_failure())
    throw CertificationFailed("cannot certify: " + to_string(bad->peak) + " is " +
                              to_string(bad->status));

  Certificate cert;
  cert.mode = mode;
  cert.steps.assign(ars.steps().begin(), ars.steps().end());
  cert.precedence.assign(prec.pairs().begin(), prec.pairs().end());

  // Precedence-mentioned labels in topological order, then the unrelated
  // remaining ones.
  cert.label_order = prec.topological_order();
  const LabelSet ordered(cert.label_order.begin(), cert.label_order.end());
  for (const auto& l : ars.labels())
    if (!ordered.contains(l)) cert.label_order.push_back(l);

  for (const auto& r : report.peaks) cert.entries.push_back({r.peak, r.join, r.conv_join});
  return cert;
}

CertificateCheck verify_certificate(const Certificate& cert) {
  CertificateCheck check;
  auto fail = [&](std::string msg) { check.failures.push_back(std::move(msg)); };

  std::map<Label, std::size_t> position;
  for (std::size_t i = 0; i < cert.label_order.size(); ++i)
    if (!position.emplace(cert.label_order[i], i).second)
      fail("label_order: " + cert.label_order[i].name() + " listed twice");
  auto require_listed = [&](const Label& l, const std::string& where) {
    if (!position.contains(l)) fail(where + ": label " + l.name() + " missing from label_order");
  };

  const std::set<LabelPair> pairs(cert.precedence.begin(), cert.precedence.end());
  bool order_ok = check.ok();
  for (const auto& [lo, hi] : pairs) {
    const std::string where = "precedence " + lo.name() + " < " + hi.name();
    require_listed(lo, where);
    require_listed(hi, where);
    if (lo == hi) {
      fail(where + ": not irreflexive");
    } else if (position.contains(lo) && position.contains(hi) && position[lo] >= position[hi]) {
      fail(where + ": contradicts label_order");
    }
  }
  for (const auto& [a, b] : pairs)
    for (const auto& [b2, c] : pairs)
      if (b == b2 && !pairs.contains({a, c}))
        fail("precedence: not transitive, " + a.name() + " < " + b.name() + " < " + c.name() +
             " but not " + a.name() + " < " + c.name());
  for (const auto& s : cert.steps) require_listed(s.label, "step " + s.source.name() + " -> " + s.target.name());
  order_ok = order_ok && check.ok();
  if (!order_ok) return check;

  const Precedence prec = Precedence::from_pairs(cert.precedence);
  const LabeledArs ars(cert.steps);
  const auto peaks = local_peaks(ars);
  const std::set<Peak> expected(peaks.begin(), peaks.end());

  std::set<Peak> seen;
  for (std::size_t i = 0; i < cert.entries.size(); ++i) {
    const CertificateEntry& e = cert.entries[i];
    const std::string where = "entry " + std::to_string(i) + " " + to_string(e.peak);
    if (!expected.contains(e.peak)) {
      fail(where + ": not a local peak of the ARS");
      continue;
    }
    if (!seen.insert(e.peak).second) fail(where + ": duplicate entry");
    if (cert.mode == Mode::valley) {
      if (e.conv_join) fail(where + ": conversion join in a valley certificate");
      if (!e.join)
        fail(where + ": missing valley join");
      else if (!dd_check(ars, prec, {e.peak.left, e.peak.right, e.join->right, e.join->bottom}))
        fail(where + ": join is not a decreasing diagram");
    } else {
      if (e.join) fail(where + ": valley join in a conversion certificate");
      if (!e.conv_join)
        fail(where + ": missing conversion join");
      else if (auto defect = conv_join_defect(ars, prec, e.peak, *e.conv_join); !defect.empty())
        fail(where + ": " + defect);
    }
  }
  for (const auto& p : expected)
    if (!seen.contains(p)) fail("no entry for local peak " + to_string(p));
  return check;
}

}  // namespace decdiag
