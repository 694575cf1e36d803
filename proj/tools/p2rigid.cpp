#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "p2rigid/catalog.hpp"
#include "p2rigid/errors.hpp"
#include "p2rigid/groupfile.hpp"
#include "p2rigid/orbits.hpp"
#include "p2rigid/rigidity.hpp"

using namespace p2r;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct Loaded {
  std::string label;
  int conductor = 1;
  std::vector<Mat3> generators;
  GroupData group;
};

Loaded load(const std::string& arg) {
  Loaded l;
  l.label = arg;
  const auto& ids = catalog_ids();
  if (std::find(ids.begin(), ids.end(), arg) != ids.end()) {
    const CatalogEntry e = build(arg);
    l.conductor = e.conductor;
    l.generators = e.generators;
    l.group = catalog_group(arg);
    return l;
  }
  std::ifstream in(arg);
  if (!in) throw InputError("unknown catalog id and no such file: " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  const GroupFile f = parse_group_file(buf.str());
  l.conductor = f.conductor;
  l.generators = f.generators;
  l.group = closure(f.generators);
  return l;
}

Json points_json(const std::vector<ProjPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p.to_string());
  return a;
}

Json orbits_json(const SmallOrbitReport& r) {
  Json j;
  j["bound"] = r.bound;
  j["complete"] = r.complete;
  if (!r.note.empty()) j["note"] = r.note;
  Json sp = Json::array();
  for (const auto& o : r.sporadic)
    sp.push_back(Json{{"size", o.size()}, {"conductor", o.points.front().conductor()}, {"points", points_json(o.points)}});
  j["sporadic"] = sp;
  Json fam = Json::array();
  for (const auto& f : r.families) {
    Json ex = Json::array();
    for (const auto& e : f.exceptional)
      ex.push_back(Json{{"size", e.orbit.size()}, {"reason", e.reason}, {"points", points_json(e.orbit.points)}});
    fam.push_back(Json{{"line", f.line.to_string()},
                       {"line_orbit_size", f.line_orbit_size},
                       {"induced_order", f.induced_order},
                       {"generic_size", f.generic_orbit_size()},
                       {"exceptional", ex}});
  }
  j["families"] = fam;
  return j;
}

std::string orbits_text(const SmallOrbitReport& r) {
  std::ostringstream out;
  out << "orbits of size <= " << r.bound << (r.complete ? " (complete)" : " (incomplete)") << "\n";
  if (!r.note.empty()) out << "note: " << r.note << "\n";
  for (const auto& o : r.sporadic) {
    out << "size " << o.size();
    if (o.points.front().conductor() > 1) out << " (z = zeta_" << o.points.front().conductor() << ")";
    out << ":";
    for (const auto& p : o.points) out << " " << p.to_string();
    out << "\n";
  }
  for (const auto& f : r.families) {
    out << "family on line " << f.line.to_string() << ": line orbit " << f.line_orbit_size << ", induced order "
        << f.induced_order << ", generic size " << f.generic_orbit_size() << "\n";
    for (const auto& e : f.exceptional) {
      out << "  exceptional size " << e.orbit.size() << " (" << e.reason << "):";
      for (const auto& p : e.orbit.points) out << " " << p.to_string();
      out << "\n";
    }
  }
  return out.str();
}

void emit(const Json& j, const std::string& text, const std::string& format) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_catalog(const std::string& format) {
  Json j = Json::array();
  std::ostringstream out;
  for (const auto& id : catalog_ids()) {
    const CatalogEntry e = build(id);
    j.push_back(Json{{"id", id},
                     {"conductor", e.conductor},
                     {"generators", static_cast<long>(e.generators.size())},
                     {"proj_order", e.expected_proj_order},
                     {"sl_order", e.expected_sl_order},
                     {"citation", e.citation}});
    out << id << "  conductor " << e.conductor << "  projective order " << e.expected_proj_order << "  SL order "
        << e.expected_sl_order << "  " << e.citation << "\n";
  }
  emit(j, out.str(), format);
  return kOk;
}

int cmd_info(const std::string& arg, const std::string& format) {
  const Loaded l = load(arg);
  const long sl = sl_closure_order(l.generators);
  const auto hist = element_order_histogram(l.group);
  const ActionClass a = classify_action(l.group);
  Json h = Json::object();
  for (auto [o, c] : hist) h[std::to_string(o)] = c;
  Json j{{"group", l.label},         {"conductor", l.conductor}, {"sl_order", sl},
         {"proj_order", l.group.proj_order()}, {"histogram", h},          {"action", a.name()}};
  if (a.fixed_point) j["fixed_point"] = a.fixed_point->to_string();
  if (!a.distinguished.empty()) j["distinguished_orbit"] = points_json(a.distinguished);
  if (!a.warning.empty()) j["warning"] = a.warning;
  if (auto iso = is_A4_or_S4(l.group)) j["isomorphic_to"] = *iso;
  std::ostringstream out;
  out << "group: " << l.label << "\nconductor: " << l.conductor << "\nSL order: " << sl
      << "\nprojective order: " << l.group.proj_order() << "\nelement orders:";
  for (auto [o, c] : hist) out << " " << o << ":" << c;
  out << "\naction: " << a.name();
  if (a.fixed_point) out << " (fixed point " << a.fixed_point->to_string() << ")";
  if (!a.warning.empty()) out << " (" << a.warning << ")";
  out << "\n";
  emit(j, out.str(), format);
  return kOk;
}

int cmd_orbits(const std::string& arg, long bound, const std::string& format) {
  const Loaded l = load(arg);
  const SmallOrbitReport r = small_orbits(l.group, bound);
  emit(orbits_json(r), orbits_text(r), format);
  return kOk;
}

int cmd_genpos(const std::string& arg, const std::string& point, const std::string& format) {
  const Loaded l = load(arg);
  const ProjPoint p = parse_point(point, l.conductor);
  const Orbit o = orbit(l.group, p);
  if (o.size() > 8) throw InputError("orbit has " + std::to_string(o.size()) + " points; general position needs at most 8");
  const GenPosReport g = general_position(o.points);
  Json j{{"orbit", points_json(o.points)}, {"ok", g.ok}, {"report", g.describe()}};
  if (!g.ok) {
    Json w = Json::array();
    for (int i : g.witness) w.push_back(o.points[i].to_string());
    j["witness"] = w;
  }
  std::ostringstream out;
  out << "orbit of size " << o.size() << ":";
  for (const auto& q : o.points) out << " " << q.to_string();
  out << "\n" << g.describe() << "\n";
  emit(j, out.str(), format);
  return kOk;
}

int cmd_links(const std::string& arg, const std::string& format) {
  const Loaded l = load(arg);
  const Verdict v = rigidity_verdict(l.group);
  Json j = Json::array();
  std::ostringstream out;
  for (const auto& r : v.reasons) {
    j.push_back(Json{{"blowup", r.name}, {"evidence", r.evidence}});
    out << r.name << "\n";
    if (r.evidence.contains("failure"))
      out << "  excluded: not in general position (" << r.evidence["failure"].get<std::string>() << ")\n";
    if (r.evidence.contains("links")) {
      if (r.evidence["links"].empty()) out << "  no links\n";
      for (const auto& s : r.evidence["links"]) out << "  " << s.get<std::string>() << "\n";
    }
  }
  if (v.reasons.empty()) out << "no orbits of size <= 8\n";
  emit(j, out.str(), format);
  return kOk;
}

int cmd_verdict(const std::string& arg, const std::string& format) {
  const Loaded l = load(arg);
  const Verdict v = rigidity_verdict(l.group);
  Json j = v.to_json();
  j["group"] = l.label;
  emit(j, v.to_text(), format);
  return kOk;
}

int cmd_verify(const std::string& check, const std::string& format) {
  const PaperReport r = verify_paper(check);
  emit(r.to_json(), r.to_text(), format);
  return r.all_pass() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groups acting on P2: small orbits, general position, links and rigidity"};
  app.require_subcommand(1);
  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* catalog = app.add_subcommand("catalog", "list the catalog groups");
  add_format(catalog);

  std::string group;
  auto* info = app.add_subcommand("info", "orders, element orders and action type");
  info->add_option("group", group, "catalog id or group file")->required();
  add_format(info);

  long bound = 8;
  auto* orbits = app.add_subcommand("orbits", "orbits up to a size bound");
  orbits->add_option("group", group, "catalog id or group file")->required();
  orbits->add_option("--bound", bound, "largest orbit size")->check(CLI::Range(1L, 1000L));
  add_format(orbits);

  std::string point;
  auto* genpos = app.add_subcommand("genpos", "general position of the orbit of a point");
  genpos->add_option("group", group, "catalog id or group file")->required();
  genpos->add_option("--point", point, "coordinates \"x,y,z\" as expressions in z")->required();
  add_format(genpos);

  auto* links = app.add_subcommand("links", "links from blowups of small orbits");
  links->add_option("group", group, "catalog id or group file")->required();
  add_format(links);

  auto* verdict = app.add_subcommand("verdict", "rigidity verdict with evidence");
  verdict->add_option("group", group, "catalog id or group file")->required();
  add_format(verdict);

  std::string check;
  auto* verify = app.add_subcommand("verify-paper", "run the named checks");
  verify->add_option("--check", check, "run only this check");
  add_format(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*catalog) return cmd_catalog(format);
    if (*info) return cmd_info(group, format);
    if (*orbits) return cmd_orbits(group, bound, format);
    if (*genpos) return cmd_genpos(group, point, format);
    if (*links) return cmd_links(group, format);
    if (*verdict) return cmd_verdict(group, format);
    if (*verify) return cmd_verify(check, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
