#include "cli/commands.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "yoneda/exactint/smith.hpp"
#include "yoneda/resolution.hpp"

namespace yoneda::cli {

using nlohmann::ordered_json;

namespace {

ordered_json integer_json(const Integer& x) {
  if (x.fits_int64()) return x.small_value();
  return x.to_string();
}

ordered_json matrix_json(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_json(const IntVector& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw CliError(usage_error, std::string("missing --") + flag);
  return value;
}

std::size_t degree(const Flags& f) { return f.n.value_or(1); }

ordered_json flags_json(const Flags& f) {
  ordered_json j = ordered_json::object();
  if (f.n) j["n"] = *f.n;
  if (f.max_deg) j["max-deg"] = *f.max_deg;
  for (const auto& [key, value] : std::vector<std::pair<const char*, std::string>>{
           {"B", f.B}, {"A", f.A}, {"M", f.M}, {"G", f.G}, {"F", f.F}, {"f", f.f}, {"matrix", f.matrix}, {"poset", f.poset}})
    if (!value.empty()) j[key] = value;
  if (!f.seq.empty()) j["seq"] = f.seq;
  if (f.c) j["c"] = *f.c;
  if (!f.family.empty()) j["family"] = f.family;
  j["variance"] = f.variance;
  return j;
}

using Details = ordered_json;

std::string cmd_snf(const InputDocument& doc, const Flags& f, Details& out) {
  const IntMatrix& a = !f.matrix.empty() ? doc.matrix(f.matrix) : doc.hom(need(f.f, "matrix")).matrix();
  SmithDecomposition s = snf(a);
  std::ostringstream r;
  r << "diag(";
  const auto diag = s.diagonal();
  for (std::size_t k = 0; k < diag.size(); ++k) r << (k ? ", " : "") << diag[k];
  r << ")";
  out["rank"] = s.rank;
  out["U"] = matrix_json(s.U);
  out["V"] = matrix_json(s.V);
  out["D"] = matrix_json(s.D);
  return r.str();
}

std::string cmd_group(const InputDocument& doc, const Flags& f, Details& out) {
  FpAbGroup g = doc.group(need(f.A, "A"));
  out["generators"] = g.gens();
  out["relations"] = g.relations().cols();
  auto order = g.order();
  out["order"] = order ? integer_json(*order) : ordered_json("infinite");
  return g.to_string();
}

std::string cmd_hom(const InputDocument& doc, const Flags& f, Details& out) {
  if (!f.f.empty()) {
    const FpAbHom& h = doc.hom(f.f);
    Kernel k = kernel(h);
    out["kernel"] = k.group.to_string();
    out["image"] = cokernel(k.inclusion).group.to_string();
    out["cokernel"] = cokernel(h).group.to_string();
    out["mono"] = is_mono(h);
    out["epi"] = is_epi(h);
    return is_iso(h) ? "iso" : is_mono(h) ? "mono" : is_epi(h) ? "epi" : "neither mono nor epi";
  }
  HomGroup hg = hom_group(doc.group(need(f.B, "B")), doc.group(need(f.A, "A")));
  ordered_json basis = ordered_json::array();
  for (const auto& b : hg.basis()) basis.push_back(matrix_json(b.matrix()));
  out["basis"] = std::move(basis);
  return hg.group().to_string();
}

std::string cmd_ext(const InputDocument& doc, const Flags& f, Details& out) {
  FpAbGroup b = doc.group(need(f.B, "B")), a = doc.group(need(f.A, "A"));
  IntegerContext ctx;
  if (f.max_deg) {
    ordered_json all = ordered_json::array();
    for (std::size_t k = 0; k <= *f.max_deg; ++k) all.push_back(ext_n(ctx, b, a, k).to_string());
    out["degrees"] = std::move(all);
  }
  return ext_n(ctx, b, a, degree(f)).to_string();
}

std::string cmd_baer(const InputDocument& doc, const Flags& f, Details& out) {
  if (f.seq.empty()) {
    Ext1Group g = ext1_group(doc.group(need(f.B, "B")), doc.group(need(f.A, "A")));
    ordered_json gens = ordered_json::array();
    for (std::size_t k = 0; k < g.group().gens(); ++k) {
      IntVector e(g.group().gens());
      e[k] = Integer(1);
      ShortExactSeq s = g.realize(ExtClass(g, Element(g.group(), e)));
      gens.push_back(s.E().to_string());
    }
    out["generator middles"] = std::move(gens);
    return g.group().to_string();
  }
  if (f.seq.size() != 2) throw CliError(usage_error, "baer takes two --seq operands");
  const ShortExactSeq& e1 = doc.sequence(f.seq[0]);
  const ShortExactSeq& e2 = doc.sequence(f.seq[1]);
  Ext1Group g = ext1_group(e1.B(), e1.A());
  ShortExactSeq sum = baer_sum(e1, e2);
  ExtClass c1 = g.class_of(e1), c2 = g.class_of(e2), cs = g.class_of(sum);
  if (!(cs == c1 + c2)) throw InternalInvariant("Baer sum class differs from the sum of classes");
  out["Ext1"] = g.group().to_string();
  out["class 1"] = vector_json(c1.coords().coords());
  out["class 2"] = vector_json(c2.coords().coords());
  out["sum class"] = vector_json(cs.coords().coords());
  out["sum middle"] = sum.E().to_string();
  out["sum split"] = cs.is_zero();
  out["i"] = matrix_json(sum.i().matrix());
  out["p"] = matrix_json(sum.p().matrix());
  return cs.is_zero() ? "split" : "nonsplit";
}

std::string cmd_six_term(const InputDocument& doc, const Flags& f, Details& out) {
  if (f.seq.size() != 1) throw CliError(usage_error, "six-term takes one --seq operand");
  Variance v;
  if (f.variance == "co")
    v = Variance::covariant;
  else if (f.variance == "contra")
    v = Variance::contravariant;
  else
    throw CliError(usage_error, "--variance must be co or contra");
  SixTermSequence s = six_term(doc.sequence(f.seq[0]), doc.group(need(f.M, "M")), v);
  ordered_json groups = ordered_json::array();
  for (const auto& g : s.groups) groups.push_back(g.to_string());
  out["groups"] = std::move(groups);
  out["left mono"] = s.left_mono;
  out["exact interior"] = ordered_json(std::vector<bool>(s.exact_interior.begin(), s.exact_interior.end()));
  out["right epi"] = s.right_epi;
  return s.exact() ? "exact" : "not exact";
}

GModule module_operand(const InputDocument& doc, const Flags& f) {
  if (!f.M.empty()) {
    GModule m = doc.module(f.M);
    if (!f.G.empty() && !(m.group().table() == doc.finite_group(f.G).table()))
      throw CliError(validation_error, "module '" + f.M + "' is not over group '" + f.G + "'");
    return m;
  }
  return trivial_module(doc.finite_group(need(f.G, "G")), FpAbGroup::free(1));
}

std::string cmd_group_cohomology(const InputDocument& doc, const Flags& f, Details& out) {
  GModule m = module_operand(doc, f);
  const std::size_t top = std::max(degree(f), f.max_deg.value_or(0));
  if (top > max_bar_degree)
    throw DomainError("bar resolution degree is limited to " + std::to_string(max_bar_degree));
  if (f.max_deg) {
    ordered_json all = ordered_json::array();
    for (std::size_t k = 0; k <= *f.max_deg; ++k) all.push_back(group_cohomology(m.group(), m, k).to_string());
    out["degrees"] = std::move(all);
  }
  return group_cohomology(m.group(), m, degree(f)).to_string();
}

std::string cmd_fixed_points(const InputDocument& doc, const Flags& f, Details& out) {
  GModule m = module_operand(doc, f);
  Kernel k = fixed_points(m);
  out["inclusion"] = matrix_json(k.inclusion.matrix());
  out["H1 (crossed homomorphisms)"] = h1_crossed(m).to_string();
  return k.group.to_string();
}

std::string cmd_sheaf_ext(const InputDocument& doc, const Flags& f, Details& out) {
  const AbPresheaf& b = doc.presheaf(need(f.B, "B"));
  const AbPresheaf& a = doc.presheaf(need(f.A, "A"));
  SheafExtResult r = sheaf_ext(b, a, degree(f));
  ordered_json stalks = ordered_json::array();
  for (const auto& s : r.value.stalks()) stalks.push_back(s.to_string());
  out["stalks"] = std::move(stalks);
  ordered_json res = ordered_json::array();
  for (const auto& [d, c] : r.value.site().covers())
    res.push_back({{"from", c}, {"to", d}, {"matrix", matrix_json(r.value.res(c, d).matrix())}});
  out["restrictions"] = std::move(res);
  out["global sections"] = global_sections(r.value).to_string();
  return format_presheaf(r.value);
}

std::string cmd_external_ext(const InputDocument& doc, const Flags& f, Details&) {
  return external_ext(doc.presheaf(need(f.B, "B")), doc.presheaf(need(f.A, "A")), degree(f)).to_string();
}

std::string cmd_global_sections(const InputDocument& doc, const Flags& f, Details&) {
  return global_sections(doc.presheaf(need(f.F, "F"))).to_string();
}

std::string cmd_witness_search(const InputDocument& doc, const Flags& f, Details& out) {
  FinitePoset p = doc.poset(need(f.poset, "poset"));
  if (!f.c) throw CliError(usage_error, "missing --c");
  if (*f.c >= p.size()) throw DomainError("element out of range");
  std::vector<FpAbGroup> family;
  for (const auto& s : f.family.empty() ? std::vector<std::string>{"0", "Z/2", "Z"} : f.family)
    family.push_back(doc.group(s));
  WitnessSearch w = search_projectivity_witness(p, *f.c, family);
  out["examined"] = w.examined;
  if (!w.witness) return "none";
  const PresheafHom& s = w.witness->sigma;
  out["source"] = format_presheaf(s.src());
  out["target"] = format_presheaf(s.tgt());
  ordered_json comps = ordered_json::array();
  for (const auto& h : s.components()) comps.push_back(matrix_json(h.matrix()));
  out["components"] = std::move(comps);
  return "witness at element " + std::to_string(w.witness->stalk);
}

using Handler = std::function<std::string(const InputDocument&, const Flags&, Details&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"snf", cmd_snf},
      {"group", cmd_group},
      {"hom", cmd_hom},
      {"ext", cmd_ext},
      {"baer", cmd_baer},
      {"six-term", cmd_six_term},
      {"group-cohomology", cmd_group_cohomology},
      {"fixed-points", cmd_fixed_points},
      {"sheaf-ext", cmd_sheaf_ext},
      {"external-ext", cmd_external_ext},
      {"global-sections", cmd_global_sections},
      {"witness-search", cmd_witness_search},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : handlers()) out.push_back(k);
    return out;
  }();
  return names;
}

ResultDocument run(const std::string& command, const InputDocument& doc, const Flags& flags) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw CliError(usage_error, "unknown command '" + command + "'");
  Details details = ordered_json::object();
  std::string result = it->second(doc, flags, details);
  ResultDocument r;
  r.body["command"] = command;
  r.body["flags"] = flags_json(flags);
  r.body["result"] = result;
  for (auto& [k, v] : details.items()) r.body[k] = v;
  r.body["status"] = 0;
  return r;
}

ResultDocument failure(const std::string& command, const Flags& flags, ExitCode code, const std::string& message) {
  ResultDocument r;
  r.body["command"] = command;
  r.body["flags"] = flags_json(flags);
  r.body["error"] = message;
  r.body["status"] = static_cast<int>(code);
  return r;
}

std::string render(const ResultDocument& r, Format format) {
  if (format == Format::machine) return r.body.dump() + "\n";
  std::ostringstream os;
  if (r.body.contains("error")) {
    os << "error: " << r.body["error"].get<std::string>() << "\n";
    return os.str();
  }
  os << r.body["result"].get<std::string>() << "\n";
  for (const auto& [k, v] : r.body.items()) {
    if (k == "command" || k == "flags" || k == "result" || k == "status") continue;
    os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return os.str();
}

std::string format_presheaf(const AbPresheaf& f) {
  const FinitePoset& p = f.site();
  bool chain = true;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) chain = chain && p.leq(k, k + 1);
  std::ostringstream os;
  if (chain) {
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? " <- " : "") << f.stalk(k).to_string();
    return os.str();
  }
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << k << ": " << f.stalk(k).to_string();
  return os.str();
}

}  // namespace yoneda::cli
